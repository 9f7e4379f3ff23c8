#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ecgw/chain.hpp"
#include "ecgw/extcat.hpp"

// JSON documents. A Document keeps the file's own names; resolve() turns it
// into validated library values and the put_* functions go the other way.
namespace ecgw::io {

using json = nlohmann::json;
using Assign = std::map<Elem, Elem>;

struct RawMap {
  std::string dom, cod;
  Assign assign;
  bool operator==(const RawMap&) const = default;
};

struct RawComplex {
  int lo = 0, hi = -1;
  std::map<int, std::string> degrees, images, diff;
  bool operator==(const RawComplex&) const = default;
};

struct RawChainMap {
  std::string kind, src, dst;
  std::map<int, std::string> f, fbar;
  bool operator==(const RawChainMap&) const = default;
};

struct Document {
  std::string version = "1";
  std::map<std::string, std::vector<Elem>> sets;
  // actions[set][monoid element] = token -> token; absent rows act trivially
  std::map<std::string, std::map<std::size_t, Assign>> actions;
  std::map<std::string, RawMap> maps;
  std::map<std::string, RawComplex> complexes;
  std::map<std::string, RawChainMap> chain_maps;
  std::map<std::string, std::vector<std::string>> staircases;  // top row of m-maps, in order
  bool operator==(const Document&) const = default;
};

inline Error parse_error(const std::string& where, const std::string& what) {
  return Error(ErrorKind::ParseError, where + ": " + what);
}

inline int degree_key(const std::string& where, const std::string& k) {
  std::size_t used = 0;
  int i = 0;
  try {
    i = std::stoi(k, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != k.size()) throw parse_error(where, "degree key '" + k + "' is not an integer");
  return i;
}

inline void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw parse_error(where, "expected an object");
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (const char* key : keys) known = known || k == key;
    if (!known) throw parse_error(where, "unknown key '" + k + "'");
  }
}

inline std::string get_string(const json& j, const std::string& where, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) throw parse_error(where, std::string("missing string '") + key + "'");
  return j[key].get<std::string>();
}

inline std::map<int, std::string> degree_names(const json& j, const std::string& where) {
  std::map<int, std::string> out;
  if (!j.is_object()) throw parse_error(where, "expected an object keyed by degree");
  for (const auto& [k, v] : j.items()) {
    if (!v.is_string()) throw parse_error(where, "degree " + k + " must name an entity");
    out[degree_key(where, k)] = v.get<std::string>();
  }
  return out;
}

inline Assign assignment(const json& j, const std::string& where) {
  Assign a;
  if (!j.is_object()) throw parse_error(where, "expected an object token -> token");
  for (const auto& [k, v] : j.items()) {
    if (!v.is_string()) throw parse_error(where, "image of '" + k + "' must be a token");
    a[k] = v.get<std::string>();
  }
  return a;
}

inline Document from_json(const json& j) {
  only_keys(j, "document", {"version", "sets", "actions", "maps", "complexes", "chain_maps", "staircases"});
  Document doc;
  doc.version = j.contains("version") ? get_string(j, "document", "version") : "1";
  if (doc.version != "1") throw parse_error("document", "unsupported version '" + doc.version + "'");
  if (j.contains("sets")) {
    if (!j["sets"].is_object()) throw parse_error("sets", "expected an object");
    for (const auto& [name, v] : j["sets"].items()) {
      std::string where = "set '" + name + "'";
      if (!v.is_array()) throw parse_error(where, "expected an array of tokens");
      std::vector<Elem> t;
      for (const auto& x : v) {
        if (!x.is_string()) throw parse_error(where, "tokens must be strings");
        t.push_back(x.get<std::string>());
      }
      std::sort(t.begin(), t.end());
      doc.sets[name] = std::move(t);
    }
  }
  if (j.contains("actions")) {
    if (!j["actions"].is_object()) throw parse_error("actions", "expected an object");
    for (const auto& [name, rows] : j["actions"].items()) {
      std::string where = "actions of '" + name + "'";
      if (!rows.is_object()) throw parse_error(where, "expected an object keyed by monoid element");
      for (const auto& [m, row] : rows.items()) {
        int k = degree_key(where, m);
        if (k < 0) throw parse_error(where, "negative monoid element");
        doc.actions[name][static_cast<std::size_t>(k)] = assignment(row, where);
      }
    }
  }
  if (j.contains("maps")) {
    if (!j["maps"].is_object()) throw parse_error("maps", "expected an object");
    for (const auto& [name, v] : j["maps"].items()) {
      std::string where = "map '" + name + "'";
      only_keys(v, where, {"dom", "cod", "assign"});
      doc.maps[name] = {get_string(v, where, "dom"), get_string(v, where, "cod"),
                        v.contains("assign") ? assignment(v["assign"], where) : Assign{}};
    }
  }
  if (j.contains("complexes")) {
    if (!j["complexes"].is_object()) throw parse_error("complexes", "expected an object");
    for (const auto& [name, v] : j["complexes"].items()) {
      std::string where = "complex '" + name + "'";
      only_keys(v, where, {"window", "degrees", "images", "diff"});
      const auto& w = v.contains("window") ? v["window"] : json();
      if (!w.is_array() || w.size() != 2 || !w[0].is_number_integer() || !w[1].is_number_integer())
        throw parse_error(where, "window must be [lo, hi]");
      RawComplex c{w[0].get<int>(), w[1].get<int>(), {}, {}, {}};
      if (v.contains("degrees")) c.degrees = degree_names(v["degrees"], where);
      if (v.contains("images")) c.images = degree_names(v["images"], where);
      if (v.contains("diff")) c.diff = degree_names(v["diff"], where);
      doc.complexes[name] = std::move(c);
    }
  }
  if (j.contains("chain_maps")) {
    if (!j["chain_maps"].is_object()) throw parse_error("chain_maps", "expected an object");
    for (const auto& [name, v] : j["chain_maps"].items()) {
      std::string where = "chain map '" + name + "'";
      only_keys(v, where, {"kind", "src", "dst", "f", "fbar"});
      RawChainMap m{get_string(v, where, "kind"), get_string(v, where, "src"), get_string(v, where, "dst"), {}, {}};
      if (m.kind != "m" && m.kind != "e") throw parse_error(where, "kind must be \"m\" or \"e\"");
      if (v.contains("f")) m.f = degree_names(v["f"], where);
      if (v.contains("fbar")) m.fbar = degree_names(v["fbar"], where);
      doc.chain_maps[name] = std::move(m);
    }
  }
  if (j.contains("staircases")) {
    if (!j["staircases"].is_object()) throw parse_error("staircases", "expected an object");
    for (const auto& [name, v] : j["staircases"].items()) {
      std::string where = "staircase '" + name + "'";
      only_keys(v, where, {"row"});
      if (!v.contains("row") || !v["row"].is_array()) throw parse_error(where, "row must be an array of map names");
      for (const auto& x : v["row"]) {
        if (!x.is_string()) throw parse_error(where, "row must be an array of map names");
        doc.staircases[name].push_back(x.get<std::string>());
      }
      doc.staircases.try_emplace(name);
    }
  }
  return doc;
}

inline json to_json(const Document& doc) {
  json j = json::object();
  j["version"] = doc.version;
  auto by_degree = [](const std::map<int, std::string>& m) {
    json o = json::object();
    for (const auto& [i, n] : m) o[std::to_string(i)] = n;
    return o;
  };
  j["sets"] = json::object();
  for (const auto& [name, t] : doc.sets) j["sets"][name] = t;
  if (!doc.actions.empty()) {
    j["actions"] = json::object();
    for (const auto& [name, rows] : doc.actions)
      for (const auto& [m, row] : rows) j["actions"][name][std::to_string(m)] = row;
  }
  j["maps"] = json::object();
  for (const auto& [name, m] : doc.maps) j["maps"][name] = {{"dom", m.dom}, {"cod", m.cod}, {"assign", m.assign}};
  j["complexes"] = json::object();
  for (const auto& [name, c] : doc.complexes)
    j["complexes"][name] = {{"window", {c.lo, c.hi}},
                            {"degrees", by_degree(c.degrees)},
                            {"images", by_degree(c.images)},
                            {"diff", by_degree(c.diff)}};
  j["chain_maps"] = json::object();
  for (const auto& [name, m] : doc.chain_maps)
    j["chain_maps"][name] = {
        {"kind", m.kind}, {"src", m.src}, {"dst", m.dst}, {"f", by_degree(m.f)}, {"fbar", by_degree(m.fbar)}};
  if (!doc.staircases.empty()) {
    j["staircases"] = json::object();
    for (const auto& [name, row] : doc.staircases) j["staircases"][name] = {{"row", row}};
  }
  return j;
}

inline Document parse(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  return from_json(j);
}

inline std::string dump(const Document& doc) { return to_json(doc).dump(2) + "\n"; }

inline Document load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

inline void save(const Document& doc, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write '" + path + "'");
  out << dump(doc);
}

// Monoid tables for the M-set instance: {"unit": 0, "mul": [[...], ...]}.
inline Monoid load_monoid(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(in);
    only_keys(j, "monoid", {"unit", "mul"});
    Monoid m{j.value("unit", std::size_t{0}), j.at("mul").get<std::vector<std::vector<std::size_t>>>()};
    m.validate();
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("monoid: ") + e.what());
  }
}

// ---- instance-specific object construction ----

inline FinSetObj make_object(const FinSetInstance&, const FinSetObj& c, const std::map<std::size_t, Assign>& rows,
                             const std::string& where) {
  if (!rows.empty()) throw Error(ErrorKind::ValidationError, where + ": actions given for a plain set");
  return c;
}

inline MSetObj make_object(const MSetInstance& ins, const FinSetObj& c, const std::map<std::size_t, Assign>& rows,
                           const std::string& where) {
  std::vector<std::vector<std::size_t>> act(ins.monoid()->size());
  for (std::size_t m = 0; m < act.size(); ++m) {
    auto it = rows.find(m);
    act[m] = it == rows.end() ? ecgw::identity(c).indices() : SetFun::from_assignment(c, c, it->second).indices();
  }
  for (const auto& [m, row] : rows)
    if (m >= act.size()) throw Error(ErrorKind::ValidationError, where + ": no monoid element " + std::to_string(m));
  return ins.make(c, std::move(act));
}

inline std::map<std::size_t, Assign> action_rows(const FinSetInstance&, const FinSetObj&) { return {}; }

inline std::map<std::size_t, Assign> action_rows(const MSetInstance&, const MSetObj& x) {
  std::map<std::size_t, Assign> rows;
  bool trivial = true;
  for (const auto& row : x.act)
    for (std::size_t k = 0; k < row.size(); ++k) trivial = trivial && row[k] == k;
  if (trivial) return rows;
  for (std::size_t m = 0; m < x.act.size(); ++m)
    for (std::size_t k = 0; k < x.carrier.size(); ++k) rows[m][x.carrier[k]] = x.carrier[x.act[m][k]];
  return rows;
}

// ---- document -> library values ----

template <class I>
struct Resolved {
  std::map<std::string, typename I::Obj> sets;
  std::map<std::string, typename I::Mor> maps;
  std::map<std::string, ChainComplex<I>> complexes;
  std::map<std::string, ChainMap<I>> chain_maps;
  std::map<std::string, std::vector<typename I::Mor>> staircases;
};

inline Error located(const std::string& where, const Error& e) {
  return Error(ErrorKind::ValidationError, where + ": " + e.what(), e.index());
}

template <class V>
const V& lookup(const std::map<std::string, V>& m, const std::string& name, const std::string& where,
                const char* what) {
  auto it = m.find(name);
  if (it == m.end()) throw Error(ErrorKind::ValidationError, where + ": unknown " + what + " '" + name + "'");
  return it->second;
}

template <class I>
Resolved<I> resolve(const I& ins, const Document& doc) {
  Resolved<I> r;
  for (const auto& [name, a] : doc.actions)
    if (!doc.sets.count(name)) throw Error(ErrorKind::ValidationError, "actions for unknown set '" + name + "'");
  for (const auto& [name, tokens] : doc.sets) {
    std::string where = "set '" + name + "'";
    try {
      auto it = doc.actions.find(name);
      r.sets.emplace(name, make_object(ins, FinSetObj(tokens), it == doc.actions.end() ? std::map<std::size_t, Assign>{}
                                                                                      : it->second,
                                       where));
    } catch (const Error& e) {
      throw located(where, e);
    }
  }
  for (const auto& [name, m] : doc.maps) {
    std::string where = "map '" + name + "'";
    const auto& dom = lookup(r.sets, m.dom, where, "set");
    const auto& cod = lookup(r.sets, m.cod, where, "set");
    try {
      r.maps.emplace(name, ins.lift(dom, cod, SetFun::from_assignment(ins.carrier(dom), ins.carrier(cod), m.assign)));
    } catch (const Error& e) {
      throw located(where, e);
    }
  }
  for (const auto& [name, c] : doc.complexes) {
    std::string where = "complex '" + name + "'";
    if (c.hi < c.lo - 1) throw Error(ErrorKind::ValidationError, where + ": window bounds reversed");
    for (const auto* keys : {&c.degrees, &c.images, &c.diff})
      for (const auto& [i, n] : *keys)
        if (i < c.lo || i > c.hi) throw Error(ErrorKind::ValidationError, where + ": degree outside the window", i);
    ChainComplex<I> x{c.lo, c.hi, {}, {}, {}};
    for (int i = c.lo; i <= c.hi; ++i) {
      auto find = [&](const std::map<int, std::string>& m) -> const std::string* {
        auto it = m.find(i);
        return it == m.end() ? nullptr : &it->second;
      };
      auto xi = find(c.degrees) ? lookup(r.sets, *find(c.degrees), where, "set") : ins.initial();
      auto bi = find(c.images) ? lookup(r.sets, *find(c.images), where, "set") : ins.initial();
      auto below = i == c.lo ? ins.initial() : x.deg.back();
      try {
        if (!is_subset(ins.carrier(bi), ins.carrier(xi)))
          throw Error(ErrorKind::MalformedComplex, "image part is not a subset of the degree", i);
        x.deg.push_back(xi);
        x.img.push_back(ins.lift(bi, xi, inclusion(ins.carrier(bi), ins.carrier(xi))));
        if (auto d = find(c.diff)) {
          const auto& di = lookup(r.maps, *d, where, "map");
          if (!(ins.dom(di) == bi) || !(ins.cod(di) == below))
            throw Error(ErrorKind::MalformedComplex, "differential '" + *d + "' has the wrong source or target", i);
          x.diff.push_back(di);
        } else {
          if (!ins.carrier(bi).empty()) throw Error(ErrorKind::MalformedComplex, "missing differential", i);
          x.diff.push_back(initial_map(ins, below));
        }
      } catch (const Error& e) {
        throw located(where, e);
      }
    }
    try {
      r.complexes.emplace(name, validate(ins, x));
    } catch (const Error& e) {
      throw located(where, e);
    }
  }
  for (const auto& [name, m] : doc.chain_maps) {
    std::string where = "chain map '" + name + "'";
    const auto& src = lookup(r.complexes, m.src, where, "complex");
    const auto& dst = lookup(r.complexes, m.dst, where, "complex");
    if (src.lo != dst.lo || src.hi != dst.hi)
      throw Error(ErrorKind::ValidationError, where + ": source and target windows differ");
    ChainMap<I> out{m.kind == "m" ? MapKind::M : MapKind::E, src, dst, {}, {}};
    auto component = [&](const std::map<int, std::string>& names, int i, const typename I::Obj& a,
                         const typename I::Obj& b) {
      auto it = names.find(i);
      if (it == names.end()) {
        if (!ins.carrier(a).empty()) throw Error(ErrorKind::ValidationError, where + ": missing component", i);
        return initial_map(ins, b);
      }
      return lookup(r.maps, it->second, where, "map");
    };
    for (const auto* keys : {&m.f, &m.fbar})
      for (const auto& [i, n] : *keys)
        if (!src.in_window(i)) throw Error(ErrorKind::ValidationError, where + ": degree outside the window", i);
    for (int i = src.lo; i <= src.hi; ++i) {
      out.f.push_back(component(m.f, i, src.X(i), dst.X(i)));
      out.fbar.push_back(component(m.fbar, i, ins.dom(src.inc(i)), ins.dom(dst.inc(i))));
    }
    try {
      r.chain_maps.emplace(name, validate_map(ins, out));
    } catch (const Error& e) {
      throw located(where, e);
    }
  }
  for (const auto& [name, row] : doc.staircases) {
    std::string where = "staircase '" + name + "'";
    auto& out = r.staircases[name];
    for (const auto& n : row) out.push_back(lookup(r.maps, n, where, "map"));
  }
  return r;
}

// ---- library values -> document ----

inline void claim(std::map<std::string, std::vector<Elem>>& sets, const std::string& name, std::vector<Elem> t) {
  auto [it, fresh] = sets.emplace(name, t);
  if (!fresh && it->second != t) throw Error(ErrorKind::ValidationError, "set '" + name + "' already defined");
}

template <class I>
std::string put_set(const I& ins, Document& doc, const std::string& name, const typename I::Obj& x) {
  claim(doc.sets, name, ins.carrier(x).elems());
  auto rows = action_rows(ins, x);
  if (!rows.empty()) doc.actions[name] = rows;
  return name;
}

inline void put_raw_map(Document& doc, const std::string& name, RawMap m) {
  auto [it, fresh] = doc.maps.emplace(name, m);
  if (!fresh && !(it->second == m)) throw Error(ErrorKind::ValidationError, "map '" + name + "' already defined");
}

template <class I>
std::string put_map(const I& ins, Document& doc, const std::string& name, const typename I::Mor& f,
                    const std::string& dom, const std::string& cod) {
  put_set(ins, doc, dom, ins.dom(f));
  put_set(ins, doc, cod, ins.cod(f));
  put_raw_map(doc, name, {dom, cod, ins.fun(f).assignment()});
  return name;
}

// Image parts are written as subsets of their degree, so an image inclusion
// that is not a token inclusion is renamed along itself.
template <class I>
std::string put_complex(const I& ins, Document& doc, const std::string& name, const ChainComplex<I>& x) {
  RawComplex c{x.lo, x.hi, {}, {}, {}};
  for (int i = x.lo; i <= x.hi; ++i) {
    auto si = std::to_string(i);
    const auto& inc = ins.fun(x.inc(i));
    if (!ins.carrier(x.X(i)).empty()) c.degrees[i] = put_set(ins, doc, name + ".X" + si, x.X(i));
    if (inc.dom().empty()) continue;
    auto bar = inc.image();
    claim(doc.sets, name + ".Xbar" + si, bar.elems());
    auto rows = action_rows(ins, ins.dom(x.inc(i)));
    if (!rows.empty()) {
      auto& out = doc.actions[name + ".Xbar" + si];
      for (const auto& [m, row] : rows)
        for (const auto& [a, b] : row) out[m][inc(a)] = inc(b);
    }
    c.images[i] = name + ".Xbar" + si;
    Assign d;
    const auto& di = ins.fun(x.d(i));
    for (std::size_t q = 0; q < inc.dom().size(); ++q) d[inc.cod()[inc.at(q)]] = di.cod()[di.at(q)];
    auto below = std::to_string(i - 1);
    put_raw_map(doc, name + ".d" + si, {c.images[i], name + ".X" + below, d});
    c.diff[i] = name + ".d" + si;
  }
  auto [it, fresh] = doc.complexes.emplace(name, c);
  if (!fresh && !(it->second == c)) throw Error(ErrorKind::ValidationError, "complex '" + name + "' already defined");
  return name;
}

template <class I>
std::string put_chain_map(const I& ins, Document& doc, const std::string& name, const ChainMap<I>& m,
                          const std::string& src, const std::string& dst) {
  put_complex(ins, doc, src, m.src);
  put_complex(ins, doc, dst, m.dst);
  RawChainMap out{kind_tag(m.kind), src, dst, {}, {}};
  for (int i = m.lo(); i <= m.hi(); ++i) {
    auto si = std::to_string(i);
    if (!ins.carrier(m.src.X(i)).empty()) {
      out.f[i] = name + ".f" + si;
      put_raw_map(doc, out.f[i], {src + ".X" + si, dst + ".X" + si, ins.fun(m.at(i)).assignment()});
    }
    const auto &ia = ins.fun(m.src.inc(i)), &ib = ins.fun(m.dst.inc(i)), &fb = ins.fun(m.bar(i));
    if (ia.dom().empty()) continue;
    Assign a;
    for (std::size_t q = 0; q < ia.dom().size(); ++q) a[ia.cod()[ia.at(q)]] = ib.cod()[ib.at(fb.at(q))];
    out.fbar[i] = name + ".fbar" + si;
    put_raw_map(doc, out.fbar[i], {src + ".Xbar" + si, dst + ".Xbar" + si, a});
  }
  auto [it, fresh] = doc.chain_maps.emplace(name, out);
  if (!fresh && !(it->second == out)) throw Error(ErrorKind::ValidationError, "chain map '" + name + "' already defined");
  return name;
}

}  // namespace ecgw::io

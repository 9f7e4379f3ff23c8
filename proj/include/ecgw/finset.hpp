#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ecgw/error.hpp"
#include "ecgw/random.hpp"

namespace ecgw {

using Elem = std::string;

class FinSetObj {
 public:
  FinSetObj() = default;

  explicit FinSetObj(std::vector<Elem> elems) : elems_(std::move(elems)) {
    std::sort(elems_.begin(), elems_.end());
    auto dup = std::adjacent_find(elems_.begin(), elems_.end());
    if (dup != elems_.end()) throw Error(ErrorKind::ValidationError, "duplicate token '" + *dup + "'");
  }

  FinSetObj(std::initializer_list<Elem> elems) : FinSetObj(std::vector<Elem>(elems)) {}

  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  const Elem& operator[](std::size_t i) const { return elems_[i]; }
  const std::vector<Elem>& elems() const { return elems_; }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

  std::optional<std::size_t> index_of(const Elem& e) const {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), e);
    if (it == elems_.end() || *it != e) return std::nullopt;
    return static_cast<std::size_t>(it - elems_.begin());
  }
  bool contains(const Elem& e) const { return index_of(e).has_value(); }

  FinSetObj select(const std::vector<bool>& keep) const {
    FinSetObj out;
    for (std::size_t i = 0; i < elems_.size(); ++i)
      if (keep[i]) out.elems_.push_back(elems_[i]);
    return out;
  }

  bool operator==(const FinSetObj&) const = default;
  auto operator<=>(const FinSetObj&) const = default;

 private:
  std::vector<Elem> elems_;
};

inline bool is_subset(const FinSetObj& a, const FinSetObj& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline FinSetObj set_union(const FinSetObj& a, const FinSetObj& b) {
  std::vector<Elem> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return FinSetObj(std::move(out));
}

inline FinSetObj set_intersection(const FinSetObj& a, const FinSetObj& b) {
  std::vector<Elem> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return FinSetObj(std::move(out));
}

inline FinSetObj set_difference(const FinSetObj& a, const FinSetObj& b) {
  std::vector<Elem> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return FinSetObj(std::move(out));
}

inline std::string to_string(const FinSetObj& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + s[i];
  return out + "}";
}

// A total function between finite sets, stored as indices into the codomain.
class SetFun {
 public:
  SetFun() = default;

  SetFun(FinSetObj dom, FinSetObj cod, std::vector<std::size_t> map)
      : dom_(std::move(dom)), cod_(std::move(cod)), map_(std::move(map)) {
    if (map_.size() != dom_.size()) throw Error(ErrorKind::ValidationError, "assignment is not total");
    for (auto j : map_)
      if (j >= cod_.size()) throw Error(ErrorKind::ValidationError, "image outside codomain");
  }

  static SetFun from_assignment(FinSetObj dom, FinSetObj cod, const std::map<Elem, Elem>& assign) {
    std::vector<std::size_t> map;
    map.reserve(dom.size());
    for (const auto& x : dom) {
      auto it = assign.find(x);
      if (it == assign.end()) throw Error(ErrorKind::ValidationError, "no image for '" + x + "'");
      auto j = cod.index_of(it->second);
      if (!j) throw Error(ErrorKind::ValidationError, "image '" + it->second + "' not in codomain");
      map.push_back(*j);
    }
    if (assign.size() != dom.size()) throw Error(ErrorKind::ValidationError, "assignment has keys outside domain");
    return SetFun(std::move(dom), std::move(cod), std::move(map));
  }

  const FinSetObj& dom() const { return dom_; }
  const FinSetObj& cod() const { return cod_; }
  std::size_t at(std::size_t i) const { return map_[i]; }
  const std::vector<std::size_t>& indices() const { return map_; }

  const Elem& operator()(const Elem& x) const {
    auto i = dom_.index_of(x);
    if (!i) throw Error(ErrorKind::ValidationError, "'" + x + "' not in domain");
    return cod_[map_[*i]];
  }

  std::map<Elem, Elem> assignment() const {
    std::map<Elem, Elem> out;
    for (std::size_t i = 0; i < map_.size(); ++i) out.emplace(dom_[i], cod_[map_[i]]);
    return out;
  }

  std::vector<bool> image_mask() const {
    std::vector<bool> m(cod_.size(), false);
    for (auto j : map_) m[j] = true;
    return m;
  }

  FinSetObj image() const { return cod_.select(image_mask()); }

  bool injective() const {
    auto m = image_mask();
    return static_cast<std::size_t>(std::count(m.begin(), m.end(), true)) == map_.size();
  }
  bool surjective() const {
    auto m = image_mask();
    return std::all_of(m.begin(), m.end(), [](bool b) { return b; });
  }
  bool bijective() const { return injective() && surjective(); }

  // Preimage index under an injective map, if any.
  std::optional<std::size_t> preimage(std::size_t j) const {
    for (std::size_t i = 0; i < map_.size(); ++i)
      if (map_[i] == j) return i;
    return std::nullopt;
  }

  bool operator==(const SetFun&) const = default;

 private:
  FinSetObj dom_, cod_;
  std::vector<std::size_t> map_;
};

inline std::string to_string(const SetFun& f) {
  std::string out = to_string(f.dom()) + "->" + to_string(f.cod()) + "[";
  for (std::size_t i = 0; i < f.dom().size(); ++i)
    out += (i ? "," : "") + f.dom()[i] + ":" + f.cod()[f.at(i)];
  return out + "]";
}

inline SetFun identity(const FinSetObj& a) {
  std::vector<std::size_t> m(a.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = i;
  return SetFun(a, a, std::move(m));
}

inline SetFun compose(const SetFun& g, const SetFun& f) {
  if (f.cod() != g.dom())
    throw Error(ErrorKind::NotComposable, to_string(f.cod()) + " vs " + to_string(g.dom()));
  std::vector<std::size_t> m(f.dom().size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = g.at(f.at(i));
  return SetFun(f.dom(), g.cod(), std::move(m));
}

inline SetFun inclusion(const FinSetObj& sub, const FinSetObj& super) {
  std::vector<std::size_t> m;
  m.reserve(sub.size());
  for (const auto& x : sub) {
    auto j = super.index_of(x);
    if (!j) throw Error(ErrorKind::ValidationError, "'" + x + "' not in " + to_string(super));
    m.push_back(*j);
  }
  return SetFun(sub, super, std::move(m));
}

inline SetFun inclusion_of_mask(const FinSetObj& x, const std::vector<bool>& keep) {
  return inclusion(x.select(keep), x);
}

// The unique u with j.u = h, when im h lies inside im j and j is injective.
inline std::optional<SetFun> factor(const SetFun& h, const SetFun& j) {
  if (h.cod() != j.cod()) throw Error(ErrorKind::NotComposable, "factor: codomains differ");
  std::vector<std::size_t> inv(j.cod().size(), SIZE_MAX);
  for (std::size_t i = 0; i < j.dom().size(); ++i) inv[j.at(i)] = i;
  std::vector<std::size_t> m(h.dom().size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (inv[h.at(i)] == SIZE_MAX) return std::nullopt;
    m[i] = inv[h.at(i)];
  }
  return SetFun(h.dom(), j.dom(), std::move(m));
}

inline SetFun inverse(const SetFun& f) {
  if (!f.bijective()) throw Error(ErrorKind::ValidationError, "inverse of a non-bijection");
  std::vector<std::size_t> m(f.cod().size());
  for (std::size_t i = 0; i < f.dom().size(); ++i) m[f.at(i)] = i;
  return SetFun(f.cod(), f.dom(), std::move(m));
}

// Coproduct carriers are named positionally so that nested coproducts agree.
inline std::string positional_token(std::size_t k, std::size_t n) {
  std::size_t width = 1;
  for (std::size_t m = n > 0 ? n - 1 : 0; m >= 10; m /= 10) ++width;
  std::string digits = std::to_string(k);
  return "u" + std::string(width - digits.size(), '0') + digits;
}

struct SetCoproduct {
  FinSetObj obj;
  SetFun inl, inr;
};

inline SetCoproduct set_coproduct(const FinSetObj& a, const FinSetObj& b) {
  std::vector<Elem> tagged;
  for (const auto& x : a) tagged.push_back("L." + x);
  for (const auto& x : b) tagged.push_back("R." + x);
  std::sort(tagged.begin(), tagged.end());
  std::size_t n = tagged.size();
  std::vector<Elem> names(n);
  for (std::size_t k = 0; k < n; ++k) names[k] = positional_token(k, n);
  FinSetObj obj(names);
  std::vector<std::size_t> l(a.size()), r(b.size());
  for (std::size_t i = 0; i < a.size(); ++i) l[i] = i;
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = a.size() + i;
  return {obj, SetFun(a, obj, std::move(l)), SetFun(b, obj, std::move(r))};
}

inline SetFun set_copair(const SetCoproduct& c, const SetFun& u, const SetFun& v) {
  if (u.dom() != c.inl.dom() || v.dom() != c.inr.dom() || u.cod() != v.cod())
    throw Error(ErrorKind::NotComposable, "copair: legs do not match the coproduct");
  std::vector<std::size_t> m(c.obj.size());
  for (std::size_t i = 0; i < u.dom().size(); ++i) m[c.inl.at(i)] = u.at(i);
  for (std::size_t i = 0; i < v.dom().size(); ++i) m[c.inr.at(i)] = v.at(i);
  return SetFun(c.obj, u.cod(), std::move(m));
}

struct SetCone {
  FinSetObj obj;
  SetFun p1, p2;
};

inline std::string pair_token(const Elem& a, const Elem& b) { return "(" + a + "," + b + ")"; }

inline SetCone set_pullback(const SetFun& f, const SetFun& g) {
  if (f.cod() != g.cod()) throw Error(ErrorKind::NotComposable, "pullback: codomains differ");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < f.dom().size(); ++i)
    for (std::size_t j = 0; j < g.dom().size(); ++j)
      if (f.at(i) == g.at(j)) pairs.emplace_back(i, j);
  std::vector<Elem> names;
  for (auto [i, j] : pairs) names.push_back(pair_token(f.dom()[i], g.dom()[j]));
  FinSetObj obj(names);
  std::vector<std::size_t> m1(obj.size()), m2(obj.size());
  for (auto [i, j] : pairs) {
    auto k = *obj.index_of(pair_token(f.dom()[i], g.dom()[j]));
    m1[k] = i;
    m2[k] = j;
  }
  return {obj, SetFun(obj, f.dom(), std::move(m1)), SetFun(obj, g.dom(), std::move(m2))};
}

// Pullback test for a commuting square a->b->d, a->c->d of set maps.
inline bool set_square_commutes(const SetFun& top, const SetFun& left, const SetFun& right,
                                const SetFun& bottom) {
  return compose(right, top) == compose(bottom, left);
}

inline bool set_square_is_pullback(const SetFun& top, const SetFun& left, const SetFun& right,
                                   const SetFun& bottom) {
  if (!set_square_commutes(top, left, right, bottom)) return false;
  std::size_t matches = 0;
  for (std::size_t b = 0; b < right.dom().size(); ++b)
    for (std::size_t c = 0; c < bottom.dom().size(); ++c)
      if (right.at(b) == bottom.at(c)) ++matches;
  if (matches != top.dom().size()) return false;
  // distinct points of a must give distinct pairs
  std::vector<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t a = 0; a < top.dom().size(); ++a) seen.emplace_back(top.at(a), left.at(a));
  std::sort(seen.begin(), seen.end());
  return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

// The square is a pushout when the induced map from B + C modulo the
// relation top(a) ~ left(a) to D is a bijection.
inline bool set_square_is_pushout(const SetFun& top, const SetFun& left, const SetFun& right, const SetFun& bottom) {
  if (!set_square_commutes(top, left, right, bottom)) return false;
  std::size_t nb = right.dom().size(), n = nb + bottom.dom().size();
  std::vector<std::size_t> parent(n);
  for (std::size_t x = 0; x < n; ++x) parent[x] = x;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t a = 0; a < top.dom().size(); ++a) parent[find(top.at(a))] = find(nb + left.at(a));
  std::vector<std::size_t> cls(right.cod().size(), SIZE_MAX);
  for (std::size_t x = 0; x < n; ++x) {
    auto d = x < nb ? right.at(x) : bottom.at(x - nb);
    auto r = find(x);
    if (cls[d] == SIZE_MAX) cls[d] = r;
    else if (cls[d] != r) return false;
  }
  return std::find(cls.begin(), cls.end(), SIZE_MAX) == cls.end();
}

}  // namespace ecgw

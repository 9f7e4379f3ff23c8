#include "ecgw/cli.hpp"

#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "ecgw/appendix.hpp"
#include "ecgw/axioms.hpp"
#include "ecgw/chain_cgw.hpp"
#include "ecgw/exactqi.hpp"
#include "ecgw/io.hpp"
#include "ecgw/k0.hpp"
#include "ecgw/sdot.hpp"

namespace ecgw::cli {
namespace {

struct Options {
  std::string file, instance = "finset", map, complex, staircase, suite = "cgw";
  std::uint64_t seed = 1;
  std::size_t trials = 100;
  std::vector<int> window;
  int k = 0;
  bool dot = false;
  unsigned threads = 1;
};

// Input problems; reported with exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
  if (const char* s = std::getenv("ECGW_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw UsageError("ECGW_SEED is not an unsigned integer");
    }
  }
  return 1;
}

template <class Fn>
int with_instance(const Options& o, Fn&& fn) {
  if (o.instance == "finset") return fn(FinSetInstance{});
  if (o.instance == "mset") return fn(MSetInstance(Monoid::idempotent_pair()));
  if (o.instance.rfind("mset:", 0) == 0) return fn(MSetInstance(io::load_monoid(o.instance.substr(5))));
  throw UsageError("unknown instance '" + o.instance + "' (finset, mset or mset:<table-file>)");
}

io::Document need_file(const Options& o) {
  if (o.file.empty()) throw UsageError("--file is required");
  return io::load(o.file);
}

template <class V>
const V& need(const std::map<std::string, V>& m, const std::string& name, const char* flag, const char* what) {
  if (name.empty()) throw UsageError(std::string(flag) + " is required");
  auto it = m.find(name);
  if (it == m.end()) throw UsageError(std::string("no ") + what + " '" + name + "' in the file");
  return it->second;
}

std::pair<int, int> window_of(const Options& o, int lo, int hi) {
  if (o.window.empty()) return {lo, hi};
  if (o.window.size() != 2 || o.window[0] > o.window[1]) throw UsageError("--window takes two integers lo <= hi");
  return {o.window[0], o.window[1]};
}

int report(std::ostream& out, const AuditReport& r) {
  out << r.to_text();
  return r.passed() ? 0 : 1;
}

int audit(const Options& o, std::ostream& out) {
  return with_instance(o, [&](const auto& ins) {
    const std::vector<std::string> all{"cgw",       "appendix",  "acyclicity",       "quasi-iso",
                                       "chain-cgw", "staircases", "chain-staircases", "gw"};
    std::vector<std::string> suites = o.suite == "all" ? all : std::vector<std::string>{o.suite};
    int status = 0;
    for (const auto& s : suites) {
      std::optional<AuditReport> r;
      if (s == "cgw") r = ecgw::audit(ins, o.trials, o.seed, o.threads);
      if (s == "appendix") r = appendix_audit(ins, o.trials, o.seed, o.threads);
      if (s == "acyclicity") r = acyclicity_audit(ins, o.trials, o.seed, o.threads);
      if (s == "quasi-iso") r = quasi_iso_audit(ins, o.trials, o.seed, o.threads);
      if (s == "chain-cgw") r = chain_cgw_audit(ins, o.trials, o.seed, o.threads);
      if (s == "staircases") r = sdot_audit(ins, o.trials, o.seed, o.threads);
      if (s == "chain-staircases") r = chain_sdot_audit(ins, o.trials, o.seed, o.threads);
      if (s == "gw") r = gw_audit(ins, o.trials, o.seed, o.threads);
      if (!r) throw UsageError("unknown suite '" + s + "'");
      status = std::max(status, report(out, *r));
    }
    return status;
  });
}

int chain(const std::string& cmd, const Options& o, std::ostream& out) {
  auto doc = need_file(o);
  return with_instance(o, [&](const auto& ins) {
    using I = std::decay_t<decltype(ins)>;
    if (cmd == "validate") {
      try {
        auto r = io::resolve(ins, doc);
        for (const auto& [name, x] : r.complexes)
          out << "complex " << name << " valid window [" << x.lo << "," << x.hi << "]\n";
        for (const auto& [name, m] : r.chain_maps) out << "chain map " << name << " valid kind " << kind_tag(m.kind) << "\n";
        out << "valid\n";
        return 0;
      } catch (const Error& e) {
        out << "invalid: " << e.what() << "\n";
        return 1;
      }
    }
    auto r = io::resolve(ins, doc);
    if (cmd == "coker" || cmd == "ker") {
      const auto& m = need(r.chain_maps, o.map, "--map", "chain map");
      const auto& raw = doc.chain_maps.at(o.map);
      io::Document result;
      if (cmd == "coker") {
        if (m.kind != MapKind::M) throw UsageError("coker needs a chain m-map");
        io::put_chain_map(ins, result, o.map + ".coker", coker_chain(ins, m).map, o.map + ".Z", raw.dst);
      } else {
        if (m.kind != MapKind::E) throw UsageError("ker needs a chain e-map");
        io::put_chain_map(ins, result, o.map + ".ker", ker_chain(ins, m).map, o.map + ".K", raw.dst);
      }
      out << io::dump(result);
      return 0;
    }
    if (cmd == "qiso") {
      out << (is_quasi_iso(ins, need(r.chain_maps, o.map, "--map", "chain map")) ? "true" : "false") << "\n";
      return 0;
    }
    const ChainComplex<I>& x = need(r.complexes, o.complex, "--complex", "complex");
    if (cmd == "homology") {
      for (int i = x.hi; i >= x.lo; --i) out << "H" << i << " = " << to_string(homology(ins, x, i)) << "\n";
      return 0;
    }
    if (cmd == "exact") {
      auto c = is_exact(ins, x);
      if (c.exact)
        out << "exact\n";
      else
        out << "not exact at degree " << *c.refusal << ": " << c.reason << "\n";
      return 0;
    }
    throw UsageError("unknown chain command '" + cmd + "'");
  });
}

int sdot(const std::string& cmd, const Options& o, std::ostream& out) {
  if (cmd == "identities" && o.file.empty())
    return with_instance(o, [&](const auto& ins) { return report(out, sdot_audit(ins, o.trials, o.seed, o.threads)); });
  auto doc = need_file(o);
  return with_instance(o, [&](const auto& ins) {
    using I = std::decay_t<decltype(ins)>;
    ExtensiveOps<I> ops{ins};
    auto r = io::resolve(ins, doc);
    auto s = staircase_build(ops, need(r.staircases, o.staircase, "--staircase", "staircase"));
    auto show = [&](const Staircase<ExtensiveOps<I>>& t) {
      if (o.dot) {
        out << to_dot(ops, t);
        return;
      }
      out << "level " << t.n << "\n";
      for (int i = 0; i <= t.n; ++i)
        for (int j = i; j <= t.n; ++j) out << "  A" << i << "," << j << " = " << ops.label(t.at(i, j)) << "\n";
    };
    if (cmd == "build") {
      show(s);
      return 0;
    }
    if (cmd == "face" || cmd == "degeneracy") {
      show(cmd == "face" ? face(ops, s, o.k) : degeneracy(ops, s, o.k));
      return 0;
    }
    if (cmd == "identities") {
      return report(out, run_trials("staircase-identities", ins.name(), 1, o.seed, 1,
                                    [&](std::size_t, Rng&, TrialLog& log) { checks::simplicial_identities(ops, s, log); }));
    }
    throw UsageError("unknown sdot command '" + cmd + "'");
  });
}

int k0(const std::string& cmd, const Options& o, std::ostream& out) {
  if (cmd == "relations")
    return with_instance(o, [&](const auto& ins) {
      auto a = relation_audit(ins, RelationLevel::Objects, o.trials, o.seed, o.threads);
      auto b = relation_audit(ins, RelationLevel::Chains, o.trials, o.seed, o.threads);
      out << a.to_text() << b.to_text();
      return a.passed() && b.passed() ? 0 : 1;
    });
  return with_instance(o, [&](const auto& ins) {
    auto vec = [&](const auto& v) {
      std::string s = "(";
      for (std::size_t k = 0; k < v.size(); ++k) s += (k ? " " : "") + std::to_string(ins.carrier(v[k]).size());
      return s + ")";
    };
    auto row = [&](const std::string& name, const auto& x) {
      auto [a, b] = window_of(o, x.lo, x.hi);
      out << name << " chi " << euler_char(ins, x);
      try {
        out << " degrees " << vec(degree_vector(ins, x, a, b));
      } catch (const Error& e) {
        out << " degrees refused (" << e.what() << ")";
      }
      try {
        out << " images " << vec(image_vector(ins, x, a, b));
      } catch (const Error& e) {
        out << " images refused (" << e.what() << ")";
      }
      out << "\n";
    };
    if (cmd == "euler") {
      auto r = io::resolve(ins, need_file(o));
      row(o.complex, need(r.complexes, o.complex, "--complex", "complex"));
      return 0;
    }
    if (cmd == "gw") {
      if (!o.file.empty()) {
        auto r = io::resolve(ins, need_file(o));
        for (const auto& [name, x] : r.complexes) row(name, x);
      }
      return report(out, gw_audit(ins, o.trials, o.seed, o.threads));
    }
    throw UsageError("unknown k0 command '" + cmd + "'");
  });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extensive categories, chain complexes and staircases: audits and tools", "ecgw"};
  app.require_subcommand(1);
  Options o;
  try {
    o.seed = default_seed();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  auto common = [&](CLI::App* c) {
    c->add_option("--file", o.file, "JSON document");
    c->add_option("--seed", o.seed, "random seed (default $ECGW_SEED or 1)");
    c->add_option("--trials", o.trials, "number of randomized trials")->check(CLI::PositiveNumber);
    c->add_option("--window", o.window, "degree window lo hi")->expected(2);
    c->add_option("--instance", o.instance, "finset, mset or mset:<table-file>");
    c->add_option("--map", o.map, "chain map name");
    c->add_option("--complex", o.complex, "complex name");
    c->add_option("--staircase", o.staircase, "staircase name");
    c->add_option("--k", o.k, "face or degeneracy index");
    c->add_flag("--dot", o.dot, "print staircases as DOT");
    c->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
  };
  std::string cmd;
  auto* a = app.add_subcommand("audit", "randomized property audit");
  common(a);
  a->add_option("--suite", o.suite,
                "cgw, appendix, acyclicity, quasi-iso, chain-cgw, staircases, chain-staircases, gw or all");
  struct Group {
    CLI::App* app;
    std::function<int(const std::string&, const Options&, std::ostream&)> fn;
  };
  std::vector<Group> groups;
  auto group = [&](const char* name, const char* help,
                   std::initializer_list<std::pair<const char*, const char*>> cmds, auto fn) {
    auto* g = app.add_subcommand(name, help);
    g->require_subcommand(1);
    for (auto [c, h] : cmds) {
      auto* s = g->add_subcommand(c, h);
      common(s);
      s->callback([&cmd, c] { cmd = c; });
    }
    groups.push_back({g, fn});
  };
  group("chain", "chain complex operations",
        {{"validate", "check every complex and chain map in --file"},
         {"coker", "cokernel of the chain m-map --map, as a document"},
         {"ker", "kernel of the chain e-map --map, as a document"},
         {"qiso", "is --map a quasi-isomorphism"},
         {"homology", "homology of --complex"},
         {"exact", "is --complex exact"}},
        chain);
  group("sdot", "staircases",
        {{"build", "staircase generated by the row --staircase"},
         {"face", "face --k of the staircase"},
         {"degeneracy", "degeneracy --k of the staircase"},
         {"identities", "check the simplicial identities"}},
        sdot);
  group("k0", "Euler characteristics and K0 relations",
        {{"euler", "Euler characteristic and vectors of --complex"},
         {"gw", "invariants of the file's complexes plus the gw audit"},
         {"relations", "audit the K0 relations on objects and complexes"}},
        k0);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    if (a->parsed()) return audit(o, out);
    for (const auto& g : groups)
      if (g.app->parsed()) return g.fn(cmd, o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace ecgw::cli

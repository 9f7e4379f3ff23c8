#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ecgw/audit.hpp"
#include "ecgw/chain.hpp"
#include "ecgw/chain_gen.hpp"
#include "ecgw/exactqi.hpp"
#include "ecgw/gen.hpp"

namespace ecgw {

template <class I>
long long euler_char(const I& ins, const ChainComplex<I>& x) {
  long long chi = 0;
  for (int i = x.lo; i <= x.hi; ++i) {
    auto n = static_cast<long long>(ins.carrier(x.X(i)).size());
    chi += (i % 2 == 0) ? n : -n;
  }
  return chi;
}

// Throws IndexOutOfWindow at the first degree outside [a, b] that is not initial.
template <class I>
void check_support(const I& ins, const ChainComplex<I>& x, int a, int b) {
  if (a > b) throw Error(ErrorKind::IndexOutOfWindow, "window [" + std::to_string(a) + "," + std::to_string(b) + "]", a);
  for (int i = x.lo; i <= x.hi; ++i)
    if ((i < a || i > b) && !ins.carrier(x.X(i)).empty())
      throw Error(ErrorKind::IndexOutOfWindow, "complex not supported in [" + std::to_string(a) + "," + std::to_string(b) + "]", i);
}

// (X_{b-1}, ..., X_a, X_b).
template <class I>
std::vector<typename I::Obj> degree_vector(const I& ins, const ChainComplex<I>& x, int a, int b) {
  check_support(ins, x, a, b);
  std::vector<typename I::Obj> out;
  for (int i = b - 1; i >= a; --i) out.push_back(obj_at(ins, x, i));
  out.push_back(obj_at(ins, x, b));
  return out;
}

// (Xbar_b, ..., Xbar_{a+1}) of an exact complex.
template <class I>
std::vector<typename I::Obj> image_vector(const I& ins, const ChainComplex<I>& x, int a, int b) {
  check_support(ins, x, a, b);
  auto cert = is_exact(ins, x);
  if (!cert.exact) throw Error(ErrorKind::NotExact, cert.reason, cert.refusal);
  std::vector<typename I::Obj> out;
  for (int i = b; i > a; --i) out.push_back(bar_at(ins, x, i));
  return out;
}

// The exact complex on [a, b] with X_i = B_{i+1} + B_i, B read off an image vector.
template <class I>
ChainComplex<I> reconstruct(const I& ins, const std::vector<typename I::Obj>& images, int a, int b) {
  if (a > b || images.size() != static_cast<std::size_t>(b - a))
    throw Error(ErrorKind::IndexOutOfWindow, "image vector does not fit the window", a);
  auto part = [&](int i) { return i <= a || i > b ? ins.initial() : images[static_cast<std::size_t>(b - i)]; };
  ChainComplex<I> x{a, b, {}, {}, {}};
  std::optional<typename I::Mor> upper;
  for (int i = a; i <= b; ++i) {
    auto c = ins.coproduct(part(i + 1), part(i));
    x.deg.push_back(c.obj);
    x.img.push_back(c.inr);
    x.diff.push_back(upper ? *upper : ins.identity(ins.initial()));
    upper = c.inl;
  }
  return validate(ins, x);
}

template <class I>
std::vector<std::size_t> cardinalities(const I& ins, const std::vector<typename I::Obj>& v) {
  std::vector<std::size_t> out;
  for (const auto& o : v) out.push_back(ins.carrier(o).size());
  return out;
}

struct K0Report {
  std::string instance;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::map<std::string, std::size_t> relations;  // relation kind -> number checked
  std::size_t violations = 0;
  std::optional<std::string> first_violation;

  bool passed() const { return violations == 0; }

  static K0Report from(const AuditReport& r) {
    K0Report k{r.instance, r.seed, r.trials, {}, r.total_failures(), {}};
    for (const auto& [name, s] : r.axioms) {
      k.relations[name] = s.trials;
      if (s.first_trial && !k.first_violation)
        k.first_violation = name + " (trial " + std::to_string(*s.first_trial) + "): " + s.counterexample;
    }
    return k;
  }

  std::string to_text() const {
    std::ostringstream out;
    out << "k0 relations instance " << instance << " seed " << seed << " trials " << trials << "\n";
    for (const auto& [name, n] : relations) out << "  " << name << " " << n << "\n";
    out << "  violations " << violations << "\n";
    if (first_violation) out << "  first " << *first_violation << "\n";
    out << "result " << (passed() ? "PASS" : "FAIL") << "\n";
    return out.str();
  }
};

namespace checks {

// Distinguished square of complexes A -> B, A -> C, B -> D, C -> D: C an
// m-subcomplex of D, B an e-subcomplex containing the rest of D, A = B n C.
template <class I>
ChainSquare<I> random_distinguished_chain_square(const I& ins, Rng& rng) {
  auto d = chaingen::random_complex(ins, rng, kChainLo, kChainHi, kChainMax);
  auto cm = chaingen::m_close(ins, d, chaingen::random_masks(ins, rng, d));
  auto bm = chaingen::random_masks(ins, rng, d);
  for (std::size_t k = 0; k < bm.size(); ++k) bm[k] = bm[k] | ~cm[k];
  bm = chaingen::e_close(ins, d, bm);
  auto c = chaingen::restrict_to(ins, d, cm, MapKind::M);
  auto b = chaingen::restrict_to(ins, d, bm, MapKind::E);
  auto a = chaingen::restrict_to(ins, d, chaingen::intersect(bm, cm), MapKind::M, false);
  auto top = induce(ins, MapKind::M, identity_map(ins, d, MapKind::M), a, b);
  auto left = induce(ins, MapKind::E, identity_map(ins, d, MapKind::E), a, c);
  return {top, left, b, c};
}

// The same shape with every corner an exact complex.
template <class I>
ChainSquare<I> random_exact_chain_square(const I& ins, Rng& rng) {
  auto d = chaingen::random_exact(ins, rng, kChainLo, kChainHi, 2);
  auto cm = chaingen::exact_pieces(ins, rng, d);
  auto bm = chaingen::exact_pieces(ins, rng, d);
  for (std::size_t k = 0; k < bm.size(); ++k) bm[k] = bm[k] | ~cm[k];
  auto c = chaingen::restrict_to(ins, d, cm, MapKind::M);
  auto b = chaingen::restrict_to(ins, d, bm, MapKind::E);
  auto a = chaingen::restrict_to(ins, d, chaingen::intersect(bm, cm), MapKind::M, false);
  auto top = induce(ins, MapKind::M, identity_map(ins, d, MapKind::M), a, b);
  auto left = induce(ins, MapKind::E, identity_map(ins, d, MapKind::E), a, c);
  return {top, left, b, c};
}

// X -> Y with exact cokernel (m) or exact kernel (e), glued non-trivially.
template <class I>
ChainMap<I> random_quasi_iso(const I& ins, Rng& rng, MapKind kind) {
  auto x = some_complex(ins, rng, 3, rng.coin(0.3));
  auto e = chaingen::random_exact(ins, rng, kChainLo, kChainHi, 1);
  return kind == MapKind::M ? chaingen::glue(ins, rng, x, e).m : chaingen::glue(ins, rng, e, x).e;
}

template <class I>
std::string corners(const I& ins, const ChainSquare<I>& s) {
  return "A " + describe(ins, s.top.src) + " | B " + describe(ins, s.top.dst) + " | C " + describe(ins, s.left.dst) +
         " | D " + describe(ins, s.right.dst);
}

// Square with all of A, B\A, C\A non-empty in some degree.
template <class I>
bool nontrivial(const I& ins, const ChainSquare<I>& s) {
  auto total = [&](const ChainComplex<I>& x) {
    std::size_t n = 0;
    for (int i = x.lo; i <= x.hi; ++i) n += ins.carrier(x.X(i)).size();
    return n;
  };
  auto a = total(s.top.src);
  return a > 0 && total(s.top.dst) > a && total(s.left.dst) > a;
}

template <class I>
std::optional<std::string> additive(const I& ins, const ChainSquare<I>& s, const std::vector<std::size_t>& va,
                                    const std::vector<std::size_t>& vb, const std::vector<std::size_t>& vc,
                                    const std::vector<std::size_t>& vd) {
  for (std::size_t k = 0; k < va.size(); ++k)
    if (va[k] + vd[k] != vb[k] + vc[k]) return "component " + std::to_string(k) + ": " + corners(ins, s);
  return std::nullopt;
}

template <class I>
void gw_trial(const I& ins, Rng& rng, TrialLog& log) {
  for (auto kind : {MapKind::M, MapKind::E}) {
    auto f = random_quasi_iso(ins, rng, kind);
    log.check(std::string("euler_invariant_under_quasi_iso_") + kind_tag(kind), [&]() -> std::optional<std::string> {
      if (!is_quasi_iso(ins, f)) return "generator: not a quasi-isomorphism " + describe(ins, f.dst);
      if (euler_char(ins, f.src) != euler_char(ins, f.dst)) return describe(ins, f.src) + " | " + describe(ins, f.dst);
      return std::nullopt;
    });
  }

  auto sq = random_distinguished_chain_square(ins, rng);
  if (nontrivial(ins, sq)) log.count("nontrivial_distinguished_squares");
  log.check("euler_additive_on_distinguished_squares", [&]() -> std::optional<std::string> {
    if (!classify(ins, sq).distinguished) return "generator: square not distinguished";
    if (euler_char(ins, sq.top.src) + euler_char(ins, sq.right.dst) !=
        euler_char(ins, sq.top.dst) + euler_char(ins, sq.left.dst))
      return corners(ins, sq);
    return std::nullopt;
  });
  log.check("degree_vector_additive", [&]() -> std::optional<std::string> {
    auto v = [&](const ChainComplex<I>& x) { return cardinalities(ins, degree_vector(ins, x, kChainLo, kChainHi)); };
    return additive(ins, sq, v(sq.top.src), v(sq.top.dst), v(sq.left.dst), v(sq.right.dst));
  });

  auto ex = random_exact_chain_square(ins, rng);
  if (nontrivial(ins, ex)) log.count("nontrivial_exact_squares");
  log.check("image_vector_additive", [&]() -> std::optional<std::string> {
    if (!classify(ins, ex).distinguished) return "generator: square not distinguished";
    auto v = [&](const ChainComplex<I>& x) { return cardinalities(ins, image_vector(ins, x, kChainLo, kChainHi)); };
    return additive(ins, ex, v(ex.top.src), v(ex.top.dst), v(ex.left.dst), v(ex.right.dst));
  });

  auto a = ins.random_object(rng, kChainMax);
  log.expect("euler_of_concentrated_is_cardinality",
             euler_char(ins, concentrated(ins, a, 0)) == static_cast<long long>(ins.carrier(a).size()),
             [&] { return to_string(ins.carrier(a)); });

  auto w = chaingen::random_exact(ins, rng, kChainLo, kChainHi, 2);
  log.expect("euler_of_exact_is_zero", euler_char(ins, w) == 0, [&] { return describe(ins, w); });
  log.check("exact_reconstruction", [&]() -> std::optional<std::string> {
    auto back = reconstruct(ins, image_vector(ins, w, kChainLo, kChainHi), kChainLo, kChainHi);
    if (!chain_isomorphic(ins, back, w)) return describe(ins, w) + " rebuilt as " + describe(ins, back);
    return std::nullopt;
  });

  auto ext = random_extension(ins, rng);
  log.expect("euler_additive_on_extensions",
             euler_char(ins, ext.mid) == euler_char(ins, ext.m.src) + euler_char(ins, ext.e.src),
             [&] { return describe(ins, ext.mid); });
  auto x = chaingen::random_complex(ins, rng, kChainLo, kChainHi, kChainMax);
  auto [fx, gx] = truncation_pair(ins, x);
  log.expect("euler_additive_on_truncation", euler_char(ins, x) == euler_char(ins, fx.src) + euler_char(ins, gx.src),
             [&] { return describe(ins, x); });
}

// Class function |.| against distinguished squares, isomorphisms and
// trivial extensions of objects.
template <class I>
void object_relations_trial(const I& ins, Rng& rng, TrialLog& log) {
  auto sz = [&](const typename I::Obj& o) { return ins.carrier(o).size(); };
  auto s = gen::random_square(ins, rng, 8, gen::SquareKind::Distinguished);
  log.check("distinguished_square", [&]() -> std::optional<std::string> {
    if (!is_distinguished(ins, s)) return "generator: square not distinguished";
    if (sz(ins.dom(s.top)) + sz(ins.cod(s.right)) != sz(ins.cod(s.top)) + sz(ins.cod(s.left))) return to_string(ins, s);
    return std::nullopt;
  });
  auto w = gen::random_iso(ins, rng, 8);
  log.expect("weak_equivalence", sz(ins.dom(w)) == sz(ins.cod(w)), [&] { return to_string(ins.fun(w)); });
  auto a = ins.random_object(rng, 4), b = ins.random_object(rng, 4);
  auto p = star_m(ins, initial_map(ins, a), initial_map(ins, b));
  log.expect("trivial_extension", sz(a) + sz(b) == sz(p.obj), [&] { return to_string(ins.carrier(p.obj)); });
}

// Euler characteristic against distinguished chain squares, quasi-isomorphisms
// and trivial extensions of complexes.
template <class I>
void chain_relations_trial(const I& ins, Rng& rng, TrialLog& log) {
  auto sq = random_distinguished_chain_square(ins, rng);
  log.check("distinguished_square", [&]() -> std::optional<std::string> {
    if (!classify(ins, sq).distinguished) return "generator: square not distinguished";
    if (euler_char(ins, sq.top.src) + euler_char(ins, sq.right.dst) !=
        euler_char(ins, sq.top.dst) + euler_char(ins, sq.left.dst))
      return corners(ins, sq);
    return std::nullopt;
  });
  auto f = random_quasi_iso(ins, rng, rng.coin() ? MapKind::M : MapKind::E);
  log.expect("weak_equivalence", is_quasi_iso(ins, f) && euler_char(ins, f.src) == euler_char(ins, f.dst),
             [&] { return describe(ins, f.src) + " | " + describe(ins, f.dst); });
  auto a = chaingen::random_complex(ins, rng, kChainLo, kChainHi, 2);
  auto b = chaingen::random_complex(ins, rng, kChainLo, kChainHi, 2);
  auto p = star_chain_m(ins, from_empty(ins, a, MapKind::M), from_empty(ins, b, MapKind::M));
  log.expect("trivial_extension", euler_char(ins, a) + euler_char(ins, b) == euler_char(ins, p.obj),
             [&] { return describe(ins, p.obj); });
}

}  // namespace checks

template <class I>
AuditReport gw_audit(const I& ins, std::size_t trials, std::uint64_t seed, unsigned threads = 1) {
  return run_trials("gillet-waldhausen", ins.name(), trials, seed, threads,
                    [&](std::size_t, Rng& rng, TrialLog& log) { checks::gw_trial(ins, rng, log); });
}

enum class RelationLevel { Objects, Chains };

template <class I>
K0Report relation_audit(const I& ins, RelationLevel level, std::size_t trials, std::uint64_t seed,
                        unsigned threads = 1) {
  std::string name = level == RelationLevel::Objects ? ins.name() : "chain(" + ins.name() + ")";
  auto r = run_trials("k0-relations", name, trials, seed, threads, [&](std::size_t, Rng& rng, TrialLog& log) {
    if (level == RelationLevel::Objects)
      checks::object_relations_trial(ins, rng, log);
    else
      checks::chain_relations_trial(ins, rng, log);
  });
  return K0Report::from(r);
}

}  // namespace ecgw

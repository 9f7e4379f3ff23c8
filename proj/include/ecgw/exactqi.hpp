#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ecgw/audit.hpp"
#include "ecgw/chain.hpp"
#include "ecgw/chain_gen.hpp"

namespace ecgw {

// Witnesses for X_i = d(Xbar_{i+1}) + Xbar_i in every degree, or the first
// degree where this fails.
struct ExactnessCertificate {
  bool exact = false;
  std::optional<int> refusal;
  std::string reason;
  std::vector<std::vector<bool>> hit;   // image of d_{i+1} in X_i
  std::vector<std::vector<bool>> part;  // image part of X_i
};

template <class I>
ExactnessCertificate is_exact(const I& ins, const ChainComplex<I>& x) {
  ExactnessCertificate c;
  for (int i = x.lo; i <= x.hi; ++i) {
    if (!ins.fun(x.d(i)).injective()) {
      c.refusal = i;
      c.reason = "differential is not injective";
      return c;
    }
    std::vector<bool> hit = i < x.hi ? ins.fun(x.d(i + 1)).image_mask()
                                     : std::vector<bool>(ins.carrier(x.X(i)).size(), false);
    auto part = ins.fun(x.inc(i)).image_mask();
    for (std::size_t p = 0; p < hit.size(); ++p)
      if (!hit[p] && !part[p]) {
        c.refusal = i;
        c.reason = "point " + ins.carrier(x.X(i))[p] + " is neither hit nor in the image part";
        return c;
      }
    c.hit.push_back(std::move(hit));
    c.part.push_back(std::move(part));
  }
  c.exact = true;
  return c;
}

// X_i minus the image part and the image of d_{i+1}.
template <class I>
FinSetObj homology(const I& ins, const ChainComplex<I>& x, int i) {
  auto pos = x.pos(i);
  (void)pos;
  auto keep = ins.fun(x.inc(i)).image_mask();
  if (i < x.hi) {
    auto hit = ins.fun(x.d(i + 1)).image_mask();
    for (std::size_t p = 0; p < keep.size(); ++p) keep[p] = keep[p] || hit[p];
  }
  keep.flip();
  return ins.carrier(x.X(i)).select(keep);
}

template <class I>
bool is_quasi_iso(const I& ins, const ChainMap<I>& f) {
  if (f.kind == MapKind::M) return is_exact(ins, coker_chain(ins, f).obj).exact;
  return is_exact(ins, ker_chain(ins, f).obj).exact;
}

// Points of Ybar_i that the image square sends into f(X_i) without coming
// from Xbar_i. Chain m-maps have none; chain e-maps may.
template <class I>
std::vector<bool> stray_image_points(const I& ins, const ChainMap<I>& f, int i) {
  SetFun in = ins.fun(f.dst.inc(i));
  auto over = ins.fun(f.at(i)).image_mask();
  auto from = ins.fun(f.bar(i)).image_mask();
  std::vector<bool> stray(in.dom().size());
  for (std::size_t p = 0; p < stray.size(); ++p) stray[p] = over[in.at(p)] && !from[p];
  return stray;
}

// The square Xbar_{i+1} + Xbar_i -> X_i over Ybar_{i+1} + Ybar_i -> Y_i. With
// trim set, stray points are dropped from both summands of the lower left corner.
template <class I>
bool bicartesian_at(const I& ins, const ChainMap<I>& f, int i, bool trim = true) {
  const auto &x = f.src, &y = f.dst;
  SetFun up_x = i < x.hi ? ins.fun(x.d(i + 1)) : ins.fun(initial_map(ins, x.X(i)));
  SetFun up_y = i < y.hi ? ins.fun(y.d(i + 1)) : ins.fun(initial_map(ins, y.X(i)));
  SetFun fu = i < f.hi() ? ins.fun(f.bar(i + 1)) : ins.fun(ins.identity(ins.initial()));
  SetFun in_x = ins.fun(x.inc(i)), in_y = ins.fun(y.inc(i));
  SetFun fb = ins.fun(f.bar(i));
  auto drop = [&](SetFun& out, SetFun& from, std::vector<bool> keep) {
    keep.flip();
    SetFun j = inclusion_of_mask(out.dom(), keep);
    out = compose(out, j);
    from = *factor(from, j);
  };
  if (trim) {
    if (i < f.hi()) drop(up_y, fu, stray_image_points(ins, f, i + 1));
    drop(in_y, fb, stray_image_points(ins, f, i));
  }
  auto cx = set_coproduct(up_x.dom(), in_x.dom());
  auto cy = set_coproduct(up_y.dom(), in_y.dom());
  auto top = set_copair(cx, up_x, in_x);
  auto bottom = set_copair(cy, up_y, in_y);
  auto left = set_copair(cx, compose(cy.inl, fu), compose(cy.inr, fb));
  SetFun right = ins.fun(f.at(i));
  return set_square_is_pullback(top, left, right, bottom) && set_square_is_pushout(top, left, right, bottom);
}

// Every degree bicartesian. For m-maps trimming removes nothing, so both
// forms coincide; for e-maps only the trimmed form detects quasi-isos, since
// stray points vanish from the kernel but break the untrimmed pullback.
template <class I>
bool bicartesian_criterion(const I& ins, const ChainMap<I>& f, bool trim = true) {
  for (int i = f.lo(); i <= f.hi(); ++i)
    if (!bicartesian_at(ins, f, i, trim)) return false;
  return true;
}

namespace checks {

using gen::operator&;
using gen::operator~;
using gen::operator|;

constexpr int kChainLo = -2, kChainHi = 2;
constexpr std::size_t kChainMax = 4;

// Exact with probability one half, pieces sized so degrees stay small.
template <class I>
ChainComplex<I> some_complex(const I& ins, Rng& rng, std::size_t max_size, bool exact) {
  return exact ? chaingen::random_exact(ins, rng, kChainLo, kChainHi, max_size / 2)
               : chaingen::random_complex(ins, rng, kChainLo, kChainHi, max_size);
}

// Kernel-cokernel sequence K -> Y <- Z, mixing three constructions so that
// every pair of exactness hypotheses occurs.
template <class I>
chaingen::Extension<I> random_extension(const I& ins, Rng& rng) {
  int mode = rng.uniform(0, 2);
  if (mode == 0) {
    std::size_t split = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(kChainMax)));
    auto k = some_complex(ins, rng, split, rng.coin());
    auto z = some_complex(ins, rng, kChainMax - split, rng.coin());
    return chaingen::glue(ins, rng, k, z);
  }
  auto y = some_complex(ins, rng, kChainMax, rng.coin(0.8));
  auto s = chaingen::random_masks(ins, rng, y);
  if (mode == 1) {
    auto m = chaingen::restrict_to(ins, y, chaingen::m_close(ins, y, s), MapKind::M);
    return {y, m, coker_chain(ins, m).map};
  }
  auto e = chaingen::restrict_to(ins, y, chaingen::e_close(ins, y, s), MapKind::E);
  return {y, ker_chain(ins, e).map, e};
}

template <class I>
void exact_closure(const I& ins, Rng& rng, TrialLog& log) {
  auto ext = random_extension(ins, rng);
  bool k = is_exact(ins, ext.m.src).exact, y = is_exact(ins, ext.mid).exact, z = is_exact(ins, ext.e.src).exact;
  auto where = [&] { return "K " + describe(ins, ext.m.src) + " | Y " + describe(ins, ext.mid); };
  if (k && z) log.count("extensions_of_exact");
  if (k && y) log.count("cokernels_of_exact");
  if (y && z) log.count("kernels_of_exact");
  log.expect("exact_closed_under_extensions", !(k && z) || y, where);
  log.expect("exact_closed_under_cokernels", !(k && y) || z, where);
  log.expect("exact_closed_under_kernels", !(y && z) || k, where);
}

template <class I>
void initial_acyclic(const I& ins, Rng& rng, TrialLog& log) {
  int lo = rng.uniform(kChainLo, kChainHi), hi = rng.uniform(lo - 1, kChainHi);
  auto e = empty_complex(ins, lo, hi);
  log.expect("initial_is_acyclic", is_exact(ins, e).exact, [&] { return describe(ins, e); });
}

// Composable pair of chain maps of one kind, built as two nested extensions.
template <class I>
std::pair<ChainMap<I>, ChainMap<I>> composable_pair(const I& ins, Rng& rng, MapKind kind) {
  auto base = some_complex(ins, rng, 2, rng.coin(0.3));
  auto e1 = some_complex(ins, rng, 2, rng.coin(0.6));
  auto e2 = some_complex(ins, rng, 2, rng.coin(0.6));
  if (kind == MapKind::M) {
    auto first = chaingen::glue(ins, rng, base, e1);
    auto second = chaingen::glue(ins, rng, first.mid, e2);
    return {first.m, second.m};
  }
  auto first = chaingen::glue(ins, rng, e1, base);
  auto second = chaingen::glue(ins, rng, e2, first.mid);
  return {first.e, second.e};
}

template <class I>
void two_of_three(const I& ins, Rng& rng, TrialLog& log) {
  for (auto kind : {MapKind::M, MapKind::E}) {
    auto [f, g] = composable_pair(ins, rng, kind);
    auto gf = compose(ins, g, f);
    int n = is_quasi_iso(ins, f) + is_quasi_iso(ins, g) + is_quasi_iso(ins, gf);
    std::string name = std::string("we_2of3_") + kind_tag(kind);
    if (n >= 2) log.count(name + "_two_hold");
    log.expect(name, n != 2, [&] { return "f " + describe(ins, f.src) + " | g " + describe(ins, g.dst); });
  }
}

// Kernel-cokernel pair of squares: parallel m-maps E -> F, C -> D, A -> B with
// columns E -> C <- A and F -> D <- B.
template <class I>
void parallel_two_of_three(const I& ins, Rng& rng, TrialLog& log) {
  auto f0 = some_complex(ins, rng, 2, rng.coin(0.4));
  auto b0 = some_complex(ins, rng, 2, rng.coin(0.4));
  auto ext = chaingen::glue(ins, rng, f0, b0);
  const auto& d = ext.mid;
  // masks of F and B inside D
  chaingen::Masks fm, bm;
  for (int i = d.lo; i <= d.hi; ++i) {
    fm.push_back(ins.fun(ext.m.at(i)).image_mask());
    bm.push_back(ins.fun(ext.e.at(i)).image_mask());
  }
  auto cm = rng.coin() ? chaingen::m_close(ins, d, chaingen::random_masks(ins, rng, d))
                       : chaingen::m_close(ins, d, chaingen::full_masks(ins, d, true));
  if (rng.coin()) {
    // drop a random summand of the F part
    auto drop = chaingen::random_masks(ins, rng, d);
    for (std::size_t k = 0; k < cm.size(); ++k) cm[k] = cm[k] & ~(drop[k] & fm[k]);
    cm = chaingen::m_close(ins, d, cm);
  }
  auto g = chaingen::restrict_to(ins, d, cm, MapKind::M);
  auto fd = chaingen::restrict_to(ins, d, fm, MapKind::M);
  auto bd = chaingen::restrict_to(ins, d, bm, MapKind::E);
  auto ed = chaingen::restrict_to(ins, d, chaingen::intersect(cm, fm), MapKind::M, false);
  auto ad = chaingen::restrict_to(ins, d, chaingen::intersect(cm, bm), MapKind::M, false);
  auto id = identity_map(ins, d, MapKind::M);
  auto h = induce(ins, MapKind::M, id, ed, fd);
  auto f = induce(ins, MapKind::M, id, ad, bd);
  log.check("parallel_2of3", [&]() -> std::optional<std::string> {
    // the columns really form kernel-cokernel pairs
    auto ec = induce(ins, MapKind::M, id, ed, g);
    auto ac = induce(ins, MapKind::E, identity_map(ins, d, MapKind::E), ad, g);
    if (!is_kernel_cokernel_pair(ins, ec, ac)) return "generator: column E -> C <- A is not a kernel-cokernel pair";
    int n = is_quasi_iso(ins, f) + is_quasi_iso(ins, g) + is_quasi_iso(ins, h);
    if (n >= 2) log.count("parallel_2of3_two_hold");
    if (n == 2) return "two of three parallel maps are quasi-isomorphisms: " + describe(ins, d);
    return std::nullopt;
  });
}

template <class I>
void acyclic_pushout(const I& ins, Rng& rng, TrialLog& log) {
  auto a = chaingen::random_exact(ins, rng, kChainLo, kChainHi, 1);
  auto b = chaingen::glue(ins, rng, a, chaingen::random_exact(ins, rng, kChainLo, kChainHi, 1));
  auto c = chaingen::glue(ins, rng, a, chaingen::random_exact(ins, rng, kChainLo, kChainHi, 1));
  log.check("acyclic_pushout_m", [&]() -> std::optional<std::string> {
    auto p = star_chain_m(ins, b.m, c.m);
    if (!is_exact(ins, p.obj).exact) return describe(ins, p.obj);
    return std::nullopt;
  });
  // e-spans inside an exact witness: unions of whole pieces of an exact complex
  auto w = chaingen::random_exact(ins, rng, kChainLo, kChainHi, 2);
  auto bm = chaingen::exact_pieces(ins, rng, w), cm = chaingen::exact_pieces(ins, rng, w);
  log.check("acyclic_pushout_e", [&]() -> std::optional<std::string> {
    auto bw = chaingen::restrict_to(ins, w, bm, MapKind::E);
    auto cw = chaingen::restrict_to(ins, w, cm, MapKind::E);
    auto aw = chaingen::restrict_to(ins, w, chaingen::intersect(bm, cm), MapKind::E, false);
    auto idw = identity_map(ins, w, MapKind::E);
    auto f = induce(ins, MapKind::E, idw, aw, bw);
    auto g = induce(ins, MapKind::E, idw, aw, cw);
    ChainSquare<I> witness{f, g, bw, cw};
    bool all = is_exact(ins, aw.src).exact && is_exact(ins, bw.src).exact && is_exact(ins, cw.src).exact;
    if (!all) return "generator: pieces not exact";
    auto p = star_chain_e(ins, f, g, witness);
    if (!is_exact(ins, p.obj).exact) return describe(ins, p.obj);
    return std::nullopt;
  });
}

// Agreement of the two quasi-isomorphism tests on maps of one kind; half the
// maps are glued to an exact complex so both outcomes occur.
template <class I>
void criterion_agreement(const I& ins, Rng& rng, TrialLog& log, MapKind kind) {
  ChainMap<I> f;
  if (rng.coin()) {
    auto ext = random_extension(ins, rng);
    f = kind == MapKind::M ? ext.m : ext.e;
  } else {
    auto x = some_complex(ins, rng, 3, rng.coin(0.3));
    auto e = chaingen::random_exact(ins, rng, kChainLo, kChainHi, 1);
    f = kind == MapKind::M ? chaingen::glue(ins, rng, x, e).m : chaingen::glue(ins, rng, e, x).e;
  }
  std::string tag = kind_tag(kind);
  bool q = is_quasi_iso(ins, f);
  log.count(std::string(q ? "quasi_isos_" : "non_quasi_isos_") + tag);
  log.expect("quasi_iso_iff_bicartesian_" + tag, q == bicartesian_criterion(ins, f),
             [&] { return describe(ins, f.src) + " -> " + describe(ins, f.dst); });
}

}  // namespace checks

template <class I>
AuditReport acyclicity_audit(const I& ins, std::size_t trials, std::uint64_t seed, unsigned threads = 1) {
  return run_trials("acyclicity", ins.name(), trials, seed, threads, [&](std::size_t, Rng& rng, TrialLog& log) {
    checks::initial_acyclic(ins, rng, log);
    checks::exact_closure(ins, rng, log);
    checks::two_of_three(ins, rng, log);
    checks::parallel_two_of_three(ins, rng, log);
    checks::acyclic_pushout(ins, rng, log);
  });
}

template <class I>
AuditReport quasi_iso_audit(const I& ins, std::size_t trials, std::uint64_t seed, unsigned threads = 1) {
  return run_trials("quasi-iso-criterion", ins.name(), trials, seed, threads,
                    [&](std::size_t, Rng& rng, TrialLog& log) {
                      checks::criterion_agreement(ins, rng, log, MapKind::M);
                      checks::criterion_agreement(ins, rng, log, MapKind::E);
                    });
}

}  // namespace ecgw

#pragma once

#include <optional>
#include <string>

#include "ecgw/audit.hpp"
#include "ecgw/chain.hpp"
#include "ecgw/chain_gen.hpp"

// The axiom audit of axioms.hpp, restated for chain complexes over an
// instance. Corners of every square are subcomplexes of one ambient complex.
namespace ecgw::chaincgw {

using chaingen::Masks;
using gen::operator&;
using gen::operator|;
using gen::operator~;

inline constexpr int kLo = -2, kHi = 2;
inline constexpr std::size_t kMax = 4;

template <class I>
ChainSquare<I> transpose(const ChainSquare<I>& s) {
  return {s.left, s.top, s.bottom, s.right};
}

template <class I>
std::string show(const I& ins, const ChainSquare<I>& s) {
  return "A " + describe(ins, s.top.src) + " | B " + describe(ins, s.top.dst) + " | C " + describe(ins, s.left.dst) +
         " | D " + describe(ins, s.right.dst);
}

// Smallest union of components containing s that is closed under d and under
// preimages of d: a subcomplex that is both an m- and an e-subcomplex.
template <class I>
Masks saturate(const I& ins, const ChainComplex<I>& x, Masks s) {
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = x.lo + 1; i <= x.hi; ++i) {
      auto k = static_cast<std::size_t>(i - x.lo);
      const auto& inc = ins.fun(x.inc(i));
      const auto& d = ins.fun(x.d(i));
      for (std::size_t q = 0; q < inc.dom().size(); ++q) {
        if (s[k][inc.at(q)] != s[k - 1][d.at(q)]) {
          s[k][inc.at(q)] = s[k - 1][d.at(q)] = true;
          changed = true;
        }
      }
    }
    for (int i = x.lo; i <= x.hi; ++i) {
      auto k = static_cast<std::size_t>(i - x.lo);
      auto grown = ~chaingen::summand_inside(ins, x.X(i), ~s[k]);
      if (grown != s[k]) changed = true;
      s[k] = grown;
    }
  }
  return s;
}

template <class I>
Masks random_saturated(const I& ins, Rng& rng, const ChainComplex<I>& x) {
  return saturate(ins, x, chaingen::random_masks(ins, rng, x));
}

template <class I>
ChainMap<I> between(const I& ins, MapKind kind, const ChainComplex<I>& d, const ChainMap<I>& s, const ChainMap<I>& t) {
  return induce(ins, kind, identity_map(ins, d, kind), s, t);
}

// Mixed square inside D: C an m-subcomplex, B an e-subcomplex, A = B n C,
// optionally cut down by a saturated set (then possibly not a pullback).
template <class I>
ChainSquare<I> mixed_square(const I& ins, Rng& rng, bool cover, bool loose) {
  auto d = chaingen::random_complex(ins, rng, kLo, kHi, kMax);
  auto cm = chaingen::m_close(ins, d, chaingen::random_masks(ins, rng, d));
  auto bm = chaingen::random_masks(ins, rng, d);
  if (cover)
    for (std::size_t k = 0; k < bm.size(); ++k) bm[k] = bm[k] | ~cm[k];
  bm = chaingen::e_close(ins, d, bm);
  auto am = chaingen::intersect(bm, cm);
  if (loose) am = chaingen::intersect(am, random_saturated(ins, rng, d));
  auto c = chaingen::restrict_to(ins, d, cm, MapKind::M);
  auto b = chaingen::restrict_to(ins, d, bm, MapKind::E);
  auto a = chaingen::restrict_to(ins, d, am, MapKind::M, false);
  return {between(ins, MapKind::M, d, a, b), between(ins, MapKind::E, d, a, c), b, c};
}

// Square of m-maps: B, C m-subcomplexes of D and A = B n C.
template <class I>
ChainSquare<I> m_square(const I& ins, Rng& rng) {
  auto d = chaingen::random_complex(ins, rng, kLo, kHi, kMax);
  auto bm = chaingen::m_close(ins, d, chaingen::random_masks(ins, rng, d));
  auto cm = chaingen::m_close(ins, d, chaingen::random_masks(ins, rng, d));
  auto b = chaingen::restrict_to(ins, d, bm, MapKind::M);
  auto c = chaingen::restrict_to(ins, d, cm, MapKind::M);
  auto a = chaingen::restrict_to(ins, d, chaingen::intersect(bm, cm), MapKind::M, false);
  return {between(ins, MapKind::M, d, a, b), between(ins, MapKind::M, d, a, c), b, c};
}

// Square of e-maps: B, C e-subcomplexes of D and A = B n C.
template <class I>
ChainSquare<I> e_square(const I& ins, Rng& rng) {
  auto d = chaingen::random_complex(ins, rng, kLo, kHi, kMax);
  auto bm = chaingen::e_close(ins, d, chaingen::random_masks(ins, rng, d));
  auto cm = chaingen::e_close(ins, d, chaingen::random_masks(ins, rng, d));
  auto b = chaingen::restrict_to(ins, d, bm, MapKind::E);
  auto c = chaingen::restrict_to(ins, d, cm, MapKind::E);
  auto a = chaingen::restrict_to(ins, d, chaingen::intersect(bm, cm), MapKind::E, false);
  return {between(ins, MapKind::E, d, a, b), between(ins, MapKind::E, d, a, c), b, c};
}

// A B E over C D F, rows m and columns e.
template <class I>
struct Pasting {
  ChainSquare<I> left, right, outer;
};

template <class I>
Pasting<I> random_pasting(const I& ins, Rng& rng, bool loose) {
  auto f = chaingen::random_complex(ins, rng, kLo, kHi, kMax);
  auto dm = chaingen::m_close(ins, f, chaingen::random_masks(ins, rng, f));
  auto em = chaingen::e_close(ins, f, chaingen::random_masks(ins, rng, f));
  if (rng.coin())
    for (std::size_t k = 0; k < em.size(); ++k) em[k] = em[k] | ~dm[k];
  em = chaingen::e_close(ins, f, em);
  auto bm = chaingen::intersect(dm, em);
  auto cm = chaingen::m_close(ins, f, chaingen::intersect(chaingen::random_masks(ins, rng, f), dm));
  if (rng.coin()) cm = chaingen::m_close(ins, f, dm);
  auto am = chaingen::intersect(bm, cm);
  if (loose) am = chaingen::intersect(am, random_saturated(ins, rng, f));
  auto d = chaingen::restrict_to(ins, f, dm, MapKind::M);
  auto e = chaingen::restrict_to(ins, f, em, MapKind::E);
  auto b = chaingen::restrict_to(ins, f, bm, MapKind::M, false);
  auto c = chaingen::restrict_to(ins, f, cm, MapKind::M);
  auto a = chaingen::restrict_to(ins, f, am, MapKind::M, false);
  auto ab = between(ins, MapKind::M, f, a, b), be = between(ins, MapKind::M, f, b, e);
  auto cd = between(ins, MapKind::M, f, c, d);
  auto ac = between(ins, MapKind::E, f, a, c), bd = between(ins, MapKind::E, f, b, d);
  Pasting<I> p;
  p.left = {ab, ac, bd, cd};
  p.right = {be, bd, e, d};
  p.outer = {compose(ins, be, ab), ac, e, compose(ins, d, cd)};
  return p;
}

// Independent pullback test: in every degree and image part, the image of A
// in D is the intersection of the images of B and C, and A maps injectively.
template <class I>
bool intersection_oracle(const I& ins, const ChainSquare<I>& s) {
  auto level = [&](const typename I::Mor& t, const typename I::Mor& l, const typename I::Mor& r,
                   const typename I::Mor& b) {
    auto rt = ins.compose(r, t), bl = ins.compose(b, l);
    if (!(ins.fun(rt) == ins.fun(bl))) return false;
    auto mb = ins.fun(r).image_mask(), mc = ins.fun(b).image_mask(), ma = ins.fun(rt).image_mask();
    for (std::size_t k = 0; k < ma.size(); ++k)
      if (ma[k] != (mb[k] && mc[k])) return false;
    return true;
  };
  for (int i = s.top.lo(); i <= s.top.hi(); ++i) {
    if (!level(s.top.at(i), s.left.at(i), s.right.at(i), s.bottom.at(i))) return false;
    if (!level(s.top.bar(i), s.left.bar(i), s.right.bar(i), s.bottom.bar(i))) return false;
  }
  return true;
}

// The m-map out of a chain star-pushout restricting to the given legs.
template <class I>
std::optional<ChainMap<I>> chain_mediating(const I& ins, const ChainStar<I>& p, const ChainMap<I>& toB,
                                           const ChainMap<I>& toC) {
  if (!(toB.dst == toC.dst)) return std::nullopt;
  ChainMap<I> m{MapKind::M, p.obj, toB.dst, {}, {}};
  for (int i = p.obj.lo; i <= p.obj.hi; ++i) {
    StarPushout<I> d{p.obj.X(i), p.inB.at(i), p.inC.at(i), {}};
    StarPushout<I> b{ins.dom(p.obj.inc(i)), p.inB.bar(i), p.inC.bar(i), {}};
    auto u = mediating(ins, d, toB.at(i), toC.at(i));
    auto ub = mediating(ins, b, toB.bar(i), toC.bar(i));
    if (!u || !ub) return std::nullopt;
    m.f.push_back(*u);
    m.fbar.push_back(*ub);
  }
  try {
    return validate_map(ins, m);
  } catch (const Error&) {
    return std::nullopt;
  }
}

// Trivial extension D -> D + X as an e-map.
template <class I>
ChainMap<I> extend(const I& ins, Rng& rng, const ChainComplex<I>& d) {
  auto x = chaingen::random_complex(ins, rng, d.lo, d.hi, 2);
  auto p = star_chain_m(ins, from_empty(ins, x, MapKind::M), from_empty(ins, d, MapKind::M));
  auto e = p.inC;
  e.kind = MapKind::E;
  return validate_map(ins, e);
}

template <class I>
void axiom_z(const I& ins, Rng& rng, TrialLog& log) {
  auto x = chaingen::random_complex(ins, rng, kLo, kHi, kMax);
  log.check("Z_shared_initial", [&]() -> std::optional<std::string> {
    auto m = from_empty(ins, x, MapKind::M);
    auto e = from_empty(ins, x, MapKind::E);
    if (!is_empty_complex(ins, m.src) || !is_chain_iso(ins, coker_chain(ins, m).map) ||
        !is_chain_iso(ins, ker_chain(ins, e).map))
      return describe(ins, x);
    return std::nullopt;
  });
}

template <class I>
void axiom_m(const I& ins, Rng& rng, TrialLog& log) {
  auto sq = mixed_square(ins, rng, false, true);
  log.check("M_monic", [&]() -> std::optional<std::string> {
    for (const auto* m : {&sq.top, &sq.left, &sq.right, &sq.bottom})
      for (int i = m->lo(); i <= m->hi(); ++i)
        if (!ins.fun(m->at(i)).injective() || !ins.fun(m->bar(i)).injective()) return show(ins, sq);
    return std::nullopt;
  });
}

template <class I>
void axiom_g(const I& ins, Rng& rng, TrialLog& log) {
  // B saturated inside the m-subcomplex C, so A = B and the top is an identity
  auto d = chaingen::random_complex(ins, rng, kLo, kHi, kMax);
  auto bm = random_saturated(ins, rng, d);
  auto cm = chaingen::m_close(ins, d, chaingen::random_masks(ins, rng, d));
  for (std::size_t k = 0; k < cm.size(); ++k) cm[k] = cm[k] | bm[k];
  cm = chaingen::m_close(ins, d, cm);
  auto b = chaingen::restrict_to(ins, d, bm, MapKind::E);
  auto c = chaingen::restrict_to(ins, d, cm, MapKind::M);
  ChainSquare<I> tri{identity_map(ins, b.src, MapKind::M), between(ins, MapKind::E, d, b, c), b, c};
  log.check("G_weak_triangles_good", [&]() -> std::optional<std::string> {
    if (!classify(ins, tri).pullback || !classify(ins, transpose(tri)).pullback) return show(ins, tri);
    return std::nullopt;
  });
  auto sq = mixed_square(ins, rng, rng.coin(), rng.coin());
  if (!classify(ins, sq).pullback) log.count("non_pullback_squares");
  log.check("G_good_are_pullbacks", [&]() -> std::optional<std::string> {
    if (classify(ins, sq).pullback != intersection_oracle(ins, sq)) return show(ins, sq);
    return std::nullopt;
  });
}

template <class I>
void axiom_d(const I& ins, Rng& rng, TrialLog& log) {
  auto sq = mixed_square(ins, rng, rng.coin(), false);
  if (classify(ins, sq).distinguished) log.count("distinguished_squares");
  log.check("D_kernel_cokernel_agree", [&]() -> std::optional<std::string> {
    bool k = is_chain_iso(ins, transport_square(ins, sq, Side::Kernels).top);
    bool c = is_chain_iso(ins, transport_square(ins, sq, Side::Cokernels).left);
    if (k != c || k != classify(ins, sq).distinguished) return show(ins, sq);
    return std::nullopt;
  });
  log.check("D_k_c_round_trip", [&]() -> std::optional<std::string> {
    for (auto side : {Side::Kernels, Side::Cokernels}) {
      auto t = transport_square(ins, sq, side);
      if (!classify(ins, t).pullback) return "transported square not good: " + show(ins, sq);
      auto back = restore_square(ins, t, side);
      bool ok = side == Side::Kernels
                    ? same_subcomplex(ins, back.left, sq.left) && same_subcomplex(ins, back.right, sq.right)
                    : same_subcomplex(ins, back.top, sq.top) && same_subcomplex(ins, back.bottom, sq.bottom);
      if (!ok) return show(ins, sq);
    }
    return std::nullopt;
  });
}

template <class I>
void axiom_k(const I& ins, Rng& rng, TrialLog& log) {
  auto y = chaingen::random_complex(ins, rng, kLo, kHi, kMax);
  auto f = chaingen::restrict_to(ins, y, chaingen::m_close(ins, y, chaingen::random_masks(ins, rng, y)), MapKind::M);
  auto g = chaingen::restrict_to(ins, y, chaingen::e_close(ins, y, chaingen::random_masks(ins, rng, y)), MapKind::E);
  log.check("K_kernel_cokernel_squares", [&]() -> std::optional<std::string> {
    auto c = coker_chain(ins, f).map;
    auto k = ker_chain(ins, g).map;
    ChainSquare<I> cs{from_empty(ins, c.src, MapKind::M), from_empty(ins, f.src, MapKind::E), c, f};
    ChainSquare<I> ks{from_empty(ins, g.src, MapKind::M), from_empty(ins, k.src, MapKind::E), g, k};
    if (!classify(ins, cs).distinguished) return "cokernel square of " + describe(ins, f.src);
    if (!classify(ins, ks).distinguished) return "kernel square of " + describe(ins, g.src);
    for (int i = y.lo; i <= y.hi; ++i) {
      auto mf = ins.fun(f.at(i)).image_mask(), mc = ins.fun(c.at(i)).image_mask();
      for (std::size_t q = 0; q < mf.size(); ++q)
        if (mf[q] == mc[q]) return "cokernel does not partition degree " + std::to_string(i);
    }
    return std::nullopt;
  });
  bool full = rng.coin(0.3);
  auto h = full ? chaingen::rename(ins, rng, y, MapKind::M) : f;
  log.check("iso_iff_empty_complement", [&]() -> std::optional<std::string> {
    if (is_chain_iso(ins, h) != is_empty_complex(ins, coker_chain(ins, h).obj)) return describe(ins, h.src);
    return std::nullopt;
  });
}

template <class I>
void axiom_gs(const I& ins, Rng& rng, TrialLog& log) {
  auto sq = mixed_square(ins, rng, rng.coin(), rng.coin());
  log.check("GS_direction_independent", [&]() -> std::optional<std::string> {
    if (classify(ins, sq).pullback != classify(ins, transpose(sq)).pullback) return show(ins, sq);
    return std::nullopt;
  });
  auto p = random_pasting(ins, rng, rng.coin());
  log.check("GS_composition", [&]() -> std::optional<std::string> {
    bool l = classify(ins, p.left).pullback, r = classify(ins, p.right).pullback;
    if (l && r && !classify(ins, p.outer).pullback) return "horizontal: " + show(ins, p.outer);
    if (l && r && !classify(ins, transpose(p.outer)).pullback) return "vertical: " + show(ins, p.outer);
    return std::nullopt;
  });
}

template <class I>
void axiom_star(const I& ins, Rng& rng, TrialLog& log) {
  auto w = m_square(ins, rng);
  auto p = star_chain_m(ins, w.top, w.left);
  log.check("PO_good_square_exists", [&]() -> std::optional<std::string> {
    if (!classify(ins, p.square).pullback) return show(ins, p.square);
    return std::nullopt;
  });
  log.check("STAR_comparisons_iso", [&]() -> std::optional<std::string> {
    if (!chain_isomorphic(ins, coker_chain(ins, p.inC).obj, coker_chain(ins, w.top).obj) ||
        !chain_isomorphic(ins, coker_chain(ins, p.inB).obj, coker_chain(ins, w.left).obj))
      return show(ins, w);
    return std::nullopt;
  });
  auto big = star_chain_m(ins, from_empty(ins, w.right.dst, MapKind::M),
                          from_empty(ins, chaingen::random_complex(ins, rng, kLo, kHi, 2), MapKind::M));
  ChainSquare<I> w2{w.top, w.left, compose(ins, big.inB, w.right), compose(ins, big.inB, w.bottom)};
  log.check("STAR_initial", [&]() -> std::optional<std::string> {
    for (const auto& v : {w, w2}) {
      auto m = chain_mediating(ins, p, v.right, v.bottom);
      if (!m || !(compose(ins, *m, p.inB) == v.right) || !(compose(ins, *m, p.inC) == v.bottom))
        return "no mediating map to " + show(ins, v);
    }
    return std::nullopt;
  });
  auto ew = e_square(ins, rng);
  auto ext = extend(ins, rng, ew.right.dst);
  ChainSquare<I> ew2{ew.top, ew.left, compose(ins, ext, ew.right), compose(ins, ext, ew.bottom)};
  log.check("STAR_e_witness_independent", [&]() -> std::optional<std::string> {
    auto s1 = star_chain_e(ins, ew.top, ew.left, ew);
    auto s2 = star_chain_e(ins, ew2.top, ew2.left, ew2);
    if (!classify(ins, s1.square).pullback || !classify(ins, s2.square).pullback) return "not good: " + show(ins, ew);
    if (!chain_isomorphic(ins, s1.obj, s2.obj)) return "witnesses disagree: " + show(ins, ew);
    return std::nullopt;
  });
}

template <class I>
void axiom_pbl(const I& ins, Rng& rng, TrialLog& log) {
  auto p = random_pasting(ins, rng, true);
  log.check("PBL_pullback_lemma", [&]() -> std::optional<std::string> {
    if (classify(ins, p.outer).pullback && classify(ins, p.right).pullback && !classify(ins, p.left).pullback)
      return "horizontal: " + show(ins, p.left);
    auto l = transpose(p.left), r = transpose(p.right), o = transpose(p.outer);
    if (classify(ins, o).pullback && classify(ins, r).pullback && !classify(ins, l).pullback)
      return "vertical: " + show(ins, l);
    return std::nullopt;
  });
}

template <class I>
void axiom_pol(const I& ins, Rng& rng, TrialLog& log) {
  // m-subcomplexes B within D and C of E, A = B n C; the outer square A D C E
  auto e = chaingen::random_complex(ins, rng, kLo, kHi, kMax);
  auto dm = chaingen::m_close(ins, e, chaingen::random_masks(ins, rng, e));
  auto bm = chaingen::m_close(ins, e, chaingen::intersect(chaingen::random_masks(ins, rng, e), dm));
  auto cm = chaingen::random_masks(ins, rng, e);
  if (rng.coin())
    for (std::size_t k = 0; k < cm.size(); ++k) cm[k] = cm[k] & (~dm[k] | bm[k]);
  cm = chaingen::m_close(ins, e, cm);
  auto b = chaingen::restrict_to(ins, e, bm, MapKind::M);
  auto c = chaingen::restrict_to(ins, e, cm, MapKind::M);
  auto d = chaingen::restrict_to(ins, e, dm, MapKind::M);
  auto a = chaingen::restrict_to(ins, e, chaingen::intersect(bm, cm), MapKind::M);
  auto f = between(ins, MapKind::M, e, a, b), g = between(ins, MapKind::M, e, a, c);
  auto bd = between(ins, MapKind::M, e, b, d);
  auto p = star_chain_m(ins, f, g);
  ChainSquare<I> outer{compose(ins, bd, f), g, d, c};
  log.check("POL_pushout_lemma", [&]() -> std::optional<std::string> {
    if (!classify(ins, outer).pullback) return std::nullopt;
    log.count("good_outer_pastings");
    auto m = chain_mediating(ins, p, compose(ins, d, bd), c);
    if (!m) return "no map out of the star-pushout: " + show(ins, outer);
    ChainSquare<I> right{bd, p.inB, d, *m};
    if (!classify(ins, right).pullback) return show(ins, right);
    return std::nullopt;
  });
}

template <class I>
void lemma_completion(const I& ins, Rng& rng, TrialLog& log) {
  // f: A -> B an m-map and g: B -> C an e-map
  auto c = chaingen::random_complex(ins, rng, kLo, kHi, kMax);
  auto bm = chaingen::e_close(ins, c, chaingen::random_masks(ins, rng, c));
  auto g = chaingen::restrict_to(ins, c, bm, MapKind::E);
  auto am = chaingen::m_close(ins, g.src, chaingen::random_masks(ins, rng, g.src));
  auto f = chaingen::restrict_to(ins, g.src, am, MapKind::M);
  log.check("distinguished_completion", [&]() -> std::optional<std::string> {
    auto rest = compose(ins, g, coker_chain(ins, f).map);
    auto bottom = ker_chain(ins, rest).map;
    auto left = induce(ins, MapKind::E, g, f, bottom);
    ChainSquare<I> sq{f, left, g, bottom};
    if (!classify(ins, sq).distinguished) return show(ins, sq);
    // degreewise the new corner is f(A) together with everything outside B
    for (int i = c.lo; i <= c.hi; ++i) {
      auto in_a = ins.fun(ins.compose(g.at(i), f.at(i))).image_mask();
      auto in_b = ins.fun(g.at(i)).image_mask();
      auto got = ins.fun(bottom.at(i)).image_mask();
      for (std::size_t q = 0; q < got.size(); ++q)
        if (got[q] != (in_a[q] || !in_b[q])) return "wrong corner in degree " + std::to_string(i);
    }
    return std::nullopt;
  });
}

template <class I>
void lemma_induced_cokernel(const I& ins, Rng& rng, TrialLog& log) {
  auto y = chaingen::random_complex(ins, rng, kLo, kHi, kMax);
  auto bm = chaingen::m_close(ins, y, chaingen::random_masks(ins, rng, y));
  auto cm = chaingen::m_close(ins, y, chaingen::intersect(chaingen::random_masks(ins, rng, y), bm));
  auto g = chaingen::restrict_to(ins, y, bm, MapKind::M);
  auto gf = chaingen::restrict_to(ins, y, cm, MapKind::M);
  log.check("induced_cokernel_map", [&]() -> std::optional<std::string> {
    auto cg = coker_chain(ins, g).map, cgf = coker_chain(ins, gf).map;
    try {
      auto h = induce(ins, MapKind::E, identity_map(ins, y, MapKind::E), cg, cgf);
      if (!(compose(ins, cgf, h) == cg)) return describe(ins, y);
    } catch (const Error& e) {
      return std::string(e.what()) + ": " + describe(ins, y);
    }
    return std::nullopt;
  });
}

template <class I>
void lemma_iso_reflection(const I& ins, Rng& rng, TrialLog& log) {
  auto sq = mixed_square(ins, rng, rng.coin(0.7), false);
  log.check("iso_reflection", [&]() -> std::optional<std::string> {
    if (is_chain_iso(ins, sq.bottom) && !is_chain_iso(ins, sq.top)) return show(ins, sq);
    if (is_chain_iso(ins, sq.right) && !is_chain_iso(ins, sq.left)) return show(ins, sq);
    return std::nullopt;
  });
}

template <class I>
void lemma_dist_two_of_three(const I& ins, Rng& rng, TrialLog& log) {
  auto p = random_pasting(ins, rng, false);
  log.check("distinguished_two_of_three", [&]() -> std::optional<std::string> {
    int k = classify(ins, p.left).distinguished + classify(ins, p.right).distinguished +
            classify(ins, p.outer).distinguished;
    if (k == 2) return show(ins, p.left) + " || " + show(ins, p.right);
    if (k == 3) log.count("distinguished_pastings");
    return std::nullopt;
  });
}

// Good squares of m-maps are pullbacks of complexes: a cone T over the
// cospan factors uniquely through A.
template <class I>
void lemma_chain_pullback(const I& ins, Rng& rng, TrialLog& log) {
  auto sq = m_square(ins, rng);
  const auto& a = sq.top.src;
  auto t = chaingen::restrict_to(ins, a, chaingen::m_close(ins, a, chaingen::random_masks(ins, rng, a)), MapKind::M);
  log.check("good_squares_are_pullbacks_of_complexes", [&]() -> std::optional<std::string> {
    if (!classify(ins, sq).pullback) return "generator: " + show(ins, sq);
    auto r = chaingen::rename_source(ins, rng, t);
    auto p = compose(ins, sq.top, r), q = compose(ins, sq.left, r);
    ChainMap<I> u{MapKind::M, r.src, a, {}, {}};
    for (int i = a.lo; i <= a.hi; ++i) {
      auto x = ins.factor(p.at(i), sq.top.at(i));
      auto xb = ins.factor(p.bar(i), sq.top.bar(i));
      if (!x || !xb) return "cone does not factor: " + show(ins, sq);
      u.f.push_back(*x);
      u.fbar.push_back(*xb);
    }
    try {
      u = validate_map(ins, u);
    } catch (const Error& e) {
      return std::string(e.what());
    }
    if (!(compose(ins, sq.left, u) == q) || !(compose(ins, sq.top, u) == p)) return show(ins, sq);
    return std::nullopt;
  });
}

}  // namespace ecgw::chaincgw

namespace ecgw {

template <class I>
void chain_cgw_trial(const I& ins, Rng& rng, TrialLog& log) {
  chaincgw::axiom_z(ins, rng, log);
  chaincgw::axiom_m(ins, rng, log);
  chaincgw::axiom_g(ins, rng, log);
  chaincgw::axiom_d(ins, rng, log);
  chaincgw::axiom_k(ins, rng, log);
  chaincgw::axiom_gs(ins, rng, log);
  chaincgw::axiom_star(ins, rng, log);
  chaincgw::axiom_pbl(ins, rng, log);
  chaincgw::axiom_pol(ins, rng, log);
  chaincgw::lemma_completion(ins, rng, log);
  chaincgw::lemma_induced_cokernel(ins, rng, log);
  chaincgw::lemma_iso_reflection(ins, rng, log);
  chaincgw::lemma_dist_two_of_three(ins, rng, log);
  chaincgw::lemma_chain_pullback(ins, rng, log);
}

template <class I>
AuditReport chain_cgw_audit(const I& ins, std::size_t trials, std::uint64_t seed, unsigned threads = 1) {
  return run_trials("chain-cgw", "chain(" + ins.name() + ")", trials, seed, threads,
                    [&](std::size_t, Rng& rng, TrialLog& log) { chain_cgw_trial(ins, rng, log); });
}

}  // namespace ecgw

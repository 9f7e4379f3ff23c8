#pragma once

#include <string>

#include "ecgw/audit.hpp"
#include "ecgw/cgw.hpp"
#include "ecgw/gen.hpp"

namespace ecgw {

namespace checks {

using gen::Mask;
using gen::operator&;
using gen::operator|;
using gen::operator~;

inline constexpr std::size_t kMaxSize = 8;

template <class I>
std::string show(const I& ins, const typename I::Mor& f) {
  return to_string(ins.fun(f));
}

// Coproduct inclusions are monic with empty pairwise pullback and jointly cover.
template <class I>
void extensive_coproducts(const I& ins, Rng& rng, TrialLog& log) {
  auto a = ins.random_object(rng, kMaxSize / 2);
  auto b = ins.random_object(rng, kMaxSize / 2);
  auto c = ins.coproduct(a, b);
  log.check("extensive_coproduct_disjoint", [&]() -> std::optional<std::string> {
    auto p = ins.pullback(c.inl, c.inr);
    auto ml = ins.fun(c.inl).image_mask(), mr = ins.fun(c.inr).image_mask();
    bool cover = true;
    for (std::size_t i = 0; i < ml.size(); ++i) cover = cover && (ml[i] != mr[i]);
    if (!ins.carrier(p.obj).empty() || !cover || !ins.is_coproduct_inclusion(c.inl) ||
        !ins.is_coproduct_inclusion(c.inr) || !ins.fun(c.inl).injective() || !ins.fun(c.inr).injective())
      return show(ins, c.inl) + " / " + show(ins, c.inr);
    return std::nullopt;
  });
}

// Any map into A+B splits its domain along the two pullbacks.
template <class I>
void extensive_decomposition(const I& ins, Rng& rng, TrialLog& log) {
  auto a = ins.random_object(rng, kMaxSize / 2);
  auto b = ins.random_object(rng, kMaxSize / 2);
  auto c = ins.coproduct(a, b);
  const auto& target = ins.carrier(c.obj);
  std::optional<typename I::Mor> h;
  if (!target.empty()) {
    for (int attempt = 0; attempt < 50 && !h; ++attempt) {
      auto x = ins.random_object(rng, kMaxSize);
      std::vector<std::size_t> m(ins.carrier(x).size());
      for (auto& v : m) v = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(target.size()) - 1));
      try {
        h = ins.lift(x, c.obj, SetFun(ins.carrier(x), target, m));
      } catch (const Error&) {
      }
    }
  }
  if (!h) h = initial_map(ins, c.obj);
  log.check("extensive_decomposition", [&]() -> std::optional<std::string> {
    auto y = ins.pullback(*h, c.inl);
    auto z = ins.pullback(*h, c.inr);
    auto split = ins.coproduct(y.obj, z.obj);
    auto cmp = ins.copair(split, y.p1, z.p1);
    if (!ins.fun(cmp).bijective()) return show(ins, *h);
    return std::nullopt;
  });
}

// If f and f.g are coproduct inclusions then so is g.
template <class I>
void extensive_left_cancellation(const I& ins, Rng& rng, TrialLog& log) {
  auto z = ins.random_object(rng, kMaxSize);
  Mask my = gen::summand(ins, rng, z);
  auto f = gen::embed(ins, rng, z, my);
  auto y = ins.dom(f);
  Mask mx = ins.random_closed(rng, y);
  auto g = gen::embed(ins, rng, y, mx);
  auto fg = ins.compose(f, g);
  log.check("extensive_left_cancellation", [&]() -> std::optional<std::string> {
    if (ins.is_coproduct_inclusion(fg) && !ins.is_coproduct_inclusion(g)) return show(ins, g) + " then " + show(ins, f);
    return std::nullopt;
  });
}

// complement is an involution on coproduct inclusions and refuses other monos.
template <class I>
void complement_behaviour(const I& ins, Rng& rng, TrialLog& log) {
  auto f = gen::random_inclusion(ins, rng, kMaxSize);
  log.check("complement_involution", [&]() -> std::optional<std::string> {
    auto cc = ins.complement(ins.complement(f));
    if (!same_subobject(ins, cc, f)) return show(ins, f);
    return std::nullopt;
  });
  auto x = ins.random_object(rng, kMaxSize);
  auto g = gen::embed(ins, rng, x, ins.random_closed(rng, x));
  log.check("complement_refusal", [&]() -> std::optional<std::string> {
    if (ins.is_coproduct_inclusion(g)) {
      ins.complement(g);
      return std::nullopt;
    }
    try {
      ins.complement(g);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::NotCoproductInclusion) {
        log.count("complement_refusals");
        return std::nullopt;
      }
      throw;
    }
    return "complement accepted " + show(ins, g);
  });
}

template <class I>
void axiom_z(const I& ins, Rng& rng, TrialLog& log) {
  auto x = ins.random_object(rng, kMaxSize);
  log.check("Z_shared_initial", [&]() -> std::optional<std::string> {
    auto o = ins.initial();
    auto z = initial_map(ins, x);
    if (!ins.carrier(o).empty() || !(ins.dom(z) == o) || !ins.is_coproduct_inclusion(z) ||
        !ins.fun(ins.complement(z)).bijective() || !(initial_map(ins, o) == ins.identity(o)))
      return "initial map into " + to_string(ins.carrier(x));
    return std::nullopt;
  });
}

template <class I>
void axiom_m(const I& ins, Rng& rng, TrialLog& log) {
  auto f = gen::random_inclusion(ins, rng, kMaxSize);
  const auto& a = ins.carrier(ins.dom(f));
  auto x = ins.random_object(rng, 4);
  const auto& xs = ins.carrier(x);
  log.check("M_monic", [&]() -> std::optional<std::string> {
    if (!ins.fun(f).injective()) return show(ins, f);
    if (a.empty()) return std::nullopt;
    std::vector<std::size_t> g(xs.size()), h(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      g[i] = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(a.size()) - 1));
      h[i] = rng.coin() ? g[i] : static_cast<std::size_t>(rng.uniform(0, static_cast<int>(a.size()) - 1));
    }
    SetFun gf(xs, a, g), hf(xs, a, h);
    if (compose(ins.fun(f), gf) == compose(ins.fun(f), hf) && !(gf == hf)) return show(ins, f);
    return std::nullopt;
  });
}

// Comparison with the instance's own pullback, independent of classify().
template <class I>
bool pullback_by_construction(const I& ins, const Square<I>& s) {
  if (!classify(ins, s).commutes) return false;
  auto p = ins.pullback(s.right, s.bottom);
  const auto& P = ins.carrier(p.obj);
  const auto &t = ins.fun(s.top), &l = ins.fun(s.left);
  std::vector<std::size_t> m;
  for (std::size_t a = 0; a < t.dom().size(); ++a) {
    auto k = P.index_of(pair_token(t.cod()[t.at(a)], l.cod()[l.at(a)]));
    if (!k) return false;
    m.push_back(*k);
  }
  return SetFun(t.dom(), P, m).bijective();
}

template <class I>
void axiom_g(const I& ins, Rng& rng, TrialLog& log) {
  // weak triangle: top is an isomorphism, B inside C
  auto u = ins.random_object(rng, kMaxSize);
  Mask b = gen::summand(ins, rng, u);
  Mask c = b | gen::summand(ins, rng, u);
  auto e = gen::embed_all(ins, rng, u, {b, b, c, gen::all(ins.carrier(u).size())});
  auto tri = gen::square_of(ins, e, 0, 1, 2, 3);
  log.check("G_weak_triangles_good", [&]() -> std::optional<std::string> {
    if (!classify(ins, tri).pullback || !classify(ins, transpose(tri)).pullback) return to_string(ins, tri);
    return std::nullopt;
  });
  auto sq = gen::random_square(ins, rng, kMaxSize, rng.coin() ? gen::SquareKind::Pullback : gen::SquareKind::Loose);
  log.check("G_good_are_pullbacks", [&]() -> std::optional<std::string> {
    if (classify(ins, sq).pullback != pullback_by_construction(ins, sq)) return to_string(ins, sq);
    return std::nullopt;
  });
}

template <class I>
void axiom_d(const I& ins, Rng& rng, TrialLog& log) {
  auto sq = gen::random_square(ins, rng, kMaxSize, rng.coin() ? gen::SquareKind::Distinguished : gen::SquareKind::Pullback);
  log.check("D_kernel_cokernel_agree", [&]() -> std::optional<std::string> {
    bool k = kernel_map_iso(ins, sq), c = cokernel_map_iso(ins, sq), d = classify(ins, sq).distinguished;
    if (k != c || k != d) return to_string(ins, sq);
    return std::nullopt;
  });
  log.check("D_k_c_round_trip", [&]() -> std::optional<std::string> {
    auto kk = k_square(ins, k_square(ins, sq));
    auto cc = c_square(ins, c_square(ins, sq));
    if (!classify(ins, k_square(ins, sq)).pullback || !classify(ins, c_square(ins, sq)).pullback)
      return "transported square not good: " + to_string(ins, sq);
    if (!same_subobject(ins, kk.left, sq.left) || !same_subobject(ins, kk.right, sq.right) ||
        !same_subobject(ins, cc.top, sq.top) || !same_subobject(ins, cc.bottom, sq.bottom))
      return to_string(ins, sq);
    return std::nullopt;
  });
}

template <class I>
void axiom_k(const I& ins, Rng& rng, TrialLog& log) {
  auto f = gen::random_inclusion(ins, rng, kMaxSize);
  log.check("K_kernel_cokernel_squares", [&]() -> std::optional<std::string> {
    auto c = cokernel(ins, f);
    auto k = kernel(ins, f);
    if (!classify(ins, c.square).distinguished || !classify(ins, k.square).distinguished) return show(ins, f);
    // the complement must be exactly the part of the target missed by f
    auto mf = ins.fun(f).image_mask(), mc = ins.fun(c.map).image_mask();
    for (std::size_t i = 0; i < mf.size(); ++i)
      if (mf[i] == mc[i]) return "complement overlaps or misses: " + show(ins, f) + " vs " + show(ins, c.map);
    return std::nullopt;
  });
  auto g = rng.coin() ? gen::random_iso(ins, rng, kMaxSize) : gen::random_inclusion(ins, rng, kMaxSize);
  log.check("iso_iff_empty_complement", [&]() -> std::optional<std::string> {
    bool iso = ins.fun(g).bijective();
    bool empty = ins.carrier(ins.dom(ins.complement(g))).empty();
    if (iso != empty) return show(ins, g);
    return std::nullopt;
  });
}

template <class I>
void axiom_gs(const I& ins, Rng& rng, TrialLog& log) {
  auto sq = gen::random_square(ins, rng, kMaxSize, rng.coin() ? gen::SquareKind::Pullback : gen::SquareKind::Loose);
  log.check("GS_direction_independent", [&]() -> std::optional<std::string> {
    if (classify(ins, sq).pullback != classify(ins, transpose(sq)).pullback) return to_string(ins, sq);
    return std::nullopt;
  });
  // two good squares side by side: A B E over C D F inside F
  auto u = ins.random_object(rng, kMaxSize);
  std::size_t n = ins.carrier(u).size();
  Mask d = gen::summand(ins, rng, u);
  Mask e = gen::summand(ins, rng, u);
  Mask b = d & e;
  Mask c = gen::summand(ins, rng, u, d);
  Mask a = b & c;
  auto emb = gen::embed_all(ins, rng, u, {a, b, e, c, d, gen::all(n)});
  auto left = gen::square_of(ins, emb, 0, 1, 3, 4);
  auto right = gen::square_of(ins, emb, 1, 2, 4, 5);
  Square<I> outer{ins.compose(right.top, left.top), left.left, right.right, ins.compose(right.bottom, left.bottom)};
  log.check("GS_composition", [&]() -> std::optional<std::string> {
    bool l = classify(ins, left).pullback, r = classify(ins, right).pullback, o = classify(ins, outer).pullback;
    if (l && r && !o) return "horizontal: " + to_string(ins, outer);
    auto lt = transpose(left), rt = transpose(right), ot = transpose(outer);
    if (classify(ins, lt).pullback && classify(ins, rt).pullback && !classify(ins, ot).pullback)
      return "vertical: " + to_string(ins, ot);
    return std::nullopt;
  });
}

template <class I>
void axiom_star(const I& ins, Rng& rng, TrialLog& log) {
  auto u = ins.random_object(rng, kMaxSize);
  auto masks = gen::square_masks(ins, rng, u, gen::SquareKind::Pullback);
  auto e = gen::embed_all(ins, rng, u, masks);
  auto witness = gen::square_of(ins, e, 0, 1, 2, 3);
  auto p = star_m(ins, witness.top, witness.left);
  log.check("PO_good_square_exists", [&]() -> std::optional<std::string> {
    if (!classify(ins, p.square).pullback) return to_string(ins, p.square);
    return std::nullopt;
  });
  log.check("STAR_comparisons_iso", [&]() -> std::optional<std::string> {
    auto [cb, cc] = star_comparisons(ins, p);
    if (!cb || !cc || !ins.fun(*cb).bijective() || !ins.fun(*cc).bijective()) return to_string(ins, p.square);
    return std::nullopt;
  });
  // a second good square under the same span, with an enlarged target
  auto extra = ins.random_object(rng, 3);
  auto big = ins.coproduct(ins.cod(witness.right), extra);
  Square<I> w2{witness.top, witness.left, ins.compose(big.inl, witness.right), ins.compose(big.inl, witness.bottom)};
  log.check("STAR_initial", [&]() -> std::optional<std::string> {
    for (const auto& w : {witness, w2}) {
      auto m = mediating(ins, p, w.right, w.bottom);
      if (!m || !ins.is_coproduct_inclusion(*m) || !(ins.compose(*m, p.inB) == w.right) ||
          !(ins.compose(*m, p.inC) == w.bottom))
        return "no mediating map to " + to_string(ins, w);
    }
    // uniqueness: the two legs jointly cover the star-pushout
    auto mb = ins.fun(p.inB).image_mask(), mc = ins.fun(p.inC).image_mask();
    for (std::size_t i = 0; i < mb.size(); ++i)
      if (!mb[i] && !mc[i]) return "legs do not cover " + to_string(ins.carrier(p.obj));
    return std::nullopt;
  });
}

// Pasting A B C over A' B' C' (top row m, columns e), right square a pullback.
template <class I>
struct Pasting {
  Square<I> left, right, outer;
};

template <class I>
Pasting<I> random_pasting(const I& ins, Rng& rng, bool force_left_pullback, bool cover_bias) {
  auto u = ins.random_object(rng, kMaxSize);
  std::size_t n = ins.carrier(u).size();
  Mask c2 = gen::all(n);
  Mask b2 = gen::summand(ins, rng, u);
  Mask a2 = gen::summand(ins, rng, u, b2);
  Mask c = gen::summand(ins, rng, u);
  if (cover_bias && rng.coin()) c = c | ~b2;
  Mask b = c & b2;
  Mask a = force_left_pullback ? (b & a2) : gen::summand(ins, rng, u, b & a2);
  if (cover_bias && rng.coin()) a = b & a2;
  auto e = gen::embed_all(ins, rng, u, {a, b, c, a2, b2, c2});
  Pasting<I> p;
  p.left = gen::square_of(ins, e, 0, 1, 3, 4);
  p.right = gen::square_of(ins, e, 1, 2, 4, 5);
  p.outer = {ins.compose(p.right.top, p.left.top), p.left.left, p.right.right,
             ins.compose(p.right.bottom, p.left.bottom)};
  return p;
}

template <class I>
void axiom_pbl(const I& ins, Rng& rng, TrialLog& log) {
  auto p = random_pasting(ins, rng, rng.coin(), false);
  log.check("PBL_pullback_lemma", [&]() -> std::optional<std::string> {
    if (classify(ins, p.outer).pullback && classify(ins, p.right).pullback && !classify(ins, p.left).pullback)
      return "horizontal: " + to_string(ins, p.left);
    auto l = transpose(p.left), r = transpose(p.right), o = transpose(p.outer);
    if (classify(ins, o).pullback && classify(ins, r).pullback && !classify(ins, l).pullback)
      return "vertical: " + to_string(ins, l);
    return std::nullopt;
  });
}

template <class I>
void axiom_pol(const I& ins, Rng& rng, TrialLog& log) {
  // inside E: B within D, A = B n C; the outer square A D C E is good iff D n C = A
  auto u = ins.random_object(rng, kMaxSize);
  std::size_t n = ins.carrier(u).size();
  Mask d = gen::summand(ins, rng, u);
  Mask b = gen::summand(ins, rng, u, d);
  Mask c = rng.coin() ? (gen::summand(ins, rng, u, ~d) | gen::summand(ins, rng, u, b))
                      : (gen::summand(ins, rng, u, ~b) | gen::summand(ins, rng, u, b));
  Mask a = b & c;
  auto e = gen::embed_all(ins, rng, u, {a, b, c, d, gen::all(n)});
  auto f = e.map(ins, 0, 1), g = e.map(ins, 0, 2);
  auto p = star_m(ins, f, g);
  auto bd = e.map(ins, 1, 3), de = e.map(ins, 3, 4), ce = e.map(ins, 2, 4);
  Square<I> outer{ins.compose(bd, f), g, de, ce};
  log.check("POL_pushout_lemma", [&]() -> std::optional<std::string> {
    if (!classify(ins, outer).pullback) return std::nullopt;
    auto m = mediating(ins, p, ins.compose(de, bd), ce);
    if (!m) return "no map out of the star-pushout: " + to_string(ins, outer);
    Square<I> right{bd, p.inB, de, *m};
    if (!classify(ins, right).pullback) return to_string(ins, right);
    return std::nullopt;
  });
}

template <class I>
void lemma_completion(const I& ins, Rng& rng, TrialLog& log) {
  auto u = ins.random_object(rng, kMaxSize);
  std::size_t n = ins.carrier(u).size();
  Mask b = gen::summand(ins, rng, u);
  Mask a = gen::summand(ins, rng, u, b);
  auto e = gen::embed_all(ins, rng, u, {a, b, gen::all(n)});
  auto f = e.map(ins, 0, 1), g = e.map(ins, 1, 2);
  log.check("distinguished_completion", [&]() -> std::optional<std::string> {
    auto sq = complete_distinguished(ins, f, g);
    if (!classify(ins, sq).distinguished) return to_string(ins, sq);
    auto mirror = complete_distinguished_mirror(ins, f, g);
    if (!classify(ins, mirror).distinguished) return "mirror: " + to_string(ins, mirror);
    // every distinguished completion inside C is the constructed one
    auto want = ins.fun(sq.bottom).image_mask();
    const auto& cod = ins.cod(g);
    auto gf = ins.compose(g, f);
    for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
      Mask m(n);
      for (std::size_t i = 0; i < n; ++i) m[i] = (bits >> i) & 1;
      if (!ins.closed(cod, m)) continue;
      auto inc = ins.sub(cod, m);
      if (!ins.is_coproduct_inclusion(inc)) continue;
      auto left = ins.factor(gf, inc);
      if (!left) continue;
      if (classify(ins, Square<I>{f, *left, g, inc}).distinguished && m != want)
        return "second completion " + to_string(ins.carrier(ins.dom(inc)));
    }
    return std::nullopt;
  });
}

template <class I>
void lemma_induced_cokernel(const I& ins, Rng& rng, TrialLog& log) {
  auto u = ins.random_object(rng, kMaxSize);
  std::size_t n = ins.carrier(u).size();
  Mask b = gen::summand(ins, rng, u);
  Mask c = gen::summand(ins, rng, u, b);
  auto e = gen::embed_all(ins, rng, u, {c, b, gen::all(n)});
  auto f = e.map(ins, 0, 1), g = e.map(ins, 1, 2);
  log.check("induced_cokernel_map", [&]() -> std::optional<std::string> {
    auto cg = ins.complement(g);
    auto cgf = ins.complement(ins.compose(g, f));
    auto h = ins.factor(cg, cgf);
    if (!h || !ins.is_coproduct_inclusion(*h) || !(ins.compose(cgf, *h) == cg)) return show(ins, f) + " ; " + show(ins, g);
    return std::nullopt;
  });
}

template <class I>
void lemma_iso_reflection(const I& ins, Rng& rng, TrialLog& log) {
  auto u = ins.random_object(rng, kMaxSize);
  std::size_t n = ins.carrier(u).size();
  Mask b = gen::summand(ins, rng, u);
  Mask c = rng.coin() ? gen::all(n) : gen::summand(ins, rng, u);
  auto e = gen::embed_all(ins, rng, u, {b & c, b, c, gen::all(n)});
  auto sq = gen::square_of(ins, e, 0, 1, 2, 3);
  log.check("iso_reflection", [&]() -> std::optional<std::string> {
    if (!classify(ins, sq).pullback) return "generator: " + to_string(ins, sq);
    if (ins.fun(sq.bottom).bijective() && !ins.fun(sq.top).bijective()) return to_string(ins, sq);
    if (ins.fun(sq.right).bijective() && !ins.fun(sq.left).bijective()) return to_string(ins, sq);
    return std::nullopt;
  });
}

template <class I>
void lemma_dist_two_of_three(const I& ins, Rng& rng, TrialLog& log) {
  auto p = random_pasting(ins, rng, true, true);
  log.check("distinguished_two_of_three", [&]() -> std::optional<std::string> {
    for (bool vertical : {false, true}) {
      auto l = vertical ? transpose(p.left) : p.left;
      auto r = vertical ? transpose(p.right) : p.right;
      auto o = vertical ? transpose(p.outer) : p.outer;
      int k = classify(ins, l).distinguished + classify(ins, r).distinguished + classify(ins, o).distinguished;
      if (k == 2) return to_string(ins, l) + " | " + to_string(ins, r);
    }
    return std::nullopt;
  });
}

template <class I>
void lemma_mixed_pullback(const I& ins, Rng& rng, TrialLog& log) {
  auto u = ins.random_object(rng, kMaxSize);
  std::size_t n = ins.carrier(u).size();
  Mask b = gen::summand(ins, rng, u), c = gen::summand(ins, rng, u);
  auto e = gen::embed_all(ins, rng, u, {b & c, b, c, gen::all(n)});
  auto sub_sq = gen::square_of(ins, e, 0, 1, 2, 3);
  log.check("mixed_pullback_unique", [&]() -> std::optional<std::string> {
    auto p = ins.pullback(sub_sq.right, sub_sq.bottom);
    Square<I> built{p.p1, p.p2, sub_sq.right, sub_sq.bottom};
    if (!classify(ins, built).pullback || !classify(ins, sub_sq).pullback) return to_string(ins, sub_sq);
    auto via = ins.factor(ins.compose(sub_sq.right, sub_sq.top), ins.compose(sub_sq.right, p.p1));
    if (!via || !ins.fun(*via).bijective() || !(ins.compose(p.p1, *via) == sub_sq.top) ||
        !(ins.compose(p.p2, *via) == sub_sq.left))
      return to_string(ins, sub_sq);
    return std::nullopt;
  });
}

}  // namespace checks

template <class I>
void cgw_trial(const I& ins, Rng& rng, TrialLog& log) {
  checks::extensive_coproducts(ins, rng, log);
  checks::extensive_decomposition(ins, rng, log);
  checks::extensive_left_cancellation(ins, rng, log);
  checks::complement_behaviour(ins, rng, log);
  checks::axiom_z(ins, rng, log);
  checks::axiom_m(ins, rng, log);
  checks::axiom_g(ins, rng, log);
  checks::axiom_d(ins, rng, log);
  checks::axiom_k(ins, rng, log);
  checks::axiom_gs(ins, rng, log);
  checks::axiom_star(ins, rng, log);
  checks::axiom_pbl(ins, rng, log);
  checks::axiom_pol(ins, rng, log);
  checks::lemma_completion(ins, rng, log);
  checks::lemma_induced_cokernel(ins, rng, log);
  checks::lemma_iso_reflection(ins, rng, log);
  checks::lemma_dist_two_of_three(ins, rng, log);
  checks::lemma_mixed_pullback(ins, rng, log);
}

template <class I>
AuditReport audit(const I& ins, std::size_t trials, std::uint64_t seed, unsigned threads = 1) {
  return run_trials("cgw", ins.name(), trials, seed, threads,
                    [&](std::size_t, Rng& rng, TrialLog& log) { cgw_trial(ins, rng, log); });
}

}  // namespace ecgw

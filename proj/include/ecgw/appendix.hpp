#pragma once

#include <string>

#include "ecgw/audit.hpp"
#include "ecgw/axioms.hpp"
#include "ecgw/cgw.hpp"
#include "ecgw/gen.hpp"

// Randomised checks of the finer behaviour of star-pushouts: uniqueness,
// composition, induced maps between pushouts, southern squares and cubes.
namespace ecgw {

namespace checks {

template <class I>
void pushout_uniqueness(const I& ins, Rng& rng, TrialLog& log) {
  auto sq = gen::random_square(ins, rng, kMaxSize, rng.coin() ? gen::SquareKind::Distinguished : gen::SquareKind::Pullback);
  log.check("pushout_uniqueness", [&]() -> std::optional<std::string> {
    auto p = star_m(ins, sq.top, sq.left);
    auto u = mediating(ins, p, sq.right, sq.bottom);
    if (!u) return "no mediating map: " + to_string(ins, sq);
    bool cok_iso = cokernel_map_iso(ins, sq);
    if (cok_iso) log.count("pushout_uniqueness_iso_cases");
    if (cok_iso != ins.fun(*u).bijective()) return to_string(ins, sq);
    return std::nullopt;
  });
}

template <class I>
void pushout_composition(const I& ins, Rng& rng, TrialLog& log) {
  auto u = ins.random_object(rng, kMaxSize);
  Mask b2 = gen::summand(ins, rng, u);
  Mask b = gen::summand(ins, rng, u, b2);
  Mask a = gen::summand(ins, rng, u, b);
  Mask c = a | gen::summand(ins, rng, u);
  auto e = gen::embed_all(ins, rng, u, {a, b, b2, c});
  auto f = e.map(ins, 0, 1), h = e.map(ins, 1, 2), g = e.map(ins, 0, 3);
  log.check("pushout_composition", [&]() -> std::optional<std::string> {
    auto p = star_m(ins, f, g);
    auto q = star_m(ins, h, p.inB);
    auto r = star_m(ins, ins.compose(h, f), g);
    auto m = mediating(ins, r, q.inB, ins.compose(q.inC, p.inC));
    if (!m || !ins.fun(*m).bijective()) return show(ins, f) + " ; " + show(ins, h) + " ; " + show(ins, g);
    return std::nullopt;
  });
}

// Two m-spans B <- A -> C and B' <- A' -> C' with maps A->A', B->B', C->C'.
template <class I>
struct SpanMap {
  typename I::Mor f, g, f2, g2, a, b, c;
};

template <class I>
SpanMap<I> span_map_of(const I& ins, const gen::Embedded<I>& e) {
  // vertices: 0 A, 1 B, 2 C, 3 A', 4 B', 5 C'
  return {e.map(ins, 0, 1), e.map(ins, 0, 2), e.map(ins, 3, 4), e.map(ins, 3, 5),
          e.map(ins, 0, 3), e.map(ins, 1, 4), e.map(ins, 2, 5)};
}

template <class I>
void induced_m_map(const I& ins, Rng& rng, TrialLog& log) {
  auto u = ins.random_object(rng, kMaxSize);
  Mask b2 = gen::summand(ins, rng, u), c2 = gen::summand(ins, rng, u);
  Mask a2 = gen::summand(ins, rng, u, b2 & c2);
  Mask b = gen::summand(ins, rng, u, b2);
  Mask a = b & a2;
  Mask c = rng.coin() ? (a | gen::summand(ins, rng, u, c2 & ~a2)) : (a | gen::summand(ins, rng, u, c2));
  auto e = gen::embed_all(ins, rng, u, {a, b, c, a2, b2, c2});
  auto s = span_map_of(ins, e);
  log.check("induced_m_map", [&]() -> std::optional<std::string> {
    Square<I> top{s.f, s.a, s.b, s.f2};
    Square<I> side{s.g, s.a, s.c, s.g2};
    if (!classify(ins, top).pullback) return "generator: top face not good";
    auto p = star_m(ins, s.f, s.g);
    auto p2 = star_m(ins, s.f2, s.g2);
    auto sigma = mediating(ins, p, ins.compose(p2.inB, s.b), ins.compose(p2.inC, s.c));
    if (!sigma || !ins.is_coproduct_inclusion(*sigma)) return "no induced m-map: " + to_string(ins, top);
    Square<I> bottom{s.c, p.inC, p2.inC, *sigma};
    if (!classify(ins, bottom).pullback) return "bottom square not good: " + to_string(ins, bottom);
    if (classify(ins, side).pullback) {
      log.count("induced_m_map_all_faces_good");
      Square<I> other{s.b, p.inB, p2.inB, *sigma};
      if (!classify(ins, other).pullback) return "created square not good: " + to_string(ins, other);
    }
    return std::nullopt;
  });
}

template <class I>
void induced_e_map(const I& ins, Rng& rng, TrialLog& log) {
  auto u = ins.random_object(rng, kMaxSize);
  Mask b2 = gen::summand(ins, rng, u), c2 = gen::summand(ins, rng, u);
  Mask a2 = gen::summand(ins, rng, u, b2 & c2);
  Mask a = gen::summand(ins, rng, u, a2);
  Mask b = a | (rng.coin() ? (b2 & ~a2) : gen::summand(ins, rng, u, b2 & ~a2));
  Mask c = a | (rng.coin() ? (c2 & ~a2) : gen::summand(ins, rng, u, c2 & ~a2));
  auto e = gen::embed_all(ins, rng, u, {a, b, c, a2, b2, c2});
  auto s = span_map_of(ins, e);
  log.check("induced_e_map", [&]() -> std::optional<std::string> {
    // m-spans in each row, e-maps a, b, c between the rows
    Square<I> face_b{s.f, s.a, s.b, s.f2};
    Square<I> face_c{s.g, s.a, s.c, s.g2};
    if (!classify(ins, face_b).pullback || !classify(ins, face_c).pullback) return "generator: faces not pullbacks";
    auto p = star_m(ins, s.f, s.g);
    auto p2 = star_m(ins, s.f2, s.g2);
    auto sigma = mediating(ins, p, ins.compose(p2.inB, s.b), ins.compose(p2.inC, s.c));
    if (!sigma || !ins.is_coproduct_inclusion(*sigma)) return "no induced e-map";
    Square<I> qb{p.inB, s.b, *sigma, p2.inB};
    Square<I> qc{p.inC, s.c, *sigma, p2.inC};
    auto cb = classify(ins, qb), cc = classify(ins, qc);
    if (!cb.pullback || !cc.pullback) return "created square not pseudo-commutative: " + to_string(ins, qb);
    if (classify(ins, face_b).distinguished) {
      log.count("induced_e_map_distinguished_cases");
      if (!cc.distinguished) return "parallel square not distinguished: " + to_string(ins, qc);
    }
    if (classify(ins, face_c).distinguished && !cb.distinguished)
      return "parallel square not distinguished: " + to_string(ins, qb);
    return std::nullopt;
  });
}

template <class I>
void southern_cokernel(const I& ins, Rng& rng, TrialLog& log) {
  auto sq = gen::random_square(ins, rng, kMaxSize, rng.coin() ? gen::SquareKind::Distinguished : gen::SquareKind::Pullback);
  log.check("southern_cokernel", [&]() -> std::optional<std::string> {
    auto p = star_m(ins, sq.top, sq.left);
    auto u = mediating(ins, p, sq.right, sq.bottom);
    if (!u) return "no mediating map: " + to_string(ins, sq);
    auto rest = ins.complement(*u);
    auto mu = ins.fun(*u).image_mask(), mr = ins.fun(rest).image_mask();
    for (std::size_t i = 0; i < mu.size(); ++i)
      if (mu[i] == mr[i]) return "not a kernel-cokernel pair: " + to_string(ins, sq);
    // the same object arises as the cokernel of B/A -> D/C
    auto t = c_square(ins, sq).left;
    auto kdc = ins.complement(sq.bottom);
    auto bullet = ins.compose(kdc, ins.complement(t));
    if (!same_subobject(ins, bullet, rest)) return "cokernel mismatch: " + to_string(ins, sq);
    return std::nullopt;
  });
}

// Intersection-closed cube of summands: choose the three vertices next to
// the top and intersect downwards; every face is then a pullback.
template <class I>
Cube<I> random_good_cube(const I& ins, Rng& rng) {
  auto u = ins.random_object(rng, kMaxSize);
  std::size_t n = ins.carrier(u).size();
  std::array<Mask, 8> m;
  m[7] = gen::all(n);
  m[6] = gen::summand(ins, rng, u);
  m[5] = gen::summand(ins, rng, u);
  m[3] = gen::summand(ins, rng, u);
  m[4] = m[5] & m[6];
  m[2] = m[3] & m[6];
  m[1] = m[3] & m[5];
  m[0] = m[1] & m[2] & m[4];
  auto e = gen::embed_all(ins, rng, u, std::vector<Mask>(m.begin(), m.end()));
  Cube<I> c;
  for (int v = 0; v < 8; ++v) c.obj[v] = ins.dom(e.at[v]);
  for (int k = 0; k < 3; ++k)
    for (int v = 0; v < 8; ++v)
      if (!(v & (1 << k))) c.edge[k][v] = e.map(ins, v, v | (1 << k));
  return c;
}

// m-m-e cube: a good square of summands on the far face and, below it, the
// preimages of one summand of its top corner.
template <class I>
Cube<I> random_mme_cube(const I& ins, Rng& rng, int k) {
  auto u = ins.random_object(rng, kMaxSize);
  std::size_t n = ins.carrier(u).size();
  int i = k == 0 ? 1 : 0, j = k == 2 ? 1 : 2;
  int ek = 1 << k, ei = 1 << i, ej = 1 << j;
  std::array<Mask, 8> m;
  m[ek | ei | ej] = gen::all(n);
  m[ek | ei] = gen::summand(ins, rng, u);
  m[ek | ej] = gen::summand(ins, rng, u);
  if (rng.coin()) m[ek | ej] = m[ek | ej] | ~m[ek | ei];
  m[ek] = m[ek | ei] & m[ek | ej];
  Mask z = gen::summand(ins, rng, u);
  for (int v : {0, ei, ej, ei | ej}) m[v] = m[v | ek] & z;
  auto e = gen::embed_all(ins, rng, u, std::vector<Mask>(m.begin(), m.end()));
  Cube<I> c;
  for (int v = 0; v < 8; ++v) c.obj[v] = ins.dom(e.at[v]);
  for (int a = 0; a < 3; ++a)
    for (int v = 0; v < 8; ++v)
      if (!(v & (1 << a))) c.edge[a][v] = e.map(ins, v, v | (1 << a));
  return c;
}

template <class I>
std::optional<std::string> faces_pullback(const I& ins, const Cube<I>& c) {
  for (const auto& f : faces(c))
    if (!classify(ins, f).pullback) return "face not good or pseudo-commutative: " + to_string(ins, f);
  return std::nullopt;
}

// Each path of length two into the far vertex of the cube, as a subobject.
template <class I>
bool same_cube(const I& ins, const Cube<I>& x, const Cube<I>& y, int k) {
  int ek = 1 << k;
  for (int v = 0; v < 8; ++v) {
    if (v & ek) continue;
    if (!same_subobject(ins, x.e(k, v), y.e(k, v))) return false;
    for (int a = 0; a < 3; ++a) {
      if (a == k || (v & (1 << a))) continue;
      auto px = ins.compose(x.e(k, v | (1 << a)), x.e(a, v));
      auto py = ins.compose(y.e(k, v | (1 << a)), y.e(a, v));
      if (!same_subobject(ins, px, py)) return false;
    }
  }
  return true;
}

template <class I>
void cube_correspondence(const I& ins, Rng& rng, TrialLog& log) {
  auto cube = random_good_cube(ins, rng);
  int k = rng.uniform(0, 2);
  auto mme = random_mme_cube(ins, rng, k);
  log.check("cube_correspondence", [&]() -> std::optional<std::string> {
    for (int d = 0; d < 3; ++d)
      if (!southern(ins, cube, d).good) return "southern square not good along axis " + std::to_string(d);
    for (int d = 0; d < 3; ++d) {
      auto coker = complement_cube(ins, cube, d);
      if (auto bad = faces_pullback(ins, coker)) return "cokernel cube: " + *bad;
      auto back = complement_cube(ins, coker, d);
      if (auto bad = faces_pullback(ins, back)) return "kernel cube: " + *bad;
      if (!southern(ins, back, d).good) return "kernel cube not good";
      if (!same_cube(ins, back, cube, d)) return "round trip changed the cube along axis " + std::to_string(d);
    }
    if (auto bad = faces_pullback(ins, mme)) return "generator: " + *bad;
    auto ker = complement_cube(ins, mme, k);
    if (auto bad = faces_pullback(ins, ker)) return "kernel of m-m-e cube: " + *bad;
    for (int d = 0; d < 3; ++d)
      if (!southern(ins, ker, d).good) return "kernel of m-m-e cube not a good cube";
    auto again = complement_cube(ins, ker, k);
    if (!same_cube(ins, again, mme, k)) return "m-m-e round trip changed the cube";
    return std::nullopt;
  });
}

template <class I>
void distributivity(const I& ins, Rng& rng, TrialLog& log) {
  auto mme = random_mme_cube(ins, rng, 2);
  log.check("distributivity", [&]() -> std::optional<std::string> {
    if (auto bad = faces_pullback(ins, mme)) return "generator: " + *bad;
    auto s = southern(ins, mme, 2);
    if (!classify(ins, s.square).pullback) return "induced square not pseudo-commutative: " + to_string(ins, s.square);
    return std::nullopt;
  });
}

// Three mixed squares S, S', S'' with m-maps S -> S' and S -> S'', and the
// square they induce between star-pushouts of the legs.
template <class I>
void induced_square(const I& ins, Rng& rng, TrialLog& log) {
  auto u = ins.random_object(rng, kMaxSize);
  Mask d1 = gen::summand(ins, rng, u), d2 = gen::summand(ins, rng, u);
  Mask d = gen::summand(ins, rng, u, d1 & d2);
  Mask b0 = gen::summand(ins, rng, u, d), c0 = gen::summand(ins, rng, u, d);
  Mask b1 = b0 | gen::summand(ins, rng, u, d1 & ~d), b2 = b0 | gen::summand(ins, rng, u, d2 & ~d);
  Mask c1 = c0 | gen::summand(ins, rng, u, d1 & ~d), c2 = c0 | gen::summand(ins, rng, u, d2 & ~d);
  if (rng.coin()) {
    c0 = c0 | (d & ~b0);
    c1 = c1 | (d1 & ~b1) | c0;
    c2 = c2 | (d2 & ~b2) | c0;
  }
  Mask a0 = b0 & c0, a1 = b1 & c1, a2 = b2 & c2;
  // vertex order: A B C D, then primed, then double primed
  auto e = gen::embed_all(ins, rng, u, {a0, b0, c0, d, a1, b1, c1, d1, a2, b2, c2, d2});
  log.check("induced_square_pseudo_commutative", [&]() -> std::optional<std::string> {
    std::array<Square<I>, 3> sq;
    for (int l = 0; l < 3; ++l) sq[l] = gen::square_of(ins, e, 4 * l, 4 * l + 1, 4 * l + 2, 4 * l + 3);
    for (const auto& s : sq)
      if (!classify(ins, s).pullback) return "generator: " + to_string(ins, s);
    std::array<StarPushout<I>, 4> p{
        star_m(ins, e.map(ins, 0, 4), e.map(ins, 0, 8)), star_m(ins, e.map(ins, 1, 5), e.map(ins, 1, 9)),
        star_m(ins, e.map(ins, 2, 6), e.map(ins, 2, 10)), star_m(ins, e.map(ins, 3, 7), e.map(ins, 3, 11))};
    auto induced = [&](int from, int to) {
      return mediating(ins, p[from], ins.compose(p[to].inB, e.map(ins, 4 + from, 4 + to)),
                       ins.compose(p[to].inC, e.map(ins, 8 + from, 8 + to)));
    };
    auto top = induced(0, 1), left = induced(0, 2), right = induced(1, 3), bottom = induced(2, 3);
    if (!top || !left || !right || !bottom) return "missing induced map";
    Square<I> s{*top, *left, *right, *bottom};
    auto cls = classify(ins, s);
    if (!cls.pullback) return "induced square not pseudo-commutative: " + to_string(ins, s);
    bool all_dist = true;
    for (const auto& x : sq) all_dist = all_dist && classify(ins, x).distinguished;
    log.check("induced_square_distinguished", [&]() -> std::optional<std::string> {
      if (all_dist) log.count("induced_square_distinguished_cases");
      if (all_dist && !cls.distinguished) return "induced square not distinguished: " + to_string(ins, s);
      return std::nullopt;
    });
    return std::nullopt;
  });
}

}  // namespace checks

template <class I>
void appendix_trial(const I& ins, Rng& rng, TrialLog& log) {
  checks::pushout_uniqueness(ins, rng, log);
  checks::pushout_composition(ins, rng, log);
  checks::induced_m_map(ins, rng, log);
  checks::induced_e_map(ins, rng, log);
  checks::southern_cokernel(ins, rng, log);
  checks::cube_correspondence(ins, rng, log);
  checks::distributivity(ins, rng, log);
  checks::induced_square(ins, rng, log);
}

template <class I>
AuditReport appendix_audit(const I& ins, std::size_t trials, std::uint64_t seed, unsigned threads = 1) {
  return run_trials("pushout-properties", ins.name(), trials, seed, threads,
                    [&](std::size_t, Rng& rng, TrialLog& log) { appendix_trial(ins, rng, log); });
}

}  // namespace ecgw

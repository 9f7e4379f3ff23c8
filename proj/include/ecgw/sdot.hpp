#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ecgw/audit.hpp"
#include "ecgw/cgw.hpp"
#include "ecgw/chain.hpp"
#include "ecgw/chain_gen.hpp"
#include "ecgw/gen.hpp"

namespace ecgw {

// Uniform access to the two roles of morphisms for objects of an extensive
// instance. m- and e-morphisms share one representation, so the role is
// only recorded where chain maps need it.
template <class I>
struct ExtensiveOps {
  using Obj = typename I::Obj;
  using Mor = typename I::Mor;
  const I& ins;

  std::string name() const { return ins.name(); }
  Obj initial() const { return ins.initial(); }
  bool is_initial(const Obj& x) const { return ins.carrier(x).empty(); }
  Obj dom(const Mor& f) const { return ins.dom(f); }
  Obj cod(const Mor& f) const { return ins.cod(f); }
  Mor identity(const Obj& x, MapKind) const { return ins.identity(x); }
  Mor compose(const Mor& g, const Mor& f) const { return ins.compose(g, f); }
  Mor from_initial(const Obj& x, MapKind) const { return initial_map(ins, x); }
  // The map S -> T with t.u = h.s, if there is one.
  std::optional<Mor> induced(const Mor& h, const Mor& s, const Mor& t, MapKind) const {
    return ins.factor(ins.compose(h, s), t);
  }
  Mor cokernel(const Mor& m) const { return ins.complement(m); }
  Mor kernel(const Mor& e) const { return ins.complement(e); }
  bool kernel_cokernel_pair(const Mor& m, const Mor& e) const {
    return ins.cod(m) == ins.cod(e) && same_subobject(ins, ins.complement(m), e);
  }
  bool distinguished(const Mor& top, const Mor& left, const Mor& right, const Mor& bottom) const {
    return is_distinguished(ins, Square<I>{top, left, right, bottom});
  }
  bool good(const Mor& top, const Mor& left, const Mor& right, const Mor& bottom) const {
    return is_pullback(ins, Square<I>{top, left, right, bottom});
  }
  bool iso(const Obj& a, const Obj& b) const { return ins.is_iso(a, b); }
  // Coproduct A + B with the m-inclusion of A and the e-inclusion of B.
  std::pair<Mor, Mor> trivial_extension(const Obj& a, const Obj& b) const {
    auto p = star_m(ins, initial_map(ins, a), initial_map(ins, b));
    return {p.inB, p.inC};
  }
  long long rank(const Obj& x) const { return static_cast<long long>(ins.carrier(x).size()); }
  std::string label(const Obj& x) const { return to_string(ins.carrier(x)); }
};

// The same operations on chain complexes over an extensive instance.
template <class I>
struct ChainOps {
  using Obj = ChainComplex<I>;
  using Mor = ChainMap<I>;
  const I& ins;
  int lo = -2, hi = 2;

  std::string name() const { return "chain(" + ins.name() + ")"; }
  Obj initial() const { return empty_complex(ins, lo, hi); }
  bool is_initial(const Obj& x) const { return is_empty_complex(ins, x); }
  Obj dom(const Mor& f) const { return f.src; }
  Obj cod(const Mor& f) const { return f.dst; }
  Mor identity(const Obj& x, MapKind kind) const { return identity_map(ins, x, kind); }
  Mor compose(const Mor& g, const Mor& f) const { return ecgw::compose(ins, g, f); }
  Mor from_initial(const Obj& x, MapKind kind) const { return from_empty(ins, x, kind); }
  std::optional<Mor> induced(const Mor& h, const Mor& s, const Mor& t, MapKind kind) const {
    try {
      return induce(ins, kind, h, s, t);
    } catch (const Error&) {
      return std::nullopt;
    }
  }
  Mor cokernel(const Mor& m) const { return coker_chain(ins, m).map; }
  Mor kernel(const Mor& e) const { return ker_chain(ins, e).map; }
  bool kernel_cokernel_pair(const Mor& m, const Mor& e) const { return is_kernel_cokernel_pair(ins, m, e); }
  bool distinguished(const Mor& top, const Mor& left, const Mor& right, const Mor& bottom) const {
    return classify(ins, ChainSquare<I>{top, left, right, bottom}).distinguished;
  }
  bool good(const Mor& top, const Mor& left, const Mor& right, const Mor& bottom) const {
    return classify(ins, ChainSquare<I>{top, left, right, bottom}).pullback;
  }
  bool iso(const Obj& a, const Obj& b) const { return chain_isomorphic(ins, a, b); }
  std::pair<Mor, Mor> trivial_extension(const Obj& a, const Obj& b) const {
    auto p = star_chain_m(ins, from_empty(ins, a, MapKind::M), from_empty(ins, b, MapKind::M));
    auto e = p.inC;
    e.kind = MapKind::E;
    return {p.inB, validate_map(ins, e)};
  }
  long long rank(const Obj& x) const {
    long long chi = 0;
    for (int i = x.lo; i <= x.hi; ++i) {
      auto n = static_cast<long long>(ins.carrier(x.X(i)).size());
      chi += (i % 2 == 0) ? n : -n;
    }
    return chi;
  }
  std::string label(const Obj& x) const {
    std::string s = "[";
    for (int i = x.lo; i <= x.hi; ++i) {
      if (i > x.lo) s += " ";
      s += std::to_string(ins.carrier(x.X(i)).size()) + "/" + std::to_string(ins.carrier(ins.dom(x.inc(i))).size());
    }
    return s + "]";
  }
};

// An object of S_n: A(i, j) for 0 <= i <= j <= n with m-maps A(i, j) -> A(i, j+1)
// and e-maps A(i+1, j) -> A(i, j).
template <class Ops>
struct Staircase {
  using Obj = typename Ops::Obj;
  using Mor = typename Ops::Mor;

  int n = 0;
  std::vector<std::vector<std::optional<Obj>>> a;
  std::vector<std::vector<std::optional<Mor>>> h;  // h[i][j]: A(i, j) -> A(i, j+1)
  std::vector<std::vector<std::optional<Mor>>> v;  // v[i][j]: A(i+1, j) -> A(i, j)
  std::vector<std::vector<bool>> cert;             // cert[i][j]: cell with corners A(i+1, j), A(i, j+1)

  const Obj& at(int i, int j) const { return *a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  const Mor& hor(int i, int j) const { return *h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  const Mor& ver(int i, int j) const { return *v[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }

  static Staircase shaped(int n) {
    Staircase s;
    s.n = n;
    auto m = static_cast<std::size_t>(n + 1);
    s.a.assign(m, std::vector<std::optional<Obj>>(m));
    s.h.assign(m, std::vector<std::optional<Mor>>(m));
    s.v.assign(m, std::vector<std::optional<Mor>>(m));
    s.cert.assign(m, std::vector<bool>(m, false));
    return s;
  }
};

// Cells are indexed by 0 <= i < j < n; the square has top A(i+1, j) -> A(i+1, j+1),
// left A(i+1, j) -> A(i, j), right A(i+1, j+1) -> A(i, j+1), bottom A(i, j) -> A(i, j+1).
template <class Ops>
bool cell_distinguished(const Ops& ops, const Staircase<Ops>& s, int i, int j) {
  return ops.distinguished(s.hor(i + 1, j), s.ver(i, j), s.ver(i, j + 1), s.hor(i, j));
}

template <class Ops>
void certify(const Ops& ops, Staircase<Ops>& s) {
  for (int i = 0; i <= s.n; ++i)
    if (!ops.is_initial(s.at(i, i))) throw Error(ErrorKind::ValidationError, "staircase diagonal not initial", i);
  for (int i = 0; i < s.n; ++i)
    for (int j = i + 1; j < s.n; ++j) {
      bool ok = cell_distinguished(ops, s, i, j);
      s.cert[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = ok;
      if (!ok)
        throw Error(ErrorKind::SquareNotGood,
                    "staircase cell (" + std::to_string(i) + "," + std::to_string(j) + ") not distinguished", i);
    }
}

template <class Ops>
bool is_staircase(const Ops& ops, const Staircase<Ops>& s) {
  try {
    auto copy = s;
    certify(ops, copy);
    return true;
  } catch (const Error&) {
    return false;
  }
}

// Fills A(i, j) = A(0, j) / A(0, i) from the top row, with structure maps
// induced on the quotients.
template <class Ops>
Staircase<Ops> staircase_build(const Ops& ops, const std::vector<typename Ops::Mor>& row) {
  int n = static_cast<int>(row.size());
  for (int j = 0; j + 1 < n; ++j)
    if (!(ops.cod(row[static_cast<std::size_t>(j)]) == ops.dom(row[static_cast<std::size_t>(j + 1)])))
      throw Error(ErrorKind::NotComposable, "top row", j);
  auto s = Staircase<Ops>::shaped(n);
  auto top = [&](int j) { return j == 0 ? (n == 0 ? ops.initial() : ops.dom(row[0])) : ops.cod(row[static_cast<std::size_t>(j - 1)]); };
  if (!ops.is_initial(top(0))) throw Error(ErrorKind::NotComposable, "top row does not start at the initial object", 0);
  auto put = [](auto& grid, int i, int j, auto x) { grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = x; };

  // p[i][j]: A(0, i) -> A(0, j); q[i][j]: A(i, j) -> A(0, j)
  std::vector<std::vector<std::optional<typename Ops::Mor>>> p(static_cast<std::size_t>(n + 1),
                                                                std::vector<std::optional<typename Ops::Mor>>(static_cast<std::size_t>(n + 1)));
  auto q = p;
  for (int i = 0; i <= n; ++i) {
    put(p, i, i, ops.identity(top(i), MapKind::M));
    for (int j = i + 1; j <= n; ++j) put(p, i, j, ops.compose(row[static_cast<std::size_t>(j - 1)], *p[i][j - 1]));
  }
  for (int j = 0; j <= n; ++j) {
    put(s.a, 0, j, top(j));
    put(q, 0, j, ops.identity(top(j), MapKind::E));
    for (int i = 1; i <= j; ++i) {
      auto c = ops.cokernel(*p[i][j]);
      put(q, i, j, c);
      put(s.a, i, j, ops.dom(c));
    }
  }
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i < j; ++i) {
      auto vi = ops.induced(ops.identity(top(j), MapKind::E), *q[i + 1][j], *q[i][j], MapKind::E);
      if (!vi) throw Error(ErrorKind::NotComposable, "no induced e-map between quotients", i);
      put(s.v, i, j, *vi);
    }
  for (int i = 0; i <= n; ++i)
    for (int j = i; j < n; ++j) {
      auto hi = ops.induced(row[static_cast<std::size_t>(j)], *q[i][j], *q[i][j + 1], MapKind::M);
      if (!hi) throw Error(ErrorKind::NotComposable, "no induced m-map between quotients", j);
      put(s.h, i, j, *hi);
    }
  certify(ops, s);
  return s;
}

// Re-index a staircase along a monotone map sigma: [m] -> [n]; maps between
// repeated indices become identities and skipped indices are composed.
template <class Ops>
Staircase<Ops> reindex(const Ops& ops, const Staircase<Ops>& s, const std::vector<int>& sigma) {
  int m = static_cast<int>(sigma.size()) - 1;
  auto out = Staircase<Ops>::shaped(m);
  auto put = [](auto& grid, int i, int j, auto x) { grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = x; };
  auto sg = [&](int k) { return sigma[static_cast<std::size_t>(k)]; };
  for (int i = 0; i <= m; ++i)
    for (int j = i; j <= m; ++j) put(out.a, i, j, s.at(sg(i), sg(j)));
  // horizontal A(r, c) -> A(r, c') for c <= c'
  auto hpath = [&](int r, int c, int c2) {
    auto f = ops.identity(s.at(r, c), MapKind::M);
    for (int k = c; k < c2; ++k) f = ops.compose(s.hor(r, k), f);
    return f;
  };
  // vertical A(r', c) -> A(r, c) for r <= r'
  auto vpath = [&](int r, int r2, int c) {
    auto f = ops.identity(s.at(r2, c), MapKind::E);
    for (int k = r2 - 1; k >= r; --k) f = ops.compose(s.ver(k, c), f);
    return f;
  };
  for (int i = 0; i <= m; ++i)
    for (int j = i; j < m; ++j) put(out.h, i, j, hpath(sg(i), sg(j), sg(j + 1)));
  for (int j = 0; j <= m; ++j)
    for (int i = 0; i < j; ++i) put(out.v, i, j, vpath(sg(i), sg(i + 1), sg(j)));
  certify(ops, out);
  return out;
}

template <class Ops>
Staircase<Ops> face(const Ops& ops, const Staircase<Ops>& s, int k) {
  if (k < 0 || k > s.n || s.n == 0) throw Error(ErrorKind::IndexOutOfWindow, "face index", k);
  std::vector<int> sigma;
  for (int i = 0; i <= s.n; ++i)
    if (i != k) sigma.push_back(i);
  return reindex(ops, s, sigma);
}

template <class Ops>
Staircase<Ops> degeneracy(const Ops& ops, const Staircase<Ops>& s, int k) {
  if (k < 0 || k > s.n) throw Error(ErrorKind::IndexOutOfWindow, "degeneracy index", k);
  std::vector<int> sigma;
  for (int i = 0; i <= s.n + 1; ++i) sigma.push_back(i <= k ? i : i - 1);
  return reindex(ops, s, sigma);
}

// Objectwise isomorphism of two staircases of the same level.
template <class Ops>
bool same_up_to_iso(const Ops& ops, const Staircase<Ops>& x, const Staircase<Ops>& y) {
  if (x.n != y.n) return false;
  for (int i = 0; i <= x.n; ++i)
    for (int j = i; j <= x.n; ++j)
      if (!ops.iso(x.at(i, j), y.at(i, j))) return false;
  return true;
}

// Equality of all objects and structure maps.
template <class Ops>
bool same_exactly(const Staircase<Ops>& x, const Staircase<Ops>& y) {
  return x.n == y.n && x.a == y.a && x.h == y.h && x.v == y.v;
}

template <class Ops>
std::string to_dot(const Ops& ops, const Staircase<Ops>& s) {
  std::ostringstream out;
  out << "digraph staircase {\n  rankdir=LR;\n";
  for (int i = 0; i <= s.n; ++i)
    for (int j = i; j <= s.n; ++j)
      out << "  a" << i << "_" << j << " [label=\"A" << i << "," << j << " " << ops.label(s.at(i, j)) << "\"];\n";
  for (int i = 0; i <= s.n; ++i)
    for (int j = i; j < s.n; ++j) out << "  a" << i << "_" << j << " -> a" << i << "_" << j + 1 << " [label=\"m\"];\n";
  for (int j = 0; j <= s.n; ++j)
    for (int i = 0; i < j; ++i)
      out << "  a" << i + 1 << "_" << j << " -> a" << i << "_" << j << " [label=\"e\", style=dashed];\n";
  out << "}\n";
  return out.str();
}

template <class Ops>
struct ExtensionObj {
  typename Ops::Obj a, c, b;
  typename Ops::Mor m;  // A -> C
  typename Ops::Mor e;  // B -> C
};

template <class Ops>
ExtensionObj<Ops> extension_build(const Ops& ops, const typename Ops::Mor& m, const typename Ops::Mor& e) {
  if (!ops.kernel_cokernel_pair(m, e)) throw Error(ErrorKind::NotKernelCokernelPair, "extension");
  return {ops.dom(m), ops.cod(m), ops.dom(e), m, e};
}

template <class Ops>
std::pair<typename Ops::Obj, typename Ops::Obj> additivity_projection(const ExtensionObj<Ops>& x) {
  return {x.a, x.b};
}

template <class Ops>
ExtensionObj<Ops> trivial_extension(const Ops& ops, const typename Ops::Obj& a, const typename Ops::Obj& b) {
  auto [m, e] = ops.trivial_extension(a, b);
  return extension_build(ops, m, e);
}

namespace checks {

// Chain of nested summands 0 = S_0 < S_1 < ... < S_n of a random object,
// each embedded under fresh names.
template <class I>
std::vector<typename I::Mor> random_row(const I& ins, Rng& rng, int n, std::size_t max_size) {
  auto u = ins.random_object(rng, max_size);
  std::vector<gen::Mask> masks(static_cast<std::size_t>(n + 1), gen::all(ins.carrier(u).size(), false));
  if (n > 0) masks.back() = gen::all(ins.carrier(u).size());
  for (int j = n - 1; j >= 1; --j)
    masks[static_cast<std::size_t>(j)] = gen::summand(ins, rng, u, masks[static_cast<std::size_t>(j + 1)]);
  auto e = gen::embed_all(ins, rng, u, masks);
  std::vector<typename I::Mor> row;
  for (int j = 0; j < n; ++j) row.push_back(e.map(ins, static_cast<std::size_t>(j), static_cast<std::size_t>(j + 1)));
  return row;
}

// Row of chain m-maps from nested m-subcomplexes of a random complex.
template <class I>
std::vector<ChainMap<I>> random_chain_row(const I& ins, Rng& rng, int n, int lo, int hi, std::size_t max_size) {
  auto y = chaingen::random_complex(ins, rng, lo, hi, max_size);
  std::vector<chaingen::Masks> masks(static_cast<std::size_t>(n + 1), chaingen::full_masks(ins, y, false));
  if (n > 0) masks.back() = chaingen::full_masks(ins, y, true);
  for (int j = n - 1; j >= 1; --j)
    masks[static_cast<std::size_t>(j)] =
        chaingen::m_close(ins, y, chaingen::intersect(chaingen::random_masks(ins, rng, y), masks[static_cast<std::size_t>(j + 1)]));
  std::vector<ChainMap<I>> subs;
  for (const auto& m : masks) subs.push_back(chaingen::restrict_to(ins, y, m, MapKind::M));
  std::vector<ChainMap<I>> row;
  for (int j = 0; j < n; ++j)
    row.push_back(induce(ins, MapKind::M, identity_map(ins, y, MapKind::M), subs[static_cast<std::size_t>(j)],
                         subs[static_cast<std::size_t>(j + 1)]));
  if (n > 0 && !is_empty_complex(ins, row[0].src)) throw Error(ErrorKind::ValidationError, "generator: row start");
  return row;
}

template <class Ops>
void identity_check(const Ops& ops, TrialLog& log, const std::string& name, const Staircase<Ops>& lhs,
                    const Staircase<Ops>& rhs) {
  log.expect(name, same_up_to_iso(ops, lhs, rhs), [&] { return "level " + std::to_string(lhs.n); });
  if (same_exactly(lhs, rhs)) log.count(name + "_on_the_nose");
}

// Every simplicial identity that applies to a staircase of level n.
template <class Ops>
void simplicial_identities(const Ops& ops, const Staircase<Ops>& s, TrialLog& log) {
  int n = s.n;
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i < j; ++i)
      if (n >= 2) identity_check(ops, log, "face_face", face(ops, face(ops, s, j), i), face(ops, face(ops, s, i), j - 1));
  for (int j = 0; j <= n; ++j) {
    auto sj = degeneracy(ops, s, j);
    identity_check(ops, log, "face_degeneracy_same", face(ops, sj, j), s);
    identity_check(ops, log, "face_degeneracy_next", face(ops, sj, j + 1), s);
    for (int i = 0; i <= n + 1; ++i) {
      if (i < j && n >= 1) identity_check(ops, log, "face_degeneracy_below", face(ops, sj, i), degeneracy(ops, face(ops, s, i), j - 1));
      if (i > j + 1 && n >= 1)
        identity_check(ops, log, "face_degeneracy_above", face(ops, sj, i), degeneracy(ops, face(ops, s, i - 1), j));
    }
    for (int i = 0; i <= j; ++i)
      identity_check(ops, log, "degeneracy_degeneracy", degeneracy(ops, sj, i), degeneracy(ops, degeneracy(ops, s, i), j + 1));
  }
}

// A(i, j) must be the complement of A(0, i) in A(0, j), element for element.
template <class I>
std::optional<std::string> cells_are_complements(const I& ins, const Staircase<ExtensiveOps<I>>& s) {
  for (int j = 0; j <= s.n; ++j) {
    auto path = ins.identity(s.at(0, j));
    for (int i = 1; i <= j; ++i) {
      // image of A(i, j) in A(0, j) versus A(0, j) minus the image of A(0, i)
      path = ins.compose(path, s.ver(i - 1, j));
      auto inc = ins.identity(s.at(0, i));
      for (int k = i; k < j; ++k) inc = ins.compose(s.hor(0, k), inc);
      auto want = set_difference(ins.carrier(s.at(0, j)), ins.fun(inc).image());
      if (!(ins.carrier(s.at(i, j)) == want) || !(ins.fun(path).image() == want))
        return "cell (" + std::to_string(i) + "," + std::to_string(j) + ") = " + to_string(ins.carrier(s.at(i, j))) +
               ", expected " + to_string(want);
    }
  }
  return std::nullopt;
}

// Staircase morphisms F -> G as levelwise maps plus the pointwise quotient.
template <class I>
struct LevelMaps {
  std::vector<std::vector<std::optional<typename I::Mor>>> at;  // at[i][j]: F(i, j) -> G(i, j)
};

// Sub-staircase of G cut out by a summand S of G(0, n): F(0, j) = S n G(0, j).
template <class I>
std::pair<Staircase<ExtensiveOps<I>>, LevelMaps<I>> sub_staircase(const I& ins, Rng& rng,
                                                                 const Staircase<ExtensiveOps<I>>& g,
                                                                 const std::vector<typename I::Mor>& row) {
  ExtensiveOps<I> ops{ins};
  int n = g.n;
  std::vector<typename I::Mor> incl;  // G(0, j) -> G(0, n)
  for (int j = 0; j <= n; ++j) {
    auto f = ins.identity(g.at(0, j));
    for (int k = j; k < n; ++k) f = ins.compose(row[static_cast<std::size_t>(k)], f);
    incl.push_back(f);
  }
  auto top = g.at(0, n);
  auto keep = gen::summand(ins, rng, top);
  std::vector<typename I::Mor> sub;  // F(0, j) -> G(0, j)
  for (int j = 0; j <= n; ++j) {
    auto pre = ins.fun(incl[static_cast<std::size_t>(j)]);
    std::vector<bool> m(pre.dom().size());
    for (std::size_t p = 0; p < m.size(); ++p) m[p] = keep[pre.at(p)];
    sub.push_back(ins.sub(g.at(0, j), m));
  }
  std::vector<typename I::Mor> frow;
  for (int j = 0; j < n; ++j)
    frow.push_back(*ins.factor(ins.compose(row[static_cast<std::size_t>(j)], sub[static_cast<std::size_t>(j)]),
                               sub[static_cast<std::size_t>(j + 1)]));
  auto f = staircase_build(ops, frow);
  // levelwise maps: F(i, j) = F(0, j) / F(0, i) sits inside G(0, j) / G(0, i)
  LevelMaps<I> lm{std::vector<std::vector<std::optional<typename I::Mor>>>(
      static_cast<std::size_t>(n + 1), std::vector<std::optional<typename I::Mor>>(static_cast<std::size_t>(n + 1)))};
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= j; ++i) {
      auto fpath = ins.identity(f.at(i, j));
      for (int k = i - 1; k >= 0; --k) fpath = ins.compose(f.ver(k, j), fpath);
      auto gpath = ins.identity(g.at(i, j));
      for (int k = i - 1; k >= 0; --k) gpath = ins.compose(g.ver(k, j), gpath);
      auto u = ins.factor(ins.compose(sub[static_cast<std::size_t>(j)], fpath), gpath);
      if (!u) throw Error(ErrorKind::ValidationError, "generator: quotient of F not inside quotient of G");
      lm.at[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = *u;
    }
  return {f, lm};
}

// Pointwise complement of levelwise maps phi: F -> G (pointwise cokernel for
// m-morphisms of staircases, pointwise kernel for e-morphisms).
template <class I>
Staircase<ExtensiveOps<I>> pointwise_complement(const I& ins, const Staircase<ExtensiveOps<I>>& g,
                                                const LevelMaps<I>& phi) {
  ExtensiveOps<I> ops{ins};
  int n = g.n;
  auto out = Staircase<ExtensiveOps<I>>::shaped(n);
  std::vector<std::vector<std::optional<typename I::Mor>>> c(
      static_cast<std::size_t>(n + 1), std::vector<std::optional<typename I::Mor>>(static_cast<std::size_t>(n + 1)));
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      auto k = ins.complement(*phi.at[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = k;
      out.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = ins.dom(k);
    }
  auto cc = [&](int i, int j) { return *c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
  for (int i = 0; i <= n; ++i)
    for (int j = i; j < n; ++j) {
      auto u = ins.factor(ins.compose(g.hor(i, j), cc(i, j)), cc(i, j + 1));
      if (!u) throw Error(ErrorKind::SquareNotGood, "pointwise complement: no horizontal map", j);
      out.h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = *u;
    }
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i < j; ++i) {
      auto u = ins.factor(ins.compose(g.ver(i, j), cc(i + 1, j)), cc(i, j));
      if (!u) throw Error(ErrorKind::SquareNotGood, "pointwise complement: no vertical map", i);
      out.v[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = *u;
    }
  certify(ops, out);
  return out;
}

// Pointwise star-pushout of two sub-staircases F, H of G along their
// intersection, with structure maps mediated out of each star-pushout.
template <class I>
Staircase<ExtensiveOps<I>> pointwise_star(const I& ins, const Staircase<ExtensiveOps<I>>& g,
                                          const LevelMaps<I>& phi, const LevelMaps<I>& psi) {
  ExtensiveOps<I> ops{ins};
  int n = g.n;
  auto out = Staircase<ExtensiveOps<I>>::shaped(n);
  std::vector<std::vector<std::optional<StarPushout<I>>>> p(
      static_cast<std::size_t>(n + 1), std::vector<std::optional<StarPushout<I>>>(static_cast<std::size_t>(n + 1)));
  std::vector<std::vector<std::optional<typename I::Mor>>> f(p.size(), std::vector<std::optional<typename I::Mor>>(p.size())),
      hh = f;
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      auto x = *phi.at[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      auto y = *psi.at[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      // intersection F n H inside G and its maps into F and H
      auto cone = ins.pullback(x, y);
      auto sp = star_m(ins, cone.p1, cone.p2);
      p[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = sp;
      f[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = x;
      hh[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = y;
      out.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = sp.obj;
    }
  auto P = [&](int i, int j) -> const StarPushout<I>& { return *p[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
  auto F = [&](int i, int j) { return *f[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
  auto H = [&](int i, int j) { return *hh[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
  // map of the source staircases along a structure map of G, restricted
  auto restrict = [&](const typename I::Mor& gmap, const typename I::Mor& from, const typename I::Mor& to) {
    auto u = ins.factor(ins.compose(gmap, from), to);
    if (!u) throw Error(ErrorKind::SquareNotGood, "pointwise star: sub-staircase not preserved");
    return *u;
  };
  for (int i = 0; i <= n; ++i)
    for (int j = i; j < n; ++j) {
      auto toB = ins.compose(P(i, j + 1).inB, restrict(g.hor(i, j), F(i, j), F(i, j + 1)));
      auto toC = ins.compose(P(i, j + 1).inC, restrict(g.hor(i, j), H(i, j), H(i, j + 1)));
      auto u = mediating(ins, P(i, j), toB, toC);
      if (!u) throw Error(ErrorKind::SquareNotGood, "pointwise star: no horizontal map", j);
      out.h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = *u;
    }
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i < j; ++i) {
      auto toB = ins.compose(P(i, j).inB, restrict(g.ver(i, j), F(i + 1, j), F(i, j)));
      auto toC = ins.compose(P(i, j).inC, restrict(g.ver(i, j), H(i + 1, j), H(i, j)));
      auto u = mediating(ins, P(i + 1, j), toB, toC);
      if (!u) throw Error(ErrorKind::SquareNotGood, "pointwise star: no vertical map", i);
      out.v[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = *u;
    }
  certify(ops, out);
  return out;
}

template <class I>
void staircase_closure(const I& ins, Rng& rng, TrialLog& log) {
  ExtensiveOps<I> ops{ins};
  int n = rng.uniform(1, 4);
  auto row = random_row(ins, rng, n, 8);
  auto g = staircase_build(ops, row);
  auto [f, phi] = sub_staircase(ins, rng, g, row);
  auto [h, psi] = sub_staircase(ins, rng, g, row);
  auto top = ins.carrier(f.at(0, n)).size();
  if (top > 0 && top < ins.carrier(g.at(0, n)).size()) log.count("proper_sub_staircases");
  if (!ops.iso(f.at(0, n), h.at(0, n))) log.count("distinct_sub_staircase_pairs");
  // the levelwise maps must form a morphism of staircases with good squares
  log.check("staircase_morphism_good", [&]() -> std::optional<std::string> {
    for (int i = 0; i <= n; ++i)
      for (int j = i; j < n; ++j)
        if (!ops.good(f.hor(i, j), *phi.at[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                      *phi.at[static_cast<std::size_t>(i)][static_cast<std::size_t>(j + 1)], g.hor(i, j)))
          return "horizontal square at (" + std::to_string(i) + "," + std::to_string(j) + ")";
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i < j; ++i)
        if (!ops.good(*phi.at[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(j)], f.ver(i, j), g.ver(i, j),
                      *phi.at[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]))
          return "vertical square at (" + std::to_string(i) + "," + std::to_string(j) + ")";
    return std::nullopt;
  });
  log.check("staircase_closed_under_cokernels", [&]() -> std::optional<std::string> {
    auto q = pointwise_complement(ins, g, phi);
    if (!is_staircase(ops, q)) return "quotient is not a staircase";
    for (int i = 0; i <= n; ++i)
      for (int j = i; j <= n; ++j)
        if (ops.rank(q.at(i, j)) + ops.rank(f.at(i, j)) != ops.rank(g.at(i, j))) return "sizes do not add up";
    return std::nullopt;
  });
  log.check("staircase_closed_under_kernels", [&]() -> std::optional<std::string> {
    // the complements of F form an e-sub-staircase whose kernel is F again
    LevelMaps<I> comp{phi.at};
    for (auto& r : comp.at)
      for (auto& m : r)
        if (m) m = ins.complement(*m);
    auto k = pointwise_complement(ins, g, comp);
    if (!is_staircase(ops, k)) return "kernel is not a staircase";
    if (!same_up_to_iso(ops, k, f)) return "kernel of the quotient map is not F";
    return std::nullopt;
  });
  log.check("staircase_closed_under_star_pushouts", [&]() -> std::optional<std::string> {
    auto s = pointwise_star(ins, g, phi, psi);
    if (!is_staircase(ops, s)) return "star-pushout is not a staircase";
    return std::nullopt;
  });
}

}  // namespace checks

// Simplicial identities on staircases of level <= 4 over one instance, plus
// the complement description of cells.
template <class I>
AuditReport sdot_audit(const I& ins, std::size_t trials, std::uint64_t seed, unsigned threads = 1) {
  return run_trials("staircases", ins.name(), trials, seed, threads, [&](std::size_t t, Rng& rng, TrialLog& log) {
    ExtensiveOps<I> ops{ins};
    int n = static_cast<int>(t % 5);
    auto row = checks::random_row(ins, rng, n, 8);
    auto s = staircase_build(ops, row);
    log.check("cells_are_complements", [&] { return checks::cells_are_complements(ins, s); });
    checks::simplicial_identities(ops, s, log);
    checks::staircase_closure(ins, rng, log);
  });
}

template <class I>
AuditReport chain_sdot_audit(const I& ins, std::size_t trials, std::uint64_t seed, unsigned threads = 1) {
  return run_trials("chain-staircases", ins.name(), trials, seed, threads, [&](std::size_t t, Rng& rng, TrialLog& log) {
    ChainOps<I> ops{ins, -1, 1};
    int n = static_cast<int>(t % 4);
    auto row = checks::random_chain_row(ins, rng, n, ops.lo, ops.hi, 3);
    auto s = staircase_build(ops, row);
    log.check("chain_cells_are_quotients", [&]() -> std::optional<std::string> {
      for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= j; ++i)
          if (ops.rank(s.at(i, j)) != ops.rank(s.at(0, j)) - ops.rank(s.at(0, i)))
            return "euler characteristic of cell (" + std::to_string(i) + "," + std::to_string(j) + ")";
      return std::nullopt;
    });
    checks::simplicial_identities(ops, s, log);
  });
}

}  // namespace ecgw

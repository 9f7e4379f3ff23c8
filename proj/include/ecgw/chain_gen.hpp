#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ecgw/chain.hpp"
#include "ecgw/gen.hpp"

// Random complexes and chain maps. Subcomplexes are described by one mask
// per degree of an ambient complex; every result is renamed afterwards.
namespace ecgw::chaingen {

using gen::Mask;
using gen::operator&;
using gen::operator|;
using gen::operator~;
using Masks = std::vector<Mask>;

// Random map dom -> cod commuting with the action, by backtracking with
// propagation along the action rows.
template <class I>
std::optional<typename I::Mor> random_map(const I& ins, Rng& rng, const typename I::Obj& dom,
                                          const typename I::Obj& cod) {
  const auto& rd = ins.actions(dom);
  const auto& rc = ins.actions(cod);
  std::size_t n = ins.carrier(dom).size(), m = ins.carrier(cod).size();
  if (n == 0) return initial_map(ins, cod);
  if (m == 0) return std::nullopt;
  std::vector<std::size_t> order(m);
  for (std::size_t k = 0; k < m; ++k) order[k] = k;
  std::size_t budget = 2000;
  std::function<bool(std::vector<std::size_t>&)> go = [&](std::vector<std::size_t>& f) {
    std::size_t x = 0;
    while (x < n && f[x] != SIZE_MAX) ++x;
    if (x == n) return true;
    auto cand = order;
    rng.shuffle(cand);
    for (auto y : cand) {
      if (budget-- == 0) return false;
      auto g = f;
      std::vector<std::pair<std::size_t, std::size_t>> todo{{x, y}};
      bool ok = true;
      while (ok && !todo.empty()) {
        auto [p, q] = todo.back();
        todo.pop_back();
        if (g[p] != SIZE_MAX) {
          ok = g[p] == q;
          continue;
        }
        g[p] = q;
        for (std::size_t r = 0; r < rd.size(); ++r) todo.emplace_back(rd[r][p], rc[r][q]);
      }
      if (ok && go(g)) {
        f = std::move(g);
        return true;
      }
    }
    return false;
  };
  std::vector<std::size_t> f(n, SIZE_MAX);
  if (!go(f)) return std::nullopt;
  return ins.lift(dom, cod, SetFun(ins.carrier(dom), ins.carrier(cod), f));
}

// Largest union of connected components inside the mask.
template <class I>
Mask summand_inside(const I& ins, const typename I::Obj& x, Mask keep) {
  const auto& act = ins.actions(x);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& row : act)
      for (std::size_t p = 0; p < keep.size(); ++p)
        if (keep[p] != keep[row[p]]) {
          keep[p] = keep[row[p]] = false;
          changed = true;
        }
  }
  return keep;
}

// Fresh names in every degree; returns the isomorphism x -> renamed.
template <class I>
ChainMap<I> rename(const I& ins, Rng& rng, const ChainComplex<I>& x, MapKind kind = MapKind::M) {
  ChainComplex<I> y{x.lo, x.hi, {}, {}, {}};
  ChainMap<I> r{kind, x, {}, {}, {}};
  for (int i = x.lo; i <= x.hi; ++i) {
    auto ri = ins.rename(rng, x.X(i));
    auto rb = ins.rename(rng, ins.dom(x.inc(i)));
    auto prev = i == x.lo ? ins.identity(ins.initial()) : r.f.back();
    y.deg.push_back(ins.cod(ri));
    y.img.push_back(ins.compose(ri, ins.compose(x.inc(i), ins.inverse(rb))));
    y.diff.push_back(ins.compose(prev, ins.compose(x.d(i), ins.inverse(rb))));
    r.f.push_back(ri);
    r.fbar.push_back(rb);
  }
  r.dst = validate(ins, y);
  return validate_map(ins, r);
}

template <class I>
ChainMap<I> rename_target(const I& ins, Rng& rng, const ChainMap<I>& m) {
  auto r = rename(ins, rng, m.dst, m.kind);
  return compose(ins, r, m);
}

template <class I>
ChainMap<I> rename_source(const I& ins, Rng& rng, const ChainMap<I>& m) {
  auto r = rename(ins, rng, m.src, m.kind);
  ChainMap<I> inv{m.kind, r.dst, r.src, {}, {}};
  for (int i = r.lo(); i <= r.hi(); ++i) {
    inv.f.push_back(ins.inverse(r.at(i)));
    inv.fbar.push_back(ins.inverse(r.bar(i)));
  }
  return compose(ins, m, inv);
}

template <class I>
Mask image_part(const I& ins, const ChainComplex<I>& x, int i) {
  return ins.fun(x.inc(i)).image_mask();
}

// Points of Xbar_i (as a mask on X_i) whose differential lands in `below`.
template <class I>
Mask lands_in(const I& ins, const ChainComplex<I>& x, int i, const Mask& below) {
  Mask out(ins.carrier(x.X(i)).size(), false);
  const auto& inc = ins.fun(x.inc(i));
  const auto& d = ins.fun(x.d(i));
  for (std::size_t q = 0; q < inc.dom().size(); ++q)
    if (i > x.lo && below[d.at(q)]) out[inc.at(q)] = true;
  return out;
}

// Shrink so that image points of S map into S (an m-subcomplex).
template <class I>
Masks m_close(const I& ins, const ChainComplex<I>& x, Masks s) {
  for (int i = x.lo; i <= x.hi; ++i) {
    auto k = static_cast<std::size_t>(i - x.lo);
    if (i == x.lo) continue;
    auto ok = lands_in(ins, x, i, s[k - 1]);
    s[k] = s[k] & (~image_part(ins, x, i) | ok);
  }
  return s;
}

// Grow so that image points mapping into S belong to S (an e-subcomplex).
template <class I>
Masks e_close(const I& ins, const ChainComplex<I>& x, Masks s) {
  for (int i = x.lo + 1; i <= x.hi; ++i) {
    auto k = static_cast<std::size_t>(i - x.lo);
    s[k] = s[k] | lands_in(ins, x, i, s[k - 1]);
  }
  return s;
}

// Subcomplex on S: degrees S_i, image part the points of S_i n Xbar_i whose
// differential stays in S_{i-1}. With `check` the inclusion is validated as a
// map of the given kind.
template <class I>
ChainMap<I> restrict_to(const I& ins, const ChainComplex<I>& x, const Masks& s, MapKind kind, bool check = true) {
  ChainComplex<I> y{x.lo, x.hi, {}, {}, {}};
  ChainMap<I> m{kind, {}, x, {}, {}};
  for (int i = x.lo; i <= x.hi; ++i) {
    auto k = static_cast<std::size_t>(i - x.lo);
    auto fi = ins.sub(x.X(i), s[k]);
    const auto& inc = ins.fun(x.inc(i));
    const auto& d = ins.fun(x.d(i));
    Mask t(inc.dom().size());
    for (std::size_t q = 0; q < t.size(); ++q) t[q] = s[k][inc.at(q)] && (i == x.lo || s[k - 1][d.at(q)]);
    auto fb = ins.sub(ins.dom(x.inc(i)), t);
    auto prev = i == x.lo ? ins.identity(ins.initial()) : m.f.back();
    y.deg.push_back(ins.dom(fi));
    y.img.push_back(*ins.factor(ins.compose(x.inc(i), fb), fi));
    y.diff.push_back(*ins.factor(ins.compose(x.d(i), fb), prev));
    m.f.push_back(fi);
    m.fbar.push_back(fb);
  }
  m.src = validate(ins, y);
  return check ? validate_map(ins, m) : m;
}

template <class I>
Masks random_masks(const I& ins, Rng& rng, const ChainComplex<I>& x) {
  Masks s;
  for (int i = x.lo; i <= x.hi; ++i) s.push_back(ins.random_summand(rng, x.X(i)));
  return s;
}

template <class I>
Masks full_masks(const I& ins, const ChainComplex<I>& x, bool v) {
  Masks s;
  for (int i = x.lo; i <= x.hi; ++i) s.push_back(Mask(ins.carrier(x.X(i)).size(), v));
  return s;
}

inline Masks intersect(const Masks& a, const Masks& b) {
  Masks out;
  for (std::size_t k = 0; k < a.size(); ++k) out.push_back(a[k] & b[k]);
  return out;
}

// Random complex: each image part is a random summand mapped into the part
// of the degree below that is not in its image part.
template <class I>
ChainComplex<I> random_complex(const I& ins, Rng& rng, int lo, int hi, std::size_t max_size) {
  ChainComplex<I> x{lo, hi, {}, {}, {}};
  for (int i = lo; i <= hi; ++i) {
    auto xi = ins.random_object(rng, max_size);
    auto mask = i == lo ? Mask(ins.carrier(xi).size(), false) : ins.random_summand(rng, xi);
    auto inc = ins.sub(xi, mask);
    auto below = obj_at(ins, x, i - 1);
    auto free = i == lo ? ins.identity(below) : ins.complement(x.img.back());
    auto d = random_map(ins, rng, ins.dom(inc), ins.dom(free));
    if (!d) {
      inc = initial_map(ins, xi);
      d = initial_map(ins, ins.dom(free));
    }
    x.deg.push_back(xi);
    x.img.push_back(inc);
    x.diff.push_back(ins.compose(free, *d));
  }
  return validate(ins, x);
}

// Exact complex: X_i = B_{i+1} + B_i, the differential the first inclusion.
template <class I>
ChainComplex<I> random_exact(const I& ins, Rng& rng, int lo, int hi, std::size_t max_part) {
  std::vector<typename I::Obj> b;
  for (int i = lo; i <= hi + 1; ++i)
    b.push_back(i == lo || i == hi + 1 ? ins.initial() : ins.random_object(rng, max_part));
  ChainComplex<I> x{lo, hi, {}, {}, {}};
  std::vector<typename I::Mor> upper;
  for (int i = lo; i <= hi; ++i) {
    auto k = static_cast<std::size_t>(i - lo);
    auto c = ins.coproduct(b[k + 1], b[k]);
    x.deg.push_back(c.obj);
    x.img.push_back(c.inr);
    x.diff.push_back(i == lo ? ins.identity(ins.initial()) : upper.back());
    upper.push_back(c.inl);
  }
  validate(ins, x);
  return rename(ins, rng, x).dst;
}

// Union of random pairs (b, d b) of an exact complex. Such unions are exact
// and are both m- and e-subcomplexes.
template <class I>
Masks exact_pieces(const I& ins, Rng& rng, const ChainComplex<I>& w) {
  Masks s = full_masks(ins, w, false);
  for (int i = w.lo + 1; i <= w.hi; ++i) {
    auto k = static_cast<std::size_t>(i - w.lo);
    auto pick = ins.random_summand(rng, ins.dom(w.inc(i)));
    const auto& inc = ins.fun(w.inc(i));
    const auto& d = ins.fun(w.d(i));
    for (std::size_t q = 0; q < pick.size(); ++q)
      if (pick[q]) {
        s[k][inc.at(q)] = true;
        s[k - 1][d.at(q)] = true;
      }
  }
  return s;
}

template <class I>
struct Extension {
  ChainComplex<I> mid;
  ChainMap<I> m;  // K -> mid
  ChainMap<I> e;  // Z -> mid
};

// Every kernel-cokernel sequence K -> Y <- Z arises this way: Y_i = K_i + Z_i,
// Ybar_i = Kbar_i + Zbar_i + W_i where W_i is a summand of the non-image,
// non-hit part of Z_i whose differential goes into K_{i-1}.
template <class I>
Extension<I> glue(const I& ins, Rng& rng, const ChainComplex<I>& k0, const ChainComplex<I>& z0) {
  auto [k, z] = align(ins, k0, z0);
  ChainComplex<I> y{k.lo, k.hi, {}, {}, {}};
  ChainMap<I> km{MapKind::M, k, {}, {}, {}}, ze{MapKind::E, z, {}, {}, {}};
  std::vector<typename I::Coproduct> cop;
  for (int i = k.lo; i <= k.hi; ++i) cop.push_back(ins.coproduct(k.X(i), z.X(i)));
  for (int i = k.lo; i <= k.hi; ++i) {
    auto idx = static_cast<std::size_t>(i - k.lo);
    const auto& c = cop[idx];
    Mask w(ins.carrier(z.X(i)).size(), false);
    std::optional<typename I::Mor> wd;
    if (i > k.lo) {
      auto forbid = image_part(ins, z, i);
      if (i < k.hi) forbid = forbid | ins.fun(z.d(i + 1)).image_mask();
      w = summand_inside(ins, z.X(i), ins.random_summand(rng, z.X(i)) & ~forbid);
      auto free = ins.complement(k.inc(i - 1));
      auto wobj = ins.dom(ins.sub(z.X(i), w));
      wd = random_map(ins, rng, wobj, ins.dom(free));
      if (!wd) {
        w.assign(w.size(), false);
        wd = initial_map(ins, ins.dom(free));
      }
      wd = ins.compose(free, *wd);
    }
    const auto& cf = ins.fun(c.inl);
    const auto& cg = ins.fun(c.inr);
    Mask bar(ins.carrier(c.obj).size(), false);
    for (auto q : ins.fun(k.inc(i)).indices()) bar[cf.at(q)] = true;
    for (auto q : ins.fun(z.inc(i)).indices()) bar[cg.at(q)] = true;
    std::vector<std::size_t> wpos;
    for (std::size_t q = 0; q < w.size(); ++q)
      if (w[q]) {
        bar[cg.at(q)] = true;
        wpos.push_back(q);
      }
    auto inc = ins.sub(c.obj, bar);
    const auto& ifun = ins.fun(inc);
    std::vector<std::size_t> from_k(bar.size(), SIZE_MAX), from_z(bar.size(), SIZE_MAX);
    for (std::size_t q = 0; q < cf.dom().size(); ++q) from_k[cf.at(q)] = q;
    for (std::size_t q = 0; q < cg.dom().size(); ++q) from_z[cg.at(q)] = q;
    const auto& kinc = ins.fun(k.inc(i));
    const auto& zinc = ins.fun(z.inc(i));
    std::vector<std::size_t> dv(ifun.dom().size());
    for (std::size_t q = 0; q < dv.size(); ++q) {
      auto p = ifun.at(q);
      if (from_k[p] != SIZE_MAX) {
        auto kq = *kinc.preimage(from_k[p]);
        dv[q] = ins.fun(cop[idx - 1].inl).at(ins.fun(k.d(i)).at(kq));
      } else if (auto zq = zinc.preimage(from_z[p])) {
        dv[q] = ins.fun(cop[idx - 1].inr).at(ins.fun(z.d(i)).at(*zq));
      } else {
        auto wq = static_cast<std::size_t>(std::lower_bound(wpos.begin(), wpos.end(), from_z[p]) - wpos.begin());
        dv[q] = ins.fun(cop[idx - 1].inl).at(ins.fun(*wd).at(wq));
      }
    }
    y.deg.push_back(c.obj);
    y.img.push_back(inc);
    auto ybar = ins.dom(inc);
    auto target = i == k.lo ? ins.initial() : cop[idx - 1].obj;
    y.diff.push_back(ins.lift(ybar, target, SetFun(ins.carrier(ybar), ins.carrier(target), dv)));
    km.f.push_back(c.inl);
    km.fbar.push_back(*ins.factor(ins.compose(c.inl, k.inc(i)), inc));
    ze.f.push_back(c.inr);
    ze.fbar.push_back(*ins.factor(ins.compose(c.inr, z.inc(i)), inc));
  }
  y = validate(ins, y);
  km.dst = ze.dst = y;
  km = validate_map(ins, km);
  ze = validate_map(ins, ze);
  auto r = rename(ins, rng, y);
  auto re = r;
  re.kind = MapKind::E;
  return {r.dst, compose(ins, r, km), compose(ins, re, ze)};
}

}  // namespace ecgw::chaingen

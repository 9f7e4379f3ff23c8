#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "ecgw/cgw.hpp"

namespace ecgw {

// Bounded complex on the window [lo, hi]; degrees outside are initial.
// img[i] is the summand Xbar_i -> X_i and diff[i] the differential Xbar_i -> X_{i-1}.
template <class I>
struct ChainComplex {
  using Obj = typename I::Obj;
  using Mor = typename I::Mor;

  int lo = 0, hi = -1;
  std::vector<Obj> deg;
  std::vector<Mor> img;
  std::vector<Mor> diff;

  bool in_window(int i) const { return lo <= i && i <= hi; }
  std::size_t pos(int i) const {
    if (!in_window(i))
      throw Error(ErrorKind::IndexOutOfWindow, "window [" + std::to_string(lo) + "," + std::to_string(hi) + "]", i);
    return static_cast<std::size_t>(i - lo);
  }
  const Obj& X(int i) const { return deg[pos(i)]; }
  const Mor& inc(int i) const { return img[pos(i)]; }
  const Mor& d(int i) const { return diff[pos(i)]; }
  int length() const { return hi - lo + 1; }

  bool operator==(const ChainComplex&) const = default;
};

template <class I>
typename I::Obj obj_at(const I& ins, const ChainComplex<I>& x, int i) {
  return x.in_window(i) ? x.X(i) : ins.initial();
}

template <class I>
typename I::Obj bar_at(const I& ins, const ChainComplex<I>& x, int i) {
  return x.in_window(i) ? ins.dom(x.inc(i)) : ins.initial();
}

template <class I>
std::string describe(const I& ins, const ChainComplex<I>& x) {
  std::string s = "[" + std::to_string(x.lo) + "," + std::to_string(x.hi) + "]";
  for (int i = x.lo; i <= x.hi; ++i)
    s += " X" + std::to_string(i) + "=" + to_string(ins.carrier(x.X(i))) + " bar=" + to_string(ins.fun(x.inc(i))) +
         " d=" + to_string(ins.fun(x.d(i)));
  return s;
}

template <class I>
ChainComplex<I> validate(const I& ins, const ChainComplex<I>& x) {
  if (x.hi < x.lo - 1) throw Error(ErrorKind::MalformedComplex, "window bounds reversed");
  auto n = static_cast<std::size_t>(x.length());
  if (x.deg.size() != n || x.img.size() != n || x.diff.size() != n)
    throw Error(ErrorKind::MalformedComplex, "window length does not match the data");
  for (int i = x.lo; i <= x.hi; ++i) {
    const auto& m = x.inc(i);
    if (!(ins.cod(m) == x.X(i))) throw Error(ErrorKind::MalformedComplex, "image does not land in its degree", i);
    if (!ins.is_coproduct_inclusion(m)) throw Error(ErrorKind::MalformedComplex, "image is not a summand", i);
    const auto& d = x.d(i);
    if (!(ins.dom(d) == ins.dom(m))) throw Error(ErrorKind::MalformedComplex, "differential not defined on the image", i);
    if (!(ins.cod(d) == obj_at(ins, x, i - 1)))
      throw Error(ErrorKind::MalformedComplex, "differential does not land in the degree below", i);
  }
  for (int i = x.lo; i < x.hi; ++i) {
    auto hit = ins.fun(x.d(i + 1)).image_mask();
    auto in = ins.fun(x.inc(i)).image_mask();
    for (std::size_t k = 0; k < hit.size(); ++k)
      if (hit[k] && in[k]) throw Error(ErrorKind::ChainConditionViolated, "image of d meets the image part", i);
  }
  return x;
}

// Complex on [lo, hi] with every degree initial.
template <class I>
ChainComplex<I> empty_complex(const I& ins, int lo = 0, int hi = -1) {
  ChainComplex<I> x{lo, hi, {}, {}, {}};
  auto e = ins.initial();
  for (int i = lo; i <= hi; ++i) {
    x.deg.push_back(e);
    x.img.push_back(ins.identity(e));
    x.diff.push_back(ins.identity(e));
  }
  return x;
}

template <class I>
bool is_empty_complex(const I& ins, const ChainComplex<I>& x) {
  for (const auto& o : x.deg)
    if (!ins.carrier(o).empty()) return false;
  return true;
}

// Pad with initial degrees so the window becomes [lo, hi].
template <class I>
ChainComplex<I> widen(const I& ins, const ChainComplex<I>& x, int lo, int hi) {
  if (x.lo > x.hi) return empty_complex(ins, lo, hi);
  if (lo > x.lo || hi < x.hi) throw Error(ErrorKind::IndexOutOfWindow, "cannot shrink a window by widening");
  ChainComplex<I> out{lo, hi, {}, {}, {}};
  auto e = ins.initial();
  for (int i = lo; i <= hi; ++i) {
    if (x.in_window(i)) {
      out.deg.push_back(x.X(i));
      out.img.push_back(x.inc(i));
      out.diff.push_back(x.d(i));
    } else {
      out.deg.push_back(e);
      out.img.push_back(ins.identity(e));
      out.diff.push_back(initial_map(ins, obj_at(ins, out, i - 1)));
    }
  }
  return out;
}

// Builds a complex from degree objects, summand masks for the images and the
// underlying set maps of the differentials.
template <class I>
ChainComplex<I> assemble(const I& ins, int lo, const std::vector<typename I::Obj>& deg,
                         const std::vector<std::vector<bool>>& bar, const std::vector<SetFun>& diff) {
  if (bar.size() != deg.size() || diff.size() != deg.size())
    throw Error(ErrorKind::MalformedComplex, "degree, image and differential counts differ");
  ChainComplex<I> x{lo, lo + static_cast<int>(deg.size()) - 1, deg, {}, {}};
  for (std::size_t k = 0; k < deg.size(); ++k) {
    int i = lo + static_cast<int>(k);
    if (bar[k].size() != ins.carrier(deg[k]).size()) throw Error(ErrorKind::MalformedComplex, "image mask size", i);
    try {
      x.img.push_back(ins.sub(deg[k], bar[k]));
      x.diff.push_back(ins.lift(ins.dom(x.img.back()), obj_at(ins, x, i - 1), diff[k]));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ChainConditionViolated) throw;
      throw Error(ErrorKind::MalformedComplex, e.what(), i);
    }
  }
  return validate(ins, x);
}

template <class I>
ChainComplex<I> concentrated(const I& ins, const typename I::Obj& a, int n) {
  ChainComplex<I> x{n, n, {a}, {initial_map(ins, a)}, {ins.identity(ins.initial())}};
  return validate(ins, x);
}

enum class MapKind { M, E };

inline const char* kind_tag(MapKind k) { return k == MapKind::M ? "m" : "e"; }

// Chain m- or e-morphism: injections f_i on degrees and fbar_i on images,
// with source and target on the window of the map.
template <class I>
struct ChainMap {
  using Mor = typename I::Mor;

  MapKind kind = MapKind::M;
  ChainComplex<I> src, dst;
  std::vector<Mor> f, fbar;

  int lo() const { return src.lo; }
  int hi() const { return src.hi; }
  const Mor& at(int i) const { return f[src.pos(i)]; }
  const Mor& bar(int i) const { return fbar[src.pos(i)]; }

  bool operator==(const ChainMap&) const = default;
};

// f_i, with the unique map between initial objects outside the window.
template <class I>
typename I::Mor map_at(const I& ins, const ChainMap<I>& m, int i) {
  return m.src.in_window(i) ? m.at(i) : ins.identity(ins.initial());
}

template <class I>
std::pair<ChainComplex<I>, ChainComplex<I>> align(const I& ins, const ChainComplex<I>& x, const ChainComplex<I>& y) {
  if (x.lo > x.hi && y.lo > y.hi) return {x, y};
  int lo = x.lo > x.hi ? y.lo : (y.lo > y.hi ? x.lo : std::min(x.lo, y.lo));
  int hi = x.lo > x.hi ? y.hi : (y.lo > y.hi ? x.hi : std::max(x.hi, y.hi));
  return {widen(ins, x, lo, hi), widen(ins, y, lo, hi)};
}

template <class I>
ChainMap<I> validate_map(const I& ins, const ChainMap<I>& m) {
  const auto &x = m.src, &y = m.dst;
  if (x.lo != y.lo || x.hi != y.hi) throw Error(ErrorKind::MalformedComplex, "source and target windows differ");
  auto n = static_cast<std::size_t>(x.length());
  if (m.f.size() != n || m.fbar.size() != n) throw Error(ErrorKind::MalformedComplex, "map does not cover the window");
  for (int i = x.lo; i <= x.hi; ++i) {
    const auto &f = m.at(i), &fb = m.bar(i);
    if (!(ins.dom(f) == x.X(i)) || !(ins.cod(f) == y.X(i)) || !(ins.dom(fb) == ins.dom(x.inc(i))) ||
        !(ins.cod(fb) == ins.dom(y.inc(i))))
      throw Error(ErrorKind::MalformedComplex, "component has the wrong source or target", i);
    if (!ins.is_coproduct_inclusion(f) || !ins.is_coproduct_inclusion(fb))
      throw Error(ErrorKind::NotCoproductInclusion, "component", i);
    Square<I> left{fb, x.inc(i), y.inc(i), f};
    Square<I> right{fb, x.d(i), y.d(i), map_at(ins, m, i - 1)};
    auto cl = classify(ins, left), cr = classify(ins, right);
    if (!cl.commutes) throw Error(ErrorKind::SquareNotCommuting, "image square", i);
    if (!cr.commutes) throw Error(ErrorKind::SquareNotCommuting, "differential square", i);
    if (m.kind == MapKind::M && !cl.pullback) throw Error(ErrorKind::NotPullback, "image is not the preimage", i);
    if (m.kind == MapKind::E && !cr.pullback) throw Error(ErrorKind::NotPullback, "image is not the full preimage", i);
  }
  return m;
}

template <class I>
ChainMap<I> identity_map(const I& ins, const ChainComplex<I>& x, MapKind kind) {
  ChainMap<I> m{kind, x, x, {}, {}};
  for (int i = x.lo; i <= x.hi; ++i) {
    m.f.push_back(ins.identity(x.X(i)));
    m.fbar.push_back(ins.identity(ins.dom(x.inc(i))));
  }
  return m;
}

// The unique map from the all-initial complex on the window of y.
template <class I>
ChainMap<I> from_empty(const I& ins, const ChainComplex<I>& y, MapKind kind) {
  ChainMap<I> m{kind, empty_complex(ins, y.lo, y.hi), y, {}, {}};
  for (int i = y.lo; i <= y.hi; ++i) {
    m.f.push_back(initial_map(ins, y.X(i)));
    m.fbar.push_back(initial_map(ins, ins.dom(y.inc(i))));
  }
  return validate_map(ins, m);
}

template <class I>
ChainMap<I> widen_map(const I& ins, const ChainMap<I>& m, int lo, int hi) {
  ChainMap<I> out{m.kind, widen(ins, m.src, lo, hi), widen(ins, m.dst, lo, hi), {}, {}};
  for (int i = lo; i <= hi; ++i) {
    if (m.src.in_window(i)) {
      out.f.push_back(m.at(i));
      out.fbar.push_back(m.bar(i));
    } else {
      out.f.push_back(ins.identity(ins.initial()));
      out.fbar.push_back(ins.identity(ins.initial()));
    }
  }
  return out;
}

template <class I>
ChainMap<I> compose(const I& ins, const ChainMap<I>& g, const ChainMap<I>& f) {
  if (g.kind != f.kind) throw Error(ErrorKind::NotComposable, "chain maps of different kinds");
  int lo = std::min(f.lo(), g.lo()), hi = std::max(f.hi(), g.hi());
  auto fw = widen_map(ins, f, lo, hi), gw = widen_map(ins, g, lo, hi);
  if (!(fw.dst == gw.src)) throw Error(ErrorKind::NotComposable, "target and source complexes differ");
  ChainMap<I> out{f.kind, fw.src, gw.dst, {}, {}};
  for (int i = lo; i <= hi; ++i) {
    out.f.push_back(ins.compose(gw.at(i), fw.at(i)));
    out.fbar.push_back(ins.compose(gw.bar(i), fw.bar(i)));
  }
  return out;
}

// Degreewise invertible; then the image components are invertible as well.
template <class I>
bool is_chain_iso(const I& ins, const ChainMap<I>& m) {
  for (int i = m.lo(); i <= m.hi(); ++i)
    if (!ins.fun(m.at(i)).bijective()) return false;
  return true;
}

// Two maps into the same complex with the same images in every degree and image part.
template <class I>
bool same_subcomplex(const I& ins, const ChainMap<I>& a, const ChainMap<I>& b) {
  if (!(a.dst == b.dst)) return false;
  for (int i = a.lo(); i <= a.hi(); ++i)
    if (!same_subobject(ins, a.at(i), b.at(i)) || !same_subobject(ins, a.bar(i), b.bar(i))) return false;
  return true;
}

template <class I>
struct ChainComplemented {
  ChainComplex<I> obj;
  ChainMap<I> map;
};

// Cokernel of an m-map f: X -> Y: Z_i = Y_i \ f(X_i), and the image part keeps
// the points of Ybar_i whose differential avoids f(X_{i-1}).
template <class I>
ChainComplemented<I> coker_chain(const I& ins, const ChainMap<I>& f) {
  if (f.kind != MapKind::M) throw Error(ErrorKind::ValidationError, "cokernel needs a chain m-map");
  const auto& y = f.dst;
  ChainComplex<I> z{y.lo, y.hi, {}, {}, {}};
  ChainMap<I> g{MapKind::E, {}, y, {}, {}};
  for (int i = y.lo; i <= y.hi; ++i) {
    auto gi = ins.complement(f.at(i));
    auto below = ins.fun(map_at(ins, f, i - 1)).image_mask();
    const auto& dy = ins.fun(y.d(i));
    std::vector<bool> keep(dy.dom().size());
    for (std::size_t k = 0; k < keep.size(); ++k) keep[k] = !below[dy.at(k)];
    auto gb = ins.sub(ins.dom(y.inc(i)), keep);
    auto prev = i == y.lo ? ins.identity(ins.initial()) : g.f.back();
    z.deg.push_back(ins.dom(gi));
    z.img.push_back(*ins.factor(ins.compose(y.inc(i), gb), gi));
    z.diff.push_back(*ins.factor(ins.compose(y.d(i), gb), prev));
    g.f.push_back(gi);
    g.fbar.push_back(gb);
  }
  g.src = validate(ins, z);
  return {g.src, validate_map(ins, g)};
}

// Kernel of an e-map g: Z -> Y: K_i = Y_i \ g(Z_i) and Kbar_i = Ybar_i \ g(Z_i).
template <class I>
ChainComplemented<I> ker_chain(const I& ins, const ChainMap<I>& g) {
  if (g.kind != MapKind::E) throw Error(ErrorKind::ValidationError, "kernel needs a chain e-map");
  const auto& y = g.dst;
  ChainComplex<I> k{y.lo, y.hi, {}, {}, {}};
  ChainMap<I> f{MapKind::M, {}, y, {}, {}};
  for (int i = y.lo; i <= y.hi; ++i) {
    auto ki = ins.complement(g.at(i));
    auto in_z = ins.fun(g.at(i)).image_mask();
    const auto& inc = ins.fun(y.inc(i));
    std::vector<bool> keep(inc.dom().size());
    for (std::size_t j = 0; j < keep.size(); ++j) keep[j] = !in_z[inc.at(j)];
    auto kb = ins.sub(ins.dom(y.inc(i)), keep);
    auto prev = i == y.lo ? ins.identity(ins.initial()) : f.f.back();
    k.deg.push_back(ins.dom(ki));
    k.img.push_back(*ins.factor(ins.compose(y.inc(i), kb), ki));
    auto dk = ins.factor(ins.compose(y.d(i), kb), prev);
    if (!dk) throw Error(ErrorKind::NotPullback, "differential leaves the kernel", i);
    k.diff.push_back(*dk);
    f.f.push_back(ki);
    f.fbar.push_back(kb);
  }
  f.src = validate(ins, k);
  return {f.src, validate_map(ins, f)};
}

// The map S -> T obtained by restricting h: Y -> Y' along s: S -> Y and t: T -> Y'.
template <class I>
ChainMap<I> induce(const I& ins, MapKind kind, const ChainMap<I>& h, const ChainMap<I>& s, const ChainMap<I>& t) {
  if (!(s.dst == h.src) || !(t.dst == h.dst)) throw Error(ErrorKind::NotComposable, "induce: complexes differ");
  ChainMap<I> out{kind, s.src, t.src, {}, {}};
  for (int i = h.lo(); i <= h.hi(); ++i) {
    auto a = ins.factor(ins.compose(h.at(i), s.at(i)), t.at(i));
    auto b = ins.factor(ins.compose(h.bar(i), s.bar(i)), t.bar(i));
    if (!a || !b) throw Error(ErrorKind::MalformedSquare, "no induced component", i);
    out.f.push_back(*a);
    out.fbar.push_back(*b);
  }
  return validate_map(ins, out);
}

template <class I>
bool is_kernel_cokernel_pair(const I& ins, const ChainMap<I>& m, const ChainMap<I>& e) {
  if (m.kind != MapKind::M || e.kind != MapKind::E || !(m.dst == e.dst)) return false;
  return same_subcomplex(ins, coker_chain(ins, m).map, e);
}

// Square of chain maps, laid out as Square<I>.
template <class I>
struct ChainSquare {
  ChainMap<I> top, left, right, bottom;
};

template <class I>
void check_shape(const I&, const ChainSquare<I>& s) {
  if (!(s.top.src == s.left.src) || !(s.top.dst == s.right.src) || !(s.left.dst == s.bottom.src) ||
      !(s.right.dst == s.bottom.dst))
    throw Error(ErrorKind::MalformedSquare, "chain square corners do not match");
}

// Pullback in every degree and image part; distinguished when, in addition,
// every degree square is distinguished.
template <class I>
SquareClass classify(const I& ins, const ChainSquare<I>& s) {
  check_shape(ins, s);
  SquareClass c{true, true, true};
  for (int i = s.top.lo(); i <= s.top.hi(); ++i) {
    auto cd = classify(ins, Square<I>{s.top.at(i), s.left.at(i), s.right.at(i), s.bottom.at(i)});
    auto cb = classify(ins, Square<I>{s.top.bar(i), s.left.bar(i), s.right.bar(i), s.bottom.bar(i)});
    c.commutes = c.commutes && cd.commutes && cb.commutes;
    c.pullback = c.pullback && cd.pullback && cb.pullback;
    c.distinguished = c.distinguished && cd.distinguished;
  }
  c.distinguished = c.distinguished && c.pullback;
  return c;
}

enum class Side { Cokernels, Kernels };

// Pseudo-commutative square -> good square of the opposite role: cokernels of
// the m-rows with the induced e-map, or kernels of the e-columns with the
// induced m-map.
template <class I>
ChainSquare<I> transport_square(const I& ins, const ChainSquare<I>& s, Side side) {
  if (s.top.kind != MapKind::M || s.bottom.kind != MapKind::M || s.left.kind != MapKind::E ||
      s.right.kind != MapKind::E)
    throw Error(ErrorKind::MalformedSquare, "expected m-rows and e-columns");
  if (!classify(ins, s).pullback) throw Error(ErrorKind::MalformedSquare, "square is not pseudo-commutative");
  if (side == Side::Cokernels) {
    auto ct = coker_chain(ins, s.top), cb = coker_chain(ins, s.bottom);
    auto t = induce(ins, MapKind::E, s.right, ct.map, cb.map);
    return {ct.map, t, s.right, cb.map};
  }
  auto kl = ker_chain(ins, s.left), kr = ker_chain(ins, s.right);
  auto t = induce(ins, MapKind::M, s.bottom, kl.map, kr.map);
  return {t, kl.map, kr.map, s.bottom};
}

// Inverse of transport_square.
template <class I>
ChainSquare<I> restore_square(const I& ins, const ChainSquare<I>& g, Side side) {
  if (!classify(ins, g).pullback) throw Error(ErrorKind::MalformedSquare, "square is not good");
  if (side == Side::Cokernels) {
    auto a = ker_chain(ins, g.top), c = ker_chain(ins, g.bottom);
    auto left = induce(ins, MapKind::E, g.right, a.map, c.map);
    return {a.map, left, g.right, c.map};
  }
  auto cl = coker_chain(ins, g.left), cr = coker_chain(ins, g.right);
  auto top = induce(ins, MapKind::M, g.bottom, cl.map, cr.map);
  return {top, cl.map, cr.map, g.bottom};
}

template <class I>
struct ChainStar {
  ChainComplex<I> obj;
  ChainMap<I> inB, inC;
  ChainSquare<I> square;
};

// Star-pushout of an m-span, built degreewise and on image parts.
template <class I>
ChainStar<I> star_chain_m(const I& ins, const ChainMap<I>& f0, const ChainMap<I>& g0) {
  if (f0.kind != MapKind::M || g0.kind != MapKind::M) throw Error(ErrorKind::NotCoproductInclusion, "span of m-maps expected");
  int lo = std::min(f0.lo(), g0.lo()), hi = std::max(f0.hi(), g0.hi());
  auto f = widen_map(ins, f0, lo, hi), g = widen_map(ins, g0, lo, hi);
  if (!(f.src == g.src)) throw Error(ErrorKind::NotComposable, "span legs have different sources");
  const auto &y = f.dst, &z = g.dst;
  ChainComplex<I> p{lo, hi, {}, {}, {}};
  ChainMap<I> inB{MapKind::M, y, {}, {}, {}}, inC{MapKind::M, z, {}, {}, {}};
  auto e = ins.identity(ins.initial());
  for (int i = lo; i <= hi; ++i) {
    auto s = star_m(ins, f.at(i), g.at(i));
    auto sb = star_m(ins, f.bar(i), g.bar(i));
    auto ib = i == lo ? e : inB.f.back();
    auto ic = i == lo ? e : inC.f.back();
    auto im = mediating(ins, sb, ins.compose(s.inB, y.inc(i)), ins.compose(s.inC, z.inc(i)));
    auto d = mediating(ins, sb, ins.compose(ib, y.d(i)), ins.compose(ic, z.d(i)));
    if (!im || !d) throw Error(ErrorKind::StarPushoutMissing, "legs disagree on the common part", i);
    p.deg.push_back(s.obj);
    p.img.push_back(*im);
    p.diff.push_back(*d);
    inB.f.push_back(s.inB);
    inB.fbar.push_back(sb.inB);
    inC.f.push_back(s.inC);
    inC.fbar.push_back(sb.inC);
  }
  p = validate(ins, p);
  inB.dst = inC.dst = p;
  inB = validate_map(ins, inB);
  inC = validate_map(ins, inC);
  return {p, inB, inC, {f, g, inB, inC}};
}

// Star-pushout of an e-span inside a good witness square: unions of images,
// degreewise and on image parts.
template <class I>
ChainStar<I> star_chain_e(const I& ins, const ChainMap<I>& f, const ChainMap<I>& g, const ChainSquare<I>& w) {
  if (!(w.top == f) || !(w.left == g)) throw Error(ErrorKind::SquareNotGood, "witness does not contain the span");
  if (f.kind != MapKind::E || g.kind != MapKind::E || w.right.kind != MapKind::E || w.bottom.kind != MapKind::E)
    throw Error(ErrorKind::SquareNotGood, "witness is not a square of e-maps");
  if (!classify(ins, w).pullback) throw Error(ErrorKind::SquareNotGood, "witness is not good");
  const auto& wd = w.right.dst;
  ChainComplex<I> p{wd.lo, wd.hi, {}, {}, {}};
  ChainMap<I> inB{MapKind::E, f.dst, {}, {}, {}}, inC{MapKind::E, g.dst, {}, {}, {}};
  std::vector<typename I::Mor> subs;
  for (int i = wd.lo; i <= wd.hi; ++i) {
    auto j = image_union(ins, w.right.at(i), w.bottom.at(i));
    auto jb = image_union(ins, w.right.bar(i), w.bottom.bar(i));
    auto prev = i == wd.lo ? ins.identity(ins.initial()) : subs.back();
    auto im = ins.factor(ins.compose(wd.inc(i), jb), j);
    auto d = ins.factor(ins.compose(wd.d(i), jb), prev);
    if (!im || !d) throw Error(ErrorKind::SquareNotGood, "union is not a subcomplex", i);
    p.deg.push_back(ins.dom(j));
    p.img.push_back(*im);
    p.diff.push_back(*d);
    inB.f.push_back(*ins.factor(w.right.at(i), j));
    inB.fbar.push_back(*ins.factor(w.right.bar(i), jb));
    inC.f.push_back(*ins.factor(w.bottom.at(i), j));
    inC.fbar.push_back(*ins.factor(w.bottom.bar(i), jb));
    subs.push_back(j);
  }
  p = validate(ins, p);
  inB.dst = inC.dst = p;
  inB = validate_map(ins, inB);
  inC = validate_map(ins, inC);
  return {p, inB, inC, {f, g, inB, inC}};
}

enum class Truncation { DropTop, KeepTop };

template <class I>
ChainComplex<I> truncate(const I& ins, const ChainComplex<I>& x, Truncation mode) {
  if (x.lo > x.hi) throw Error(ErrorKind::IndexOutOfWindow, "empty window");
  if (mode == Truncation::KeepTop) return concentrated(ins, x.X(x.hi), x.hi);
  ChainComplex<I> out = x;
  --out.hi;
  out.deg.pop_back();
  out.img.pop_back();
  out.diff.pop_back();
  return validate(ins, out);
}

// FX -> X <- GX for the top-degree truncation, both on the window of X.
template <class I>
std::pair<ChainMap<I>, ChainMap<I>> truncation_pair(const I& ins, const ChainComplex<I>& x) {
  auto fx = widen(ins, truncate(ins, x, Truncation::DropTop), x.lo, x.hi);
  auto gx = widen(ins, truncate(ins, x, Truncation::KeepTop), x.lo, x.hi);
  ChainMap<I> f{MapKind::M, fx, x, {}, {}}, g{MapKind::E, gx, x, {}, {}};
  for (int i = x.lo; i <= x.hi; ++i) {
    auto bar = ins.dom(x.inc(i));
    bool top = i == x.hi;
    f.f.push_back(top ? initial_map(ins, x.X(i)) : ins.identity(x.X(i)));
    f.fbar.push_back(top ? initial_map(ins, bar) : ins.identity(bar));
    g.f.push_back(top ? ins.identity(x.X(i)) : initial_map(ins, x.X(i)));
    g.fbar.push_back(initial_map(ins, bar));
  }
  return {validate_map(ins, f), validate_map(ins, g)};
}

// Isomorphism of complexes, ignoring the window: points of all degrees are
// coloured by degree and image membership, with the action rows and the
// differential (sent to a sink off the image part) as operations.
template <class I>
bool chain_isomorphic(const I& ins, const ChainComplex<I>& a, const ChainComplex<I>& b) {
  auto encode = [&](const ChainComplex<I>& x, detail::Table& rows, std::vector<std::size_t>& colour) {
    std::vector<std::size_t> offset;
    std::size_t n = 0;
    for (int i = x.lo; i <= x.hi; ++i) {
      offset.push_back(n);
      n += ins.carrier(x.X(i)).size();
    }
    std::size_t sink = n;
    colour.assign(n + 1, 0);
    std::size_t arity = ins.actions(ins.initial()).size();
    rows.assign(arity + 1, std::vector<std::size_t>(n + 1, sink));
    for (int i = x.lo; i <= x.hi; ++i) {
      auto o = offset[static_cast<std::size_t>(i - x.lo)];
      const auto& act = ins.actions(x.X(i));
      auto sz = ins.carrier(x.X(i)).size();
      for (std::size_t r = 0; r < arity; ++r)
        for (std::size_t p = 0; p < sz; ++p) rows[r][o + p] = o + act[r][p];
      for (std::size_t p = 0; p < sz; ++p) colour[o + p] = 2 * static_cast<std::size_t>(i + 1000) + 1;
      const auto& inc = ins.fun(x.inc(i));
      const auto& d = ins.fun(x.d(i));
      for (std::size_t q = 0; q < inc.dom().size(); ++q) {
        colour[o + inc.at(q)] = 2 * static_cast<std::size_t>(i + 1000) + 2;
        if (i > x.lo) rows[arity][o + inc.at(q)] = offset[static_cast<std::size_t>(i - 1 - x.lo)] + d.at(q);
      }
    }
    for (std::size_t r = 0; r <= arity; ++r) rows[r][sink] = sink;
  };
  detail::Table ra, rb;
  std::vector<std::size_t> ca, cb;
  encode(a, ra, ca);
  encode(b, rb, cb);
  return detail::isomorphic(ra, ca, rb, cb);
}

}  // namespace ecgw

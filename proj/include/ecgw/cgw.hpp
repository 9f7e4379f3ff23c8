#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ecgw/extcat.hpp"

namespace ecgw {

// A square of injections
//   A --top--> B
//   |          |
//  left      right
//   v          v
//   C -bottom> D
// Mixed squares read top/bottom as m-morphisms and left/right as e-morphisms;
// homogeneous squares use one role throughout.
template <class I>
struct Square {
  typename I::Mor top, left, right, bottom;
  bool operator==(const Square&) const = default;
};

struct SquareClass {
  bool commutes = false;
  bool pullback = false;  // pseudo-commutative for mixed squares, good for homogeneous ones
  bool distinguished = false;
};

template <class I>
std::string to_string(const I& ins, const Square<I>& s) {
  return "top=" + to_string(ins.fun(s.top)) + " left=" + to_string(ins.fun(s.left)) +
         " right=" + to_string(ins.fun(s.right)) + " bottom=" + to_string(ins.fun(s.bottom));
}

template <class I>
Square<I> transpose(const Square<I>& s) {
  return {s.left, s.top, s.bottom, s.right};
}

template <class I>
void check_shape(const I& ins, const Square<I>& s) {
  if (!(ins.dom(s.top) == ins.dom(s.left)) || !(ins.cod(s.top) == ins.dom(s.right)) ||
      !(ins.cod(s.left) == ins.dom(s.bottom)) || !(ins.cod(s.right) == ins.cod(s.bottom)))
    throw Error(ErrorKind::MalformedSquare, to_string(ins, s));
}

template <class I>
SquareClass classify(const I& ins, const Square<I>& s) {
  check_shape(ins, s);
  const auto &t = ins.fun(s.top), &l = ins.fun(s.left), &r = ins.fun(s.right), &b = ins.fun(s.bottom);
  SquareClass c;
  c.commutes = set_square_commutes(t, l, r, b);
  c.pullback = c.commutes && set_square_is_pullback(t, l, r, b);
  if (c.pullback) {
    auto m = r.image_mask();
    auto mb = b.image_mask();
    bool cover = true;
    for (std::size_t i = 0; i < m.size(); ++i) cover = cover && (m[i] || mb[i]);
    c.distinguished = cover;
  }
  return c;
}

template <class I>
bool is_pullback(const I& ins, const Square<I>& s) {
  return classify(ins, s).pullback;
}

template <class I>
bool is_distinguished(const I& ins, const Square<I>& s) {
  return classify(ins, s).distinguished;
}

template <class I>
typename I::Mor initial_map(const I& ins, const typename I::Obj& x) {
  return ins.sub(x, std::vector<bool>(ins.carrier(x).size(), false));
}

template <class I>
typename I::Mor image_of(const I& ins, const typename I::Mor& f) {
  return ins.sub(ins.cod(f), ins.fun(f).image_mask());
}

template <class I>
typename I::Mor image_union(const I& ins, const typename I::Mor& f, const typename I::Mor& g) {
  if (!(ins.cod(f) == ins.cod(g))) throw Error(ErrorKind::NotComposable, "image_union: codomains differ");
  auto m = ins.fun(f).image_mask();
  auto mg = ins.fun(g).image_mask();
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = m[i] || mg[i];
  return ins.sub(ins.cod(f), m);
}

template <class I>
bool same_subobject(const I& ins, const typename I::Mor& f, const typename I::Mor& g) {
  return ins.cod(f) == ins.cod(g) && ins.fun(f).image_mask() == ins.fun(g).image_mask() &&
         ins.carrier(ins.dom(f)).size() == ins.carrier(ins.dom(g)).size();
}

template <class I>
struct Complemented {
  typename I::Mor map;
  Square<I> square;
};

// Kernel of an e-morphism g: A -> B: the square with corners 0, A, B\A, B.
template <class I>
Complemented<I> kernel(const I& ins, const typename I::Mor& g) {
  auto k = ins.complement(g);
  auto z = initial_map(ins, ins.dom(g));
  auto zk = initial_map(ins, ins.dom(k));
  return {k, Square<I>{z, zk, g, k}};
}

// Cokernel of an m-morphism f: A -> B: the square with corners 0, B\A, A, B.
template <class I>
Complemented<I> cokernel(const I& ins, const typename I::Mor& f) {
  auto c = ins.complement(f);
  auto z = initial_map(ins, ins.dom(f));
  auto zc = initial_map(ins, ins.dom(c));
  return {c, Square<I>{zc, z, c, f}};
}

// Replace the two vertical legs by their complements; the top of the result
// is the induced map C\A -> D\B. Needs a pullback square.
template <class I>
Square<I> complement_columns(const I& ins, const Square<I>& s) {
  if (!classify(ins, s).pullback) throw Error(ErrorKind::MalformedSquare, "not a pullback: " + to_string(ins, s));
  auto kl = ins.complement(s.left);
  auto kr = ins.complement(s.right);
  auto t = ins.factor(ins.compose(s.bottom, kl), kr);
  if (!t) throw Error(ErrorKind::MalformedSquare, "no induced map on complements");
  return {*t, kl, kr, s.bottom};
}

template <class I>
Square<I> k_square(const I& ins, const Square<I>& s) {
  return complement_columns(ins, s);
}

template <class I>
Square<I> c_square(const I& ins, const Square<I>& s) {
  return transpose(complement_columns(ins, transpose(s)));
}

// Distinguishedness read off the complements, as in the defining axiom.
template <class I>
bool kernel_map_iso(const I& ins, const Square<I>& s) {
  return classify(ins, s).pullback && ins.fun(k_square(ins, s).top).bijective();
}

template <class I>
bool cokernel_map_iso(const I& ins, const Square<I>& s) {
  return classify(ins, s).pullback && ins.fun(c_square(ins, s).left).bijective();
}

// Given A -m-> B -e-> C, the distinguished square with D = A u (C\B).
template <class I>
Square<I> complete_distinguished(const I& ins, const typename I::Mor& f, const typename I::Mor& g) {
  if (!(ins.cod(f) == ins.dom(g))) throw Error(ErrorKind::NotComposable, "complete_distinguished");
  auto gf = ins.compose(g, f);
  auto mask = ins.fun(gf).image_mask();
  auto img = ins.fun(g).image_mask();
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = mask[i] || !img[i];
  auto bottom = ins.sub(ins.cod(g), mask);
  auto left = ins.factor(gf, bottom);
  return {f, *left, g, bottom};
}

// Given A -e-> B -m-> C, the mirrored completion with top-right corner A u (C\B).
template <class I>
Square<I> complete_distinguished_mirror(const I& ins, const typename I::Mor& f, const typename I::Mor& g) {
  return transpose(complete_distinguished(ins, f, g));
}

template <class I>
struct StarPushout {
  typename I::Obj obj;
  typename I::Mor inB, inC;
  Square<I> square;
};

// Star-pushout of an m-span B <-f- A -g-> C, built as (B\A) + A + (C\A).
template <class I>
StarPushout<I> star_m(const I& ins, const typename I::Mor& f, const typename I::Mor& g) {
  if (!(ins.dom(f) == ins.dom(g))) throw Error(ErrorKind::NotComposable, "star_m: span legs differ in source");
  if (!ins.is_coproduct_inclusion(f) || !ins.is_coproduct_inclusion(g))
    throw Error(ErrorKind::NotCoproductInclusion, "star_m");
  auto kb = ins.complement(f);
  auto kc = ins.complement(g);
  auto q = ins.coproduct(ins.dom(kb), ins.dom(f));
  auto p = ins.coproduct(q.obj, ins.dom(kc));
  auto csplit = ins.coproduct(ins.dom(kc), ins.dom(g));
  auto inB = ins.compose(p.inl, ins.inverse(ins.copair(q, kb, f)));
  auto toA = ins.compose(p.inl, q.inr);
  auto inC = ins.compose(ins.copair(csplit, p.inr, toA), ins.inverse(ins.copair(csplit, kc, g)));
  return {p.obj, inB, inC, Square<I>{f, g, inB, inC}};
}

// Star-pushout of an e-span inside a witnessing good square: the union of images.
template <class I>
StarPushout<I> star_e(const I& ins, const typename I::Mor& f, const typename I::Mor& g, const Square<I>& witness) {
  if (!(witness.top == f) || !(witness.left == g))
    throw Error(ErrorKind::SquareNotGood, "witness does not contain the span");
  if (!classify(ins, witness).pullback) throw Error(ErrorKind::SquareNotGood, to_string(ins, witness));
  auto j = image_union(ins, witness.right, witness.bottom);
  auto inB = *ins.factor(witness.right, j);
  auto inC = *ins.factor(witness.bottom, j);
  return {ins.dom(j), inB, inC, Square<I>{f, g, inB, inC}};
}

// The map out of a star-pushout determined by maps from B and C, if consistent.
template <class I>
std::optional<typename I::Mor> mediating(const I& ins, const StarPushout<I>& p, const typename I::Mor& toB,
                                         const typename I::Mor& toC) {
  if (!(ins.cod(toB) == ins.cod(toC))) return std::nullopt;
  const auto& P = ins.carrier(p.obj);
  const auto &ib = ins.fun(p.inB), &ic = ins.fun(p.inC), &ub = ins.fun(toB), &uc = ins.fun(toC);
  std::vector<std::size_t> m(P.size(), SIZE_MAX);
  for (std::size_t i = 0; i < ib.dom().size(); ++i) m[ib.at(i)] = ub.at(i);
  for (std::size_t i = 0; i < ic.dom().size(); ++i) {
    auto& slot = m[ic.at(i)];
    if (slot != SIZE_MAX && slot != uc.at(i)) return std::nullopt;
    slot = uc.at(i);
  }
  for (auto v : m)
    if (v == SIZE_MAX) return std::nullopt;
  SetFun u(P, ins.carrier(ins.cod(toB)), std::move(m));
  try {
    return ins.lift(p.obj, ins.cod(toB), u);
  } catch (const Error&) {
    return std::nullopt;
  }
}

// Comparison maps B\A -> P\C and C\A -> P\B.
template <class I>
std::pair<std::optional<typename I::Mor>, std::optional<typename I::Mor>> star_comparisons(const I& ins,
                                                                                          const StarPushout<I>& p) {
  auto kf = ins.complement(p.square.top);
  auto kg = ins.complement(p.square.left);
  auto kc = ins.complement(p.inC);
  auto kb = ins.complement(p.inB);
  return {ins.factor(ins.compose(p.inB, kf), kc), ins.factor(ins.compose(p.inC, kg), kb)};
}

// Cube on vertices 0..7 (bit k set = moved along axis k); edge[k][v] runs
// from v (bit k clear) to v | (1 << k). Only the entries with bit k clear are used.
template <class I>
struct Cube {
  std::array<typename I::Obj, 8> obj;
  std::array<std::array<std::optional<typename I::Mor>, 8>, 3> edge;

  const typename I::Mor& e(int k, int v) const { return *edge[k][v]; }
};

// Face spanned by axes i < j with base vertex v.
template <class I>
Square<I> face(const Cube<I>& c, int i, int j, int v) {
  return {c.e(i, v), c.e(j, v), c.e(j, v | (1 << i)), c.e(i, v | (1 << j))};
}

template <class I>
std::vector<Square<I>> faces(const Cube<I>& c) {
  std::vector<Square<I>> out;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      int k = 3 - i - j;
      out.push_back(face(c, i, j, 0));
      out.push_back(face(c, i, j, 1 << k));
    }
  return out;
}

template <class I>
struct Southern {
  Square<I> square;
  bool good = false;
};

// Southern square along axis k: the induced map between the star-pushouts of
// the two faces transverse to k, over the edge between their far corners.
template <class I>
Southern<I> southern(const I& ins, const Cube<I>& c, int k = 2) {
  for (const auto& f : faces(c))
    if (!classify(ins, f).pullback) throw Error(ErrorKind::SquareNotGood, "cube face: " + to_string(ins, f));
  int i = k == 0 ? 1 : 0;
  int j = k == 2 ? 1 : 2;
  int ek = 1 << k, ei = 1 << i, ej = 1 << j;
  auto s0 = star_m(ins, c.e(i, 0), c.e(j, 0));
  auto s1 = star_m(ins, c.e(i, ek), c.e(j, ek));
  auto sigma = mediating(ins, s0, ins.compose(s1.inB, c.e(k, ei)), ins.compose(s1.inC, c.e(k, ej)));
  auto u0 = mediating(ins, s0, c.e(j, ei), c.e(i, ej));
  auto u1 = mediating(ins, s1, c.e(j, ei | ek), c.e(i, ej | ek));
  if (!sigma || !u0 || !u1) throw Error(ErrorKind::SquareNotGood, "no induced map between star-pushouts");
  Square<I> sq{*sigma, *u0, *u1, c.e(k, ei | ej)};
  auto cls = classify(ins, sq);
  return {sq, cls.pullback && ins.is_coproduct_inclusion(*sigma)};
}

// Take complements of the four edges along axis k. The result has the
// complement objects at the vertices with bit k clear, the original far
// face at the others, and the complement inclusions as its k-edges.
template <class I>
Cube<I> complement_cube(const I& ins, const Cube<I>& c, int k) {
  Cube<I> out;
  int ek = 1 << k;
  for (int v = 0; v < 8; ++v) {
    if (v & ek) continue;
    auto comp = ins.complement(c.e(k, v));
    out.obj[v] = ins.dom(comp);
    out.obj[v | ek] = c.obj[v | ek];
    out.edge[k][v] = comp;
  }
  for (int a = 0; a < 3; ++a) {
    if (a == k) continue;
    for (int v = 0; v < 8; ++v) {
      if (v & (1 << a)) continue;
      if (v & ek) {
        out.edge[a][v] = c.e(a, v);
      } else {
        // side face with columns along k
        Square<I> side{c.e(a, v), c.e(k, v), c.e(k, v | (1 << a)), c.e(a, v | ek)};
        out.edge[a][v] = complement_columns(ins, side).top;
      }
    }
  }
  return out;
}

}  // namespace ecgw

#pragma once

#include <vector>

#include "ecgw/cgw.hpp"

// Random diagrams over an extensive instance. Diagrams are drawn as nested
// summands of one ambient object and then every vertex is renamed, so the
// maps handed to the code under test are not literal subset inclusions.
namespace ecgw::gen {

using Mask = std::vector<bool>;

inline Mask operator&(const Mask& a, const Mask& b) {
  Mask m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = a[i] && b[i];
  return m;
}

inline Mask operator|(const Mask& a, const Mask& b) {
  Mask m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = a[i] || b[i];
  return m;
}

inline Mask operator~(const Mask& a) {
  Mask m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = !a[i];
  return m;
}

inline bool subset(const Mask& a, const Mask& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

inline Mask all(std::size_t n, bool v = true) { return Mask(n, v); }

// Random summand of the ambient lying inside `within`.
template <class I>
Mask summand(const I& ins, Rng& rng, const typename I::Obj& u, const Mask& within) {
  return ins.random_summand(rng, u) & within;
}

template <class I>
Mask summand(const I& ins, Rng& rng, const typename I::Obj& u) {
  return ins.random_summand(rng, u);
}

// A freshly named object together with its embedding into the ambient.
template <class I>
typename I::Mor embed(const I& ins, Rng& rng, const typename I::Obj& u, const Mask& mask) {
  auto s = ins.sub(u, mask);
  auto r = ins.rename(rng, ins.dom(s));
  return ins.compose(s, ins.inverse(r));
}

// The map X -> Y between two embedded objects with im x inside im y.
template <class I>
typename I::Mor between(const I& ins, const typename I::Mor& x, const typename I::Mor& y) {
  auto u = ins.factor(x, y);
  if (!u) throw Error(ErrorKind::NotComposable, "generator: images not nested");
  return *u;
}

template <class I>
struct Embedded {
  typename I::Obj ambient;
  std::vector<typename I::Mor> at;  // embeddings, indexed like the masks

  typename I::Mor map(const I& ins, std::size_t from, std::size_t to) const { return between(ins, at[from], at[to]); }
};

template <class I>
Embedded<I> embed_all(const I& ins, Rng& rng, const typename I::Obj& u, const std::vector<Mask>& masks) {
  Embedded<I> e{u, {}};
  for (const auto& m : masks) e.at.push_back(embed(ins, rng, u, m));
  return e;
}

// Square on embedded vertices a, b, c, d (top a->b, left a->c).
template <class I>
Square<I> square_of(const I& ins, const Embedded<I>& e, std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
  return {e.map(ins, a, b), e.map(ins, a, c), e.map(ins, b, d), e.map(ins, c, d)};
}

enum class SquareKind { Pullback, Distinguished, Loose };

// Masks for a square A,B,C inside D = whole ambient.
template <class I>
std::vector<Mask> square_masks(const I& ins, Rng& rng, const typename I::Obj& u, SquareKind kind) {
  std::size_t n = ins.carrier(u).size();
  Mask d = all(n);
  Mask b = summand(ins, rng, u);
  Mask c = summand(ins, rng, u);
  if (kind == SquareKind::Distinguished) c = c | ~b;
  Mask a = b & c;
  if (kind == SquareKind::Loose) a = summand(ins, rng, u, a);
  return {a, b, c, d};
}

template <class I>
Square<I> random_square(const I& ins, Rng& rng, std::size_t max_size, SquareKind kind) {
  auto u = ins.random_object(rng, max_size);
  auto e = embed_all(ins, rng, u, square_masks(ins, rng, u, kind));
  return square_of(ins, e, 0, 1, 2, 3);
}

template <class I>
typename I::Mor random_inclusion(const I& ins, Rng& rng, std::size_t max_size) {
  auto u = ins.random_object(rng, max_size);
  auto f = embed(ins, rng, u, summand(ins, rng, u));
  auto r = ins.rename(rng, u);
  return ins.compose(r, f);
}

template <class I>
typename I::Mor random_iso(const I& ins, Rng& rng, std::size_t max_size) {
  return ins.rename(rng, ins.random_object(rng, max_size));
}

}  // namespace ecgw::gen

#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ecgw/chain.hpp"
#include "ecgw/chain_gen.hpp"

namespace oracle {

using ecgw::Elem;
using ecgw::FinSetObj;
using ecgw::SetFun;
using FS = ecgw::FinSetInstance;

// A subcomplex of Y recorded in Y's own tokens: degree and image-part
// subsets, and the differential as (image point, target point) pairs.
struct Profile {
  std::vector<std::set<Elem>> deg, bar;
  std::vector<std::set<std::pair<Elem, Elem>>> diff;
  bool operator==(const Profile&) const = default;
};

inline std::set<Elem> image_tokens(const SetFun& f) {
  auto im = f.image();
  return {im.begin(), im.end()};
}

// Profile of the subcomplex a chain map picks out in its target.
inline Profile profile_of(const ecgw::ChainMap<FS>& m) {
  Profile p;
  const auto& x = m.src;
  const auto& y = m.dst;
  for (int i = x.lo; i <= x.hi; ++i) {
    p.deg.push_back(image_tokens(m.at(i)));
    p.bar.push_back(image_tokens(m.bar(i)));
    std::set<std::pair<Elem, Elem>> d;
    if (i > x.lo)
      for (std::size_t q = 0; q < x.d(i).dom().size(); ++q)
        d.emplace(y.inc(i).dom()[m.bar(i).at(q)], y.X(i - 1)[m.at(i - 1).at(x.d(i).at(q))]);
    p.diff.push_back(std::move(d));
  }
  return p;
}

inline SetFun complement_of(const SetFun& f) {
  auto rest = ecgw::set_difference(f.cod(), f.image());
  return ecgw::inclusion(rest, f.cod());
}

// Cokernel of a chain m-map built square by square: the cokernel of the
// image-part square gives W_i -> Z_i, then the differential square is pulled
// back along Z_{i-1} -> Y_{i-1}.
inline Profile cokernel_by_diagram(const ecgw::ChainMap<FS>& f) {
  const auto& y = f.dst;
  Profile p;
  SetFun z_prev;
  for (int i = y.lo; i <= y.hi; ++i) {
    auto z = complement_of(f.at(i));
    auto w = complement_of(f.bar(i));
    auto w_to_z = ecgw::factor(ecgw::compose(y.inc(i), w), z);
    if (!w_to_z) throw ecgw::Error(ecgw::ErrorKind::NotPullback, "image-part square is not a pullback", i);
    std::set<Elem> bar;
    std::set<std::pair<Elem, Elem>> diff;
    if (i > y.lo) {
      auto cone = ecgw::set_pullback(ecgw::compose(y.d(i), w), z_prev);
      for (std::size_t q = 0; q < cone.obj.size(); ++q) {
        auto yb = w.cod()[w.at(cone.p1.at(q))];
        bar.insert(yb);
        diff.emplace(yb, z_prev.cod()[z_prev.at(cone.p2.at(q))]);
      }
    }
    p.deg.push_back(image_tokens(z));
    p.bar.push_back(std::move(bar));
    p.diff.push_back(std::move(diff));
    z_prev = z;
  }
  return p;
}

// Kernel of a chain e-map: complements of the degrees, image parts pulled
// back from the image part of Y, and the differential factored through
// K_{i-1}.
inline Profile kernel_by_diagram(const ecgw::ChainMap<FS>& g) {
  const auto& y = g.dst;
  Profile p;
  SetFun k_prev;
  for (int i = y.lo; i <= y.hi; ++i) {
    auto k = complement_of(g.at(i));
    auto cone = ecgw::set_pullback(y.inc(i), k);
    std::set<Elem> bar;
    std::set<std::pair<Elem, Elem>> diff;
    for (std::size_t q = 0; q < cone.obj.size(); ++q) {
      auto slot = cone.p1.at(q);
      bar.insert(y.inc(i).dom()[slot]);
      if (i == y.lo) continue;
      auto target = y.d(i).at(slot);
      if (!k_prev.image_mask()[target])
        throw ecgw::Error(ecgw::ErrorKind::NotPullback, "differential leaves the kernel", i);
      diff.emplace(y.inc(i).dom()[slot], y.X(i - 1)[target]);
    }
    p.deg.push_back(image_tokens(k));
    p.bar.push_back(std::move(bar));
    p.diff.push_back(std::move(diff));
    k_prev = k;
  }
  return p;
}

// A chain map of the given kind onto a random subcomplex of a random complex
// on [-2, 2] with degrees of at most four points, renamed at both ends.
template <class I>
ecgw::ChainMap<I> random_chain_map(const I& ins, ecgw::Rng& rng, ecgw::MapKind kind) {
  auto y = ecgw::chaingen::random_complex(ins, rng, -2, 2, 4);
  auto s = ecgw::chaingen::random_masks(ins, rng, y);
  s = kind == ecgw::MapKind::M ? ecgw::chaingen::m_close(ins, y, s) : ecgw::chaingen::e_close(ins, y, s);
  auto m = ecgw::chaingen::restrict_to(ins, y, s, kind);
  return ecgw::chaingen::rename_target(ins, rng, ecgw::chaingen::rename_source(ins, rng, m));
}

}  // namespace oracle

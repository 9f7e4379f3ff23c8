#pragma once

#include <map>
#include <string>
#include <vector>

#include "ecgw/chain.hpp"
#include "ecgw/extcat.hpp"

namespace testing {

using ecgw::FinSetObj;
using ecgw::SetFun;
using Assign = std::map<std::string, std::string>;

inline SetFun fn(const FinSetObj& dom, const FinSetObj& cod, const Assign& a) {
  return SetFun::from_assignment(dom, cod, a);
}

inline SetFun incl(const FinSetObj& sub, const FinSetObj& super) { return ecgw::inclusion(sub, super); }

inline std::vector<std::string> tokens(const FinSetObj& s) { return {s.begin(), s.end()}; }

// Complex on [lo, hi] from degree sets, image parts (subsets of the degree)
// and differentials given as token assignments. Not validated.
struct Degree {
  FinSetObj x, bar;
  Assign d;
};

inline ecgw::ChainComplex<ecgw::FinSetInstance> raw_complex(int lo, const std::vector<Degree>& ds) {
  ecgw::ChainComplex<ecgw::FinSetInstance> c{lo, lo + static_cast<int>(ds.size()) - 1, {}, {}, {}};
  FinSetObj below;
  for (const auto& d : ds) {
    c.deg.push_back(d.x);
    c.img.push_back(incl(d.bar, d.x));
    c.diff.push_back(fn(d.bar, below, d.d));
    below = d.x;
  }
  return c;
}

inline ecgw::ChainComplex<ecgw::FinSetInstance> complex(int lo, const std::vector<Degree>& ds) {
  return ecgw::validate(ecgw::FinSetInstance{}, raw_complex(lo, ds));
}

}  // namespace testing

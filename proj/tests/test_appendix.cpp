#include <catch_amalgamated.hpp>

#include "ecgw/appendix.hpp"
#include "support.hpp"

using namespace ecgw;
using testing::incl;

namespace {

const std::vector<std::string> kChecks = {"pushout_uniqueness", "pushout_composition", "induced_m_map",
                                          "induced_e_map",      "southern_cokernel",   "cube_correspondence",
                                          "distributivity",     "induced_square_pseudo_commutative",
                                          "induced_square_distinguished"};

}  // namespace

TEST_CASE("pushout properties hold on finite sets") {
  auto r = appendix_audit(FinSetInstance{}, 150, 4);
  INFO(r.to_text());
  CHECK(r.passed());
  for (const auto& c : kChecks) CHECK(r.trials_of(c) > 0);
  CHECK(r.counter("induced_square_distinguished_cases") > 0);
}

TEST_CASE("pushout properties hold on m-sets") {
  auto r = appendix_audit(MSetInstance(Monoid::idempotent_pair()), 60, 4);
  INFO(r.to_text());
  CHECK(r.passed());
}

TEST_CASE("cube with identity edges along one axis has a face as southern square") {
  FinSetInstance fs;
  // vertex v: bit 0 is the identity axis, bits 1 and 2 pick {1}, {1,2}, {1,3}, {1,2,3}
  std::array<FinSetObj, 4> corner{FinSetObj{"1"}, FinSetObj{"1", "2"}, FinSetObj{"1", "3"}, FinSetObj{"1", "2", "3"}};
  Cube<FinSetInstance> c;
  for (int v = 0; v < 8; ++v) c.obj[static_cast<std::size_t>(v)] = corner[static_cast<std::size_t>(v >> 1)];
  for (int k = 0; k < 3; ++k)
    for (int v = 0; v < 8; ++v)
      if (!(v & (1 << k)))
        c.edge[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)] =
            incl(c.obj[static_cast<std::size_t>(v)], c.obj[static_cast<std::size_t>(v | (1 << k))]);
  auto s = southern(fs, c, 2);
  CHECK(s.good);
  CHECK(s.square.left.bijective());
  CHECK(s.square.right.bijective());
  CHECK(s.square.top.dom().size() == 2);
  CHECK(s.square.top.cod().size() == 3);
  CHECK(s.square.bottom.dom().size() == 2);
  CHECK(s.square.bottom.cod().size() == 3);
  auto f = face(c, 0, 2, 2);
  CHECK(fs.is_iso(f.top));
  CHECK(classify(fs, s.square).distinguished == classify(fs, f).distinguished);
}

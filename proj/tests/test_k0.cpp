#include <catch_amalgamated.hpp>

#include "ecgw/k0.hpp"
#include "support.hpp"

using namespace ecgw;
using testing::complex;
using testing::incl;
using FS = FinSetInstance;

namespace {

FS fs;
FinSetObj none;

}  // namespace

TEST_CASE("euler characteristic") {
  CHECK(euler_char(fs, concentrated(fs, FinSetObj{"a", "b", "c"}, 0)) == 3);
  CHECK(euler_char(fs, empty_complex(fs, -2, 2)) == 0);
  for (std::uint64_t t = 0; t < 200; ++t) {
    Rng rng(mix(91, t));
    auto x = chaingen::random_exact(fs, rng, -2, 2, 2);
    CHECK(euler_char(fs, x) == 0);
    auto a = fs.random_object(rng, 4);
    CHECK(euler_char(fs, concentrated(fs, a, 0)) == static_cast<long long>(a.size()));
  }
}

TEST_CASE("degree vectors") {
  for (const auto& o : degree_vector(fs, empty_complex(fs, -1, 1), -1, 1)) CHECK(o.empty());
  auto x = concentrated(fs, FinSetObj{"a"}, 1);
  auto v = degree_vector(fs, x, 1, 1);
  REQUIRE(v.size() == 1);
  CHECK(v[0] == FinSetObj{"a"});
  auto arrow = complex(0, {{FinSetObj{"y"}, none, {}}, {FinSetObj{"x", "u"}, FinSetObj{"x"}, {{"x", "y"}}}});
  auto w = degree_vector(fs, arrow, 0, 1);
  REQUIRE(w.size() == 2);
  CHECK(w[0] == FinSetObj{"y"});
  CHECK(w[1] == FinSetObj{"u", "x"});
  CHECK_THROWS_AS(degree_vector(fs, arrow, 1, 1), Error);
}

TEST_CASE("image vectors of exact complexes") {
  CHECK(image_vector(fs, empty_complex(fs, 0, 2), 0, 2).size() == 2);
  CHECK(image_vector(fs, empty_complex(fs, 0, 0), 0, 0).empty());
  CHECK(is_empty_complex(fs, reconstruct(fs, {}, 0, 0)));
  CHECK_THROWS_AS(image_vector(fs, concentrated(fs, FinSetObj{"a"}, 0), 0, 0), Error);
  for (std::uint64_t t = 0; t < 200; ++t) {
    Rng rng(mix(92, t));
    auto x = chaingen::random_exact(fs, rng, -2, 2, 2);
    auto v = image_vector(fs, x, -2, 2);
    CHECK(chain_isomorphic(fs, reconstruct(fs, v, -2, 2), x));
  }
}

TEST_CASE("distinguished split square relation") {
  FinSetObj a{"a"}, ab{"a", "b"}, ca{"c", "a"}, cab{"c", "a", "b"};
  Square<FS> sq{incl(a, ab), incl(a, ca), incl(ab, cab), incl(ca, cab)};
  REQUIRE(is_distinguished(fs, sq));
  CHECK(a.size() + cab.size() == ab.size() + ca.size());
}

TEST_CASE("relations hold for objects and complexes") {
  auto o = relation_audit(fs, RelationLevel::Objects, 150, 3);
  INFO(o.to_text());
  CHECK(o.passed());
  CHECK(o.relations.at("distinguished_square") == 150);
  auto c = relation_audit(fs, RelationLevel::Chains, 100, 3);
  INFO(c.to_text());
  CHECK(c.passed());
  CHECK(c.relations.at("weak_equivalence") == 100);
  auto m = relation_audit(MSetInstance(Monoid::idempotent_pair()), RelationLevel::Chains, 40, 3);
  CHECK(m.passed());
}

TEST_CASE("gillet-waldhausen shadow") {
  auto r = gw_audit(fs, 100, 4);
  INFO(r.to_text());
  CHECK(r.passed());
  CHECK(r.counter("nontrivial_distinguished_squares") > 0);
  CHECK(r.counter("nontrivial_exact_squares") > 0);
}

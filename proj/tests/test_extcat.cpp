#include <catch_amalgamated.hpp>

#include "ecgw/cgw.hpp"
#include "ecgw/extcat.hpp"
#include "ecgw/gen.hpp"
#include "support.hpp"

using namespace ecgw;
using testing::incl;

TEST_CASE("finset complement") {
  FinSetInstance ins;
  FinSetObj b{"1", "2", "3"};
  auto c = ins.complement(incl(FinSetObj{"1", "2"}, b));
  CHECK(c.dom() == FinSetObj{"3"});
  CHECK(c.cod() == b);
  CHECK(ins.complement(identity(b)).dom().empty());
  CHECK(ins.complement(ins.from_initial(b)).bijective());

  SetFun folded(FinSetObj{"a", "b"}, FinSetObj{"x"}, {0, 0});
  CHECK_FALSE(ins.is_coproduct_inclusion(folded));
  CHECK(ins.is_coproduct_inclusion(identity(b)));
  try {
    ins.complement(folded);
    FAIL("complement of a non-injective map");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotCoproductInclusion);
  }
}

TEST_CASE("double complement recovers the subobject") {
  FinSetInstance ins;
  for (std::uint64_t t = 0; t < 300; ++t) {
    Rng rng(mix(21, t));
    auto f = gen::random_inclusion(ins, rng, 6);
    auto cc = ins.complement(ins.complement(f));
    CHECK(same_subobject(ins, cc, f));
    auto p = ins.pullback(f, ins.complement(f));
    CHECK(p.obj.empty());
    CHECK(f.dom().size() + ins.complement(f).dom().size() == f.cod().size());
  }
}

TEST_CASE("g is a coproduct inclusion when f and f.g are") {
  FinSetInstance ins;
  int premises = 0;
  for (std::uint64_t t = 0; t < 400; ++t) {
    Rng rng(mix(22, t));
    auto f = gen::random_inclusion(ins, rng, 5);
    auto a = ins.random_object(rng, 3);
    auto n = static_cast<int>(ins.dom(f).size());
    if (n == 0 && !a.empty()) continue;
    std::vector<std::size_t> m(a.size());
    for (auto& x : m) x = static_cast<std::size_t>(rng.uniform(0, n - 1));
    SetFun g(a, ins.dom(f), m);
    if (ins.is_coproduct_inclusion(f) && ins.is_coproduct_inclusion(ins.compose(f, g))) {
      ++premises;
      CHECK(ins.is_coproduct_inclusion(g));
    }
  }
  CHECK(premises > 50);
}

namespace {

// Two-element monoid {1, m} with m.m = m acting on {x, y} by m.x = m.y = y.
struct Arrow {
  MSetInstance ins{Monoid::idempotent_pair()};
  MSetObj xy = ins.make(FinSetObj{"x", "y"}, {{0, 1}, {1, 1}});
  MSetObj y = ins.make(FinSetObj{"y"}, {{0}, {0}});
  MSetObj x = ins.make(FinSetObj{"x"}, {{0}, {0}});
};

}  // namespace

TEST_CASE("m-set coproduct inclusions need a closed complement") {
  Arrow a;
  auto to_y = a.ins.lift(a.y, a.xy, incl(FinSetObj{"y"}, FinSetObj{"x", "y"}));
  CHECK_FALSE(a.ins.is_coproduct_inclusion(to_y));
  CHECK_THROWS_AS(a.ins.complement(to_y), Error);

  MSetInstance::Mor to_x{a.x, a.xy, incl(FinSetObj{"x"}, FinSetObj{"x", "y"})};
  CHECK_FALSE(a.ins.is_coproduct_inclusion(to_x));
  CHECK_THROWS_AS(a.ins.lift(a.x, a.xy, to_x.fun), Error);

  auto xyz = a.ins.make(FinSetObj{"x", "y", "z"}, {{0, 1, 2}, {1, 1, 2}});
  auto z = a.ins.make(FinSetObj{"z"}, {{0}, {0}});
  auto to_z = a.ins.lift(z, xyz, incl(FinSetObj{"z"}, FinSetObj{"x", "y", "z"}));
  REQUIRE(a.ins.is_coproduct_inclusion(to_z));
  auto c = a.ins.complement(to_z);
  CHECK(a.ins.carrier(a.ins.dom(c)) == FinSetObj{"x", "y"});
  CHECK(a.ins.is_iso(a.ins.dom(c), a.xy));
  CHECK(a.ins.is_coproduct_inclusion(a.ins.identity(a.xy)));
}

TEST_CASE("m-set coproducts and pullbacks carry the action") {
  Arrow a;
  auto c = a.ins.coproduct(a.xy, a.y);
  CHECK(c.obj.carrier.size() == 3);
  CHECK(a.ins.is_coproduct_inclusion(c.inl));
  CHECK(a.ins.is_coproduct_inclusion(c.inr));
  CHECK(a.ins.pullback(c.inl, c.inr).obj.carrier.empty());
  auto p = a.ins.pullback(a.ins.identity(a.xy), a.ins.identity(a.xy));
  CHECK(a.ins.is_iso(p.obj, a.xy));
  CHECK_FALSE(a.ins.is_iso(a.xy, a.ins.make(FinSetObj{"p", "q"}, {{0, 1}, {0, 1}})));
}

TEST_CASE("m-set isomorphism ignores token names") {
  Arrow a;
  auto other = a.ins.make(FinSetObj{"p", "q"}, {{0, 1}, {0, 0}});
  CHECK(a.ins.is_iso(a.xy, other));
}

TEST_CASE("monoid tables are validated") {
  CHECK_THROWS_AS(MSetInstance(Monoid{0, {{0, 1}, {1, 0}, {1, 1}}}), Error);
  CHECK_THROWS_AS(MSetInstance(Monoid{0, {{1, 1}, {1, 1}}}), Error);
  Arrow a;
  CHECK_THROWS_AS(a.ins.make(FinSetObj{"x", "y"}, {{1, 0}, {1, 1}}), Error);
}

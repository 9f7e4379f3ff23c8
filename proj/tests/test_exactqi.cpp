#include <catch_amalgamated.hpp>

#include "ecgw/exactqi.hpp"
#include "support.hpp"

using namespace ecgw;
using testing::complex;
using FS = FinSetInstance;

namespace {

FS fs;

FinSetObj none;

}  // namespace

TEST_CASE("exactness") {
  CHECK(is_exact(fs, empty_complex(fs, -2, 2)).exact);
  auto arrow = complex(0, {{FinSetObj{"y"}, none, {}}, {FinSetObj{"x"}, FinSetObj{"x"}, {{"x", "y"}}}});
  CHECK(is_exact(fs, arrow).exact);
  auto point = is_exact(fs, concentrated(fs, FinSetObj{"a"}, 0));
  CHECK_FALSE(point.exact);
  REQUIRE(point.refusal);
  CHECK(*point.refusal == 0);
}

TEST_CASE("homology") {
  auto a = FinSetObj{"a", "b"};
  CHECK(homology(fs, concentrated(fs, a, 0), 0) == a);
  auto arrow = complex(0, {{FinSetObj{"y", "z"}, none, {}}, {FinSetObj{"x"}, FinSetObj{"x"}, {{"x", "y"}}}});
  CHECK(homology(fs, arrow, 0) == FinSetObj{"z"});
  CHECK(homology(fs, arrow, 1).empty());
  for (std::uint64_t t = 0; t < 200; ++t) {
    Rng rng(mix(71, t));
    auto x = chaingen::random_exact(fs, rng, -2, 2, 2);
    REQUIRE(is_exact(fs, x).exact);
    for (int i = x.lo; i <= x.hi; ++i) CHECK(homology(fs, x, i).empty());
  }
}

TEST_CASE("vanishing homology does not imply exactness") {
  auto fold = complex(0, {{FinSetObj{"y"}, none, {}}, {FinSetObj{"p", "q"}, FinSetObj{"p", "q"}, {{"p", "y"}, {"q", "y"}}}});
  CHECK(homology(fs, fold, 0).empty());
  CHECK(homology(fs, fold, 1).empty());
  auto c = is_exact(fs, fold);
  CHECK_FALSE(c.exact);
  REQUIRE(c.refusal);
  CHECK(*c.refusal == 1);
}

TEST_CASE("quasi-isomorphisms from the empty complex") {
  auto x = complex(0, {{FinSetObj{"y"}, none, {}}, {FinSetObj{"x"}, FinSetObj{"x"}, {{"x", "y"}}}});
  auto pt = widen(fs, concentrated(fs, FinSetObj{"a"}, 0), 0, 1);
  for (auto kind : {MapKind::M, MapKind::E}) {
    CHECK(is_quasi_iso(fs, identity_map(fs, x, kind)));
    CHECK(bicartesian_criterion(fs, identity_map(fs, x, kind)));
    CHECK(is_quasi_iso(fs, from_empty(fs, x, kind)));
    CHECK(bicartesian_criterion(fs, from_empty(fs, x, kind)));
    CHECK_FALSE(is_quasi_iso(fs, from_empty(fs, pt, kind)));
    CHECK_FALSE(bicartesian_criterion(fs, from_empty(fs, pt, kind)));
  }
}

TEST_CASE("e-map whose literal comparison square is not a pullback") {
  using testing::fn;
  auto src = complex(-2, {{FinSetObj{"e4"}, none, {}}, {none, none, {}}, {FinSetObj{"e30"}, none, {}},
                          {FinSetObj{"e5"}, none, {}}});
  auto dst = complex(-2, {{FinSetObj{"r24"}, none, {}},
                          {none, none, {}},
                          {FinSetObj{"r22", "r23"}, none, {}},
                          {FinSetObj{"r13", "r7"}, FinSetObj{"r13", "r7"}, {{"r13", "r23"}, {"r7", "r23"}}}});
  ChainMap<FS> f{MapKind::E, src, dst,
                 {fn(src.X(-2), dst.X(-2), {{"e4", "r24"}}), identity(none),
                  fn(src.X(0), dst.X(0), {{"e30", "r22"}}), fn(src.X(1), dst.X(1), {{"e5", "r7"}})},
                 {identity(none), identity(none), SetFun(none, none, {}), SetFun(none, dst.inc(1).dom(), {})}};
  f = validate_map(fs, f);
  CHECK(is_quasi_iso(fs, f));
  CHECK(bicartesian_criterion(fs, f));
  CHECK_FALSE(bicartesian_criterion(fs, f, false));
}

TEST_CASE("acyclicity audit") {
  auto r = acyclicity_audit(FS{}, 150, 8);
  INFO(r.to_text());
  CHECK(r.passed());
  for (auto n : {"initial_is_acyclic", "exact_closed_under_kernels", "exact_closed_under_cokernels",
                 "exact_closed_under_extensions", "we_2of3_m", "we_2of3_e", "parallel_2of3", "acyclic_pushout_m",
                 "acyclic_pushout_e"})
    CHECK(r.trials_of(n) > 0);
  CHECK(r.counter("extensions_of_exact") > 0);
  CHECK(r.counter("we_2of3_m_two_hold") > 0);
}

TEST_CASE("quasi-iso criterion agrees with exact kernels and cokernels") {
  for (const auto& r : {quasi_iso_audit(FS{}, 150, 8), quasi_iso_audit(MSetInstance(Monoid::idempotent_pair()), 80, 8)}) {
    INFO(r.to_text());
    CHECK(r.passed());
    CHECK(r.counter("quasi_isos_m") > 0);
    CHECK(r.counter("non_quasi_isos_m") > 0);
    CHECK(r.counter("quasi_isos_e") > 0);
    CHECK(r.counter("non_quasi_isos_e") > 0);
  }
}

#include <catch_amalgamated.hpp>

#include "ecgw/axioms.hpp"

using namespace ecgw;

namespace {

// Complement that forgets one point of the true complement.
struct LossyComplement : FinSetInstance {
  Mor complement(const Mor& f) const {
    auto m = f.image_mask();
    m.flip();
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i]) {
        m[i] = false;
        break;
      }
    return inclusion_of_mask(f.cod(), m);
  }
};

const std::vector<std::string> kAxioms = {
    "Z_shared_initial",      "M_monic",          "G_weak_triangles_good", "G_good_are_pullbacks",
    "D_kernel_cokernel_agree", "D_k_c_round_trip", "K_kernel_cokernel_squares", "GS_direction_independent",
    "GS_composition",        "STAR_initial",     "STAR_comparisons_iso",  "PO_good_square_exists",
    "PBL_pullback_lemma",    "POL_pushout_lemma"};

}  // namespace

TEST_CASE("finset audit passes every axiom") {
  auto r = audit(FinSetInstance{}, 200, 5);
  INFO(r.to_text());
  CHECK(r.passed());
  for (const auto& a : kAxioms) CHECK(r.trials_of(a) > 0);
}

TEST_CASE("m-set audit passes and observes refusals") {
  auto r = audit(MSetInstance(Monoid::idempotent_pair()), 80, 5);
  INFO(r.to_text());
  CHECK(r.passed());
  CHECK(r.counter("complement_refusals") > 0);
}

TEST_CASE("audit report does not depend on thread count") {
  auto one = audit(FinSetInstance{}, 60, 9, 1);
  auto four = audit(FinSetInstance{}, 60, 9, 4);
  CHECK(one.to_text() == four.to_text());
  CHECK(one.to_text() == audit(FinSetInstance{}, 60, 9, 1).to_text());
  CHECK(one.to_text() != audit(FinSetInstance{}, 60, 10, 1).to_text());
}

TEST_CASE("zero trials is rejected") { CHECK_THROWS_AS(audit(FinSetInstance{}, 0, 1), Error); }

TEST_CASE("a corrupted complement is caught by the kernel-cokernel axiom") {
  auto r = audit(LossyComplement{}, 100, 3);
  REQUIRE_FALSE(r.passed());
  const auto& k = r.axioms.at("K_kernel_cokernel_squares");
  CHECK(k.failures > 0);
  REQUIRE(k.first_trial);
  CHECK_FALSE(k.counterexample.empty());
  CHECK(r.to_text().find("first counterexample") != std::string::npos);
}

#include <catch_amalgamated.hpp>

#include "ecgw/chain_cgw.hpp"

using namespace ecgw;

namespace {

const std::vector<std::string> kChecks = {
    "Z_shared_initial",        "M_monic",
    "G_weak_triangles_good",   "G_good_are_pullbacks",
    "D_kernel_cokernel_agree", "D_k_c_round_trip",
    "K_kernel_cokernel_squares", "iso_iff_empty_complement",
    "GS_direction_independent", "GS_composition",
    "STAR_initial",            "STAR_comparisons_iso",
    "STAR_e_witness_independent", "PO_good_square_exists",
    "PBL_pullback_lemma",      "POL_pushout_lemma",
    "distinguished_completion", "induced_cokernel_map",
    "iso_reflection",          "distinguished_two_of_three",
    "good_squares_are_pullbacks_of_complexes"};

}  // namespace

TEST_CASE("complexes of finite sets satisfy every axiom") {
  auto r = chain_cgw_audit(FinSetInstance{}, 150, 6);
  INFO(r.to_text());
  CHECK(r.passed());
  for (const auto& c : kChecks) CHECK(r.trials_of(c) > 0);
  CHECK(r.counter("distinguished_squares") > 0);
  CHECK(r.counter("non_pullback_squares") > 0);
  CHECK(r.counter("good_outer_pastings") > 0);
}

TEST_CASE("complexes of m-sets satisfy every axiom") {
  auto r = chain_cgw_audit(MSetInstance(Monoid::idempotent_pair()), 60, 6);
  INFO(r.to_text());
  CHECK(r.passed());
}

TEST_CASE("pullback side agrees with the degreewise intersection oracle") {
  FinSetInstance fs;
  int pullbacks = 0, others = 0;
  for (std::uint64_t t = 0; t < 300; ++t) {
    Rng rng(mix(61, t));
    auto sq = chaincgw::mixed_square(fs, rng, rng.coin(), true);
    bool pb = classify(fs, sq).pullback;
    CHECK(pb == chaincgw::intersection_oracle(fs, sq));
    (pb ? pullbacks : others)++;
  }
  CHECK(pullbacks > 30);
  CHECK(others > 30);
}

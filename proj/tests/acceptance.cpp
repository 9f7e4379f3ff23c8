// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ecgw/appendix.hpp"
#include "ecgw/axioms.hpp"
#include "ecgw/chain_cgw.hpp"
#include "ecgw/cli.hpp"
#include "ecgw/exactqi.hpp"
#include "ecgw/k0.hpp"
#include "ecgw/sdot.hpp"
#include "oracles.hpp"

using namespace ecgw;
using Clock = std::chrono::steady_clock;

namespace {

constexpr std::uint64_t kSeed = 20240601;
constexpr double kAxiomBudgetSeconds = 60.0;
constexpr double kGwBudgetSeconds = 300.0;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

unsigned many_threads() { return std::max(4u, std::thread::hardware_concurrency()); }

struct Outcome {
  bool ok = true;
  std::vector<std::string> notes;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
};

// Every listed check ran at least `min` times and never failed.
void require_checks(Outcome& o, const AuditReport& r, const std::vector<std::string>& names, std::size_t min) {
  o.require(r.passed(), r.suite + " reported failures:\n" + r.to_text());
  for (const auto& n : names)
    o.require(r.trials_of(n) >= min, n + " checked " + std::to_string(r.trials_of(n)) + " < " + std::to_string(min));
}

int failures = 0;

void criterion(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  char time[32];
  std::snprintf(time, sizeof time, "%.1fs", seconds_since(t0));
  std::cout << (o.ok ? "PASS" : "FAIL") << " " << id << " " << title << " (" << time << ")\n";
  for (const auto& n : o.notes) std::cout << "    " << n << "\n";
  std::cout.flush();
  if (!o.ok) ++failures;
}

const std::vector<std::string> kCgwChecks = {
    "Z_shared_initial",        "M_monic",          "G_weak_triangles_good",     "G_good_are_pullbacks",
    "D_kernel_cokernel_agree", "D_k_c_round_trip", "K_kernel_cokernel_squares", "GS_direction_independent",
    "GS_composition",          "STAR_initial",     "STAR_comparisons_iso",      "PO_good_square_exists",
    "PBL_pullback_lemma",      "POL_pushout_lemma", "distinguished_completion", "induced_cokernel_map",
    "iso_iff_empty_complement", "iso_reflection",   "distinguished_two_of_three", "mixed_pullback_unique"};

std::string run_cli(const std::vector<std::string>& args, int& code) {
  std::ostringstream out, err;
  code = cli::run(args, out, err);
  return out.str() + err.str();
}

}  // namespace

int main() {
  auto start = Clock::now();
  FinSetInstance fs;
  MSetInstance ms(Monoid::idempotent_pair());

  criterion(1, "finite-set axiom and lemma audit, 1000 trials, under 60 s", [&](Outcome& o) {
    auto t0 = Clock::now();
    auto r = audit(fs, 1000, kSeed);
    double s = seconds_since(t0);
    require_checks(o, r, kCgwChecks, 1000);
    o.require(s < kAxiomBudgetSeconds, "took " + std::to_string(s) + " s");
  });

  criterion(2, "m-set axiom audit, 200 trials, at least 10 complement refusals", [&](Outcome& o) {
    auto r = audit(ms, 200, kSeed);
    require_checks(o, r, kCgwChecks, 200);
    o.require(r.counter("complement_refusals") >= 10,
              "complement_refusals = " + std::to_string(r.counter("complement_refusals")));
  });

  criterion(3, "pushout properties, 300 configurations each", [&](Outcome& o) {
    auto r = appendix_audit(fs, 300, kSeed);
    require_checks(o, r,
                   {"pushout_uniqueness", "pushout_composition", "induced_m_map", "induced_e_map",
                    "southern_cokernel", "cube_correspondence", "distributivity",
                    "induced_square_pseudo_commutative", "induced_square_distinguished"},
                   300);
  });

  criterion(4, "chain kernel/cokernel round trips (500 per kind) and diagram oracle (200 per kind)",
            [&](Outcome& o) {
              std::size_t bad_m = 0, bad_e = 0, oracle_m = 0, oracle_e = 0;
              for (std::uint64_t t = 0; t < 500; ++t) {
                Rng rng(mix(kSeed, t));
                auto f = oracle::random_chain_map(fs, rng, MapKind::M);
                auto c = coker_chain(fs, f);
                auto back = ker_chain(fs, c.map);
                if (!same_subcomplex(fs, back.map, f) || !chain_isomorphic(fs, back.obj, f.src)) ++bad_m;
                if (t < 200 && oracle::profile_of(c.map) != oracle::cokernel_by_diagram(f)) ++oracle_m;

                auto g = oracle::random_chain_map(fs, rng, MapKind::E);
                auto k = ker_chain(fs, g);
                auto again = coker_chain(fs, k.map);
                if (!same_subcomplex(fs, again.map, g) || !chain_isomorphic(fs, again.obj, g.src)) ++bad_e;
                if (t < 200 && oracle::profile_of(k.map) != oracle::kernel_by_diagram(g)) ++oracle_e;
              }
              o.require(bad_m == 0, std::to_string(bad_m) + " cokernel-kernel round trips failed");
              o.require(bad_e == 0, std::to_string(bad_e) + " kernel-cokernel round trips failed");
              o.require(oracle_m == 0, std::to_string(oracle_m) + " cokernels differ from the diagram oracle");
              o.require(oracle_e == 0, std::to_string(oracle_e) + " kernels differ from the diagram oracle");
            });

  criterion(5, "acyclicity closure and two-out-of-three, 500 trials", [&](Outcome& o) {
    auto r = acyclicity_audit(fs, 500, kSeed);
    require_checks(o, r,
                   {"initial_is_acyclic", "exact_closed_under_kernels", "exact_closed_under_cokernels",
                    "exact_closed_under_extensions", "we_2of3_m", "we_2of3_e", "parallel_2of3",
                    "acyclic_pushout_m", "acyclic_pushout_e"},
                   500);
  });

  criterion(6, "quasi-isomorphism test agrees with the bicartesian criterion, 500 maps per kind",
            [&](Outcome& o) {
              auto r = quasi_iso_audit(fs, 500, kSeed);
              require_checks(o, r, {"quasi_iso_iff_bicartesian_m", "quasi_iso_iff_bicartesian_e"}, 500);
              for (const char* c : {"quasi_isos_m", "quasi_isos_e", "non_quasi_isos_m", "non_quasi_isos_e"})
                o.require(r.counter(c) > 0, std::string("no samples for ") + c);
              // unconstrained random maps as well
              std::size_t disagree = 0;
              for (std::uint64_t t = 0; t < 500; ++t) {
                Rng rng(mix(kSeed + 6, t));
                for (auto kind : {MapKind::M, MapKind::E}) {
                  auto f = oracle::random_chain_map(fs, rng, kind);
                  if (is_quasi_iso(fs, f) != bicartesian_criterion(fs, f)) ++disagree;
                }
              }
              o.require(disagree == 0, std::to_string(disagree) + " random maps where the tests disagree");
            });

  criterion(7, "simplicial identities on staircases of level <= 4, 200 per identity", [&](Outcome& o) {
    auto r = sdot_audit(fs, 500, kSeed);
    require_checks(o, r,
                   {"face_face", "face_degeneracy_same", "face_degeneracy_next", "face_degeneracy_below",
                    "face_degeneracy_above", "degeneracy_degeneracy", "cells_are_complements"},
                   200);
  });

  criterion(8, "Euler characteristic and vector invariants, under 5 minutes", [&](Outcome& o) {
    auto t0 = Clock::now();
    auto r = gw_audit(fs, 1000, kSeed);
    double s = seconds_since(t0);
    o.require(r.passed(), "gw audit failed:\n" + r.to_text());
    auto qi = r.trials_of("euler_invariant_under_quasi_iso_m") + r.trials_of("euler_invariant_under_quasi_iso_e");
    o.require(qi >= 1000, "quasi-isomorphisms sampled " + std::to_string(qi));
    require_checks(o, r, {"euler_additive_on_distinguished_squares"}, 1000);
    require_checks(o, r, {"euler_of_concentrated_is_cardinality"}, 100);
    require_checks(o, r, {"degree_vector_additive", "image_vector_additive", "exact_reconstruction"}, 500);
    o.require(r.counter("nontrivial_distinguished_squares") > 0, "no nontrivial distinguished squares");
    o.require(r.counter("nontrivial_exact_squares") > 0, "no nontrivial exact squares");
    o.require(s < kGwBudgetSeconds, "took " + std::to_string(s) + " s");
  });

  criterion(9, "audits are byte-identical across runs and thread counts", [&](Outcome& o) {
    unsigned many = many_threads();
    using Suite = std::function<AuditReport(unsigned)>;
    std::vector<std::pair<std::string, Suite>> suites = {
        {"cgw", [&](unsigned th) { return audit(fs, 80, kSeed, th); }},
        {"cgw m-set", [&](unsigned th) { return audit(ms, 40, kSeed, th); }},
        {"appendix", [&](unsigned th) { return appendix_audit(fs, 60, kSeed, th); }},
        {"acyclicity", [&](unsigned th) { return acyclicity_audit(fs, 60, kSeed, th); }},
        {"quasi-iso", [&](unsigned th) { return quasi_iso_audit(fs, 60, kSeed, th); }},
        {"chain-cgw", [&](unsigned th) { return chain_cgw_audit(fs, 60, kSeed, th); }},
        {"staircases", [&](unsigned th) { return sdot_audit(fs, 60, kSeed, th); }},
        {"chain-staircases", [&](unsigned th) { return chain_sdot_audit(fs, 24, kSeed, th); }},
        {"gw", [&](unsigned th) { return gw_audit(fs, 60, kSeed, th); }},
    };
    for (const auto& [name, run] : suites) {
      auto a = run(1).to_text();
      o.require(a == run(1).to_text(), name + ": two single-threaded runs differ");
      o.require(a == run(many).to_text(), name + ": " + std::to_string(many) + " threads differ from 1");
    }
    std::vector<std::string> args{"audit", "--suite", "all", "--trials", "20", "--seed", "11"};
    int c1 = 0, c2 = 0, c3 = 0;
    auto one = run_cli(args, c1);
    auto two = run_cli(args, c2);
    args.insert(args.end(), {"--threads", std::to_string(many)});
    auto par = run_cli(args, c3);
    o.require(c1 == 0 && c2 == 0 && c3 == 0, "audit --suite all did not exit 0");
    o.require(one == two, "audit --suite all differs between runs");
    o.require(one == par, "audit --suite all differs under threads");
  });

  double total = seconds_since(start);
  std::printf("total %.1fs, %d failing criteria\n", total, failures);
  return failures == 0 ? 0 : 1;
}

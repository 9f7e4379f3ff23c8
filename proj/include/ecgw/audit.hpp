#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ecgw/error.hpp"
#include "ecgw/random.hpp"

namespace ecgw {

struct AxiomStats {
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::optional<std::size_t> first_trial;
  std::string counterexample;
};

struct AuditReport {
  std::string suite;
  std::string instance;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::map<std::string, AxiomStats> axioms;
  std::map<std::string, std::size_t> counters;

  std::size_t total_failures() const {
    std::size_t n = 0;
    for (const auto& [_, s] : axioms) n += s.failures;
    return n;
  }
  bool passed() const { return total_failures() == 0; }

  std::size_t trials_of(const std::string& axiom) const {
    auto it = axioms.find(axiom);
    return it == axioms.end() ? 0 : it->second.trials;
  }
  std::size_t counter(const std::string& name) const {
    auto it = counters.find(name);
    return it == counters.end() ? 0 : it->second;
  }

  std::string to_text() const {
    std::ostringstream out;
    out << "suite " << suite << " instance " << instance << " seed " << seed << " trials " << trials << "\n";
    for (const auto& [name, s] : axioms) {
      out << "  " << name << " checked " << s.trials << " failed " << s.failures << "\n";
      if (s.first_trial) out << "    first counterexample (trial " << *s.first_trial << "): " << s.counterexample << "\n";
    }
    for (const auto& [name, n] : counters) out << "  counter " << name << " " << n << "\n";
    out << "result " << (passed() ? "PASS" : "FAIL") << "\n";
    return out.str();
  }
};

// Records the outcome of every check made during one trial.
class TrialLog {
 public:
  struct Entry {
    std::string axiom;
    bool ok;
    std::string detail;
  };

  // fn returns nullopt on success or a description of the counterexample.
  void check(const std::string& axiom, const std::function<std::optional<std::string>()>& fn) {
    try {
      auto bad = fn();
      entries_.push_back({axiom, !bad.has_value(), bad.value_or("")});
    } catch (const std::exception& e) {
      entries_.push_back({axiom, false, std::string("exception: ") + e.what()});
    }
  }

  void expect(const std::string& axiom, bool ok, const std::function<std::string()>& describe) {
    entries_.push_back({axiom, ok, ok ? std::string() : describe()});
  }

  void count(const std::string& name, std::size_t n = 1) { counters_[name] += n; }

  const std::vector<Entry>& entries() const { return entries_; }
  const std::map<std::string, std::size_t>& counters() const { return counters_; }

 private:
  std::vector<Entry> entries_;
  std::map<std::string, std::size_t> counters_;
};

inline unsigned default_threads() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

// Runs trial(i, rng, log) for i < trials with rng seeded by mix(seed, i);
// logs are merged in trial order so the report does not depend on threads.
inline AuditReport run_trials(const std::string& suite, const std::string& instance, std::size_t trials,
                              std::uint64_t seed, unsigned threads,
                              const std::function<void(std::size_t, Rng&, TrialLog&)>& trial) {
  if (trials == 0) throw Error(ErrorKind::ValidationError, "audit needs at least one trial");
  std::vector<TrialLog> logs(trials);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(trials)));
  auto work = [&](unsigned t) {
    for (std::size_t i = t; i < trials; i += threads) {
      Rng rng(mix(seed, i));
      try {
        trial(i, rng, logs[i]);
      } catch (const std::exception& e) {
        // a throw outside any check still counts against the trial
        logs[i].expect("trial_completes", false, [&] { return std::string("exception: ") + e.what(); });
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  AuditReport r{suite, instance, seed, trials, {}, {}};
  for (std::size_t i = 0; i < trials; ++i) {
    for (const auto& e : logs[i].entries()) {
      auto& s = r.axioms[e.axiom];
      ++s.trials;
      if (!e.ok) {
        ++s.failures;
        if (!s.first_trial) {
          s.first_trial = i;
          s.counterexample = e.detail;
        }
      }
    }
    for (const auto& [name, n] : logs[i].counters()) r.counters[name] += n;
  }
  return r;
}

}  // namespace ecgw

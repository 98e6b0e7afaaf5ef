#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qic/oracle.hpp"
#include "qic/rng.hpp"
#include "qic/statevector.hpp"

namespace qic {

// Probabilities below this are omitted from reports.
inline constexpr double kProbabilityReportEpsilon = 1e-12;

struct SearchConfig {
  double delta = 0.0;              // noise scale; 0 = ideal interference
  std::uint32_t repetitions = 1;   // interference passes before measurement
  std::uint64_t shots = 1024;      // samples drawn from the final state
  std::uint64_t master_seed = 0;
  double null_tolerance = kNullTolerance;
  std::uint64_t max_rounds = 0;    // enumeration cap; 0 = auto (4 * 2^n)
};

struct SearchOutcome {
  std::uint64_t sampled_index = 0;              // modal measured outcome
  bool verified = false;                        // classical check, exclusions removed
  std::map<std::uint64_t, double> post_state_probabilities;
  Histogram histogram;
  std::uint32_t rounds_used = 0;                // interference passes applied
};

enum class Termination { InvalidSample, RepeatSample, NullInterference, RoundCap };

inline const char* to_string(Termination t) {
  switch (t) {
    case Termination::InvalidSample: return "InvalidSample";
    case Termination::RepeatSample: return "RepeatSample";
    case Termination::NullInterference: return "NullInterference";
    case Termination::RoundCap: return "RoundCap";
  }
  return "?";
}

struct EnumerationReport {
  std::set<std::uint64_t> found;                // every member classically verified
  std::uint64_t rounds = 0;                     // search attempts, including the terminating one
  Termination terminated_by = Termination::RoundCap;
  std::vector<SearchOutcome> per_round_outcomes;  // one entry per round that measured
};

// One mark-and-overlap pass. The unmarked arm is the input state; the marked
// arm has invalid and excluded states phase-inverted, then picks up noise;
// the overlap of the arms is renormalized and picks up noise again. With
// delta = 0 this is exactly projection onto the unexcluded solution subspace
// followed by renormalization.
inline StateVector interference_step(const StateVector& state, const Oracle& oracle,
                                     const std::set<std::uint64_t>& exclusions, double delta,
                                     MasterRng& rng, double null_tolerance = kNullTolerance) {
  StateVector marked = apply_phase_oracle(state, oracle, exclusions);
  marked = apply_amplitude_noise(marked, delta, rng);
  StateVector overlapped = interfere(marked, state, null_tolerance);
  return apply_amplitude_noise(overlapped, delta, rng);
}

namespace detail {

inline void validate_config(const SearchConfig& config) {
  if (config.repetitions < 1) throw Error("repetitions must be at least 1");
  if (config.shots < 1) throw Error("shots must be at least 1");
  if (config.delta < 0.0) throw Error("delta must be non-negative");
}

inline std::uint64_t modal_index(const Histogram& hist) {
  std::uint64_t best_index = 0, best_count = 0;
  for (const auto& [index, count] : hist.counts) {
    if (count > best_count) {  // map is ascending, so ties keep the lowest index
      best_count = count;
      best_index = index;
    }
  }
  return best_index;
}

}  // namespace detail

// Full single-search pipeline: prepare the uniform state, run the requested
// number of interference passes, measure, and classically confirm the modal
// sample. NullInterference propagates (ideal mode, no unexcluded solutions).
inline SearchOutcome run_search(const Oracle& oracle, std::uint32_t n,
                                const std::set<std::uint64_t>& exclusions,
                                const SearchConfig& config, MasterRng& rng) {
  detail::validate_config(config);
  if (oracle.arity() != n)
    throw ArityMismatch("oracle arity " + std::to_string(oracle.arity()) + " vs n=" + std::to_string(n));

  StateVector state = hadamard_uniform(n);
  for (std::uint32_t k = 0; k < config.repetitions; ++k)
    state = interference_step(state, oracle, exclusions, config.delta, rng, config.null_tolerance);

  SearchOutcome outcome;
  outcome.rounds_used = config.repetitions;
  outcome.histogram = measure(state, config.shots, rng);
  outcome.sampled_index = detail::modal_index(outcome.histogram);
  outcome.verified =
      oracle.eval_index(outcome.sampled_index) && exclusions.count(outcome.sampled_index) == 0;
  for (std::uint64_t i = 0; i < state.dim(); ++i) {
    const double p = std::norm(state.amps[i]);
    if (p > kProbabilityReportEpsilon) outcome.post_state_probabilities[i] = p;
  }
  return outcome;
}

inline SearchOutcome run_search(const Oracle& oracle, std::uint32_t n,
                                const std::set<std::uint64_t>& exclusions,
                                const SearchConfig& config) {
  MasterRng rng(config.master_seed);
  return run_search(oracle, n, exclusions, config, rng);
}

// Exclusion loop: run searches, phase-excluding every solution found so far,
// until a round yields an invalid sample, a repeat, or total cancellation.
// One master seed drives the whole enumeration.
inline EnumerationReport enumerate_solutions(const Oracle& oracle, std::uint32_t n,
                                             const SearchConfig& config) {
  detail::validate_config(config);
  if (oracle.arity() != n)
    throw ArityMismatch("oracle arity " + std::to_string(oracle.arity()) + " vs n=" + std::to_string(n));
  if (n > kDefaultQubitCap)
    throw CapExceeded("qubit count " + std::to_string(n) + " above cap " +
                      std::to_string(kDefaultQubitCap));

  const std::uint64_t max_rounds = config.max_rounds ? config.max_rounds : 4 * dimension(n);
  MasterRng rng(config.master_seed);
  EnumerationReport report;
  std::set<std::uint64_t> exclusions;

  for (std::uint64_t round = 1; round <= max_rounds; ++round) {
    report.rounds = round;
    SearchOutcome outcome;
    try {
      outcome = run_search(oracle, n, exclusions, config, rng);
    } catch (const NullInterference&) {
      report.terminated_by = Termination::NullInterference;
      return report;
    }
    report.per_round_outcomes.push_back(outcome);
    if (!oracle.eval_index(outcome.sampled_index)) {
      report.terminated_by = Termination::InvalidSample;
      return report;
    }
    if (report.found.count(outcome.sampled_index)) {
      report.terminated_by = Termination::RepeatSample;
      return report;
    }
    report.found.insert(outcome.sampled_index);
    exclusions.insert(outcome.sampled_index);
  }
  report.terminated_by = Termination::RoundCap;
  return report;
}

}  // namespace qic

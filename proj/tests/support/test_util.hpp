#pragma once

// Shared generators and comparison helpers for the test suites.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "qic/oracle.hpp"
#include "qic/rng.hpp"
#include "qic/statevector.hpp"

namespace qic::test {

// Random unit state with full support (every amplitude a complex Gaussian).
inline StateVector random_unit_state(RngStream& rng, std::uint32_t n) {
  StateVector state{n, std::vector<Amplitude>(dimension(n))};
  double n2 = 0.0;
  for (auto& amp : state.amps) {
    amp = rng.next_complex_gaussian();
    n2 += std::norm(amp);
  }
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& amp : state.amps) amp *= inv;
  return state;
}

// Random truth-table oracle; optionally guarantees at least one solution.
inline Oracle random_oracle(RngStream& rng, std::uint32_t n, bool ensure_nonempty) {
  const std::uint64_t dim = dimension(n);
  std::vector<bool> bits(dim);
  bool any = false;
  for (std::uint64_t i = 0; i < dim; ++i) {
    bits[i] = (rng.next_u64() & 1u) != 0;
    any |= bits[i];
  }
  if (ensure_nonempty && !any) bits[rng.next_u64() % dim] = true;
  return Oracle::from_truth_table(n, std::move(bits));
}

// Random k-CNF with distinct variables per clause.
inline CnfFormula random_cnf(RngStream& rng, std::uint32_t num_vars, std::size_t num_clauses,
                             std::uint32_t k = 3) {
  k = std::min(k, num_vars);
  CnfFormula f;
  f.num_vars = num_vars;
  for (std::size_t c = 0; c < num_clauses; ++c) {
    std::set<std::uint32_t> vars;
    while (vars.size() < k) vars.insert(static_cast<std::uint32_t>(rng.next_u64() % num_vars) + 1);
    std::vector<std::int32_t> clause;
    for (std::uint32_t v : vars)
      clause.push_back((rng.next_u64() & 1u) ? static_cast<std::int32_t>(v)
                                             : -static_cast<std::int32_t>(v));
    f.clauses.push_back(std::move(clause));
  }
  return f;
}

inline double max_diff_against(const StateVector& state, const std::vector<Amplitude>& expected) {
  double worst = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i)
    worst = std::max(worst, std::abs(state.amps[i] - expected[i]));
  return worst;
}

}  // namespace qic::test

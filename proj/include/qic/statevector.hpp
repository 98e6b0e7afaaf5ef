#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "qic/errors.hpp"
#include "qic/oracle.hpp"
#include "qic/parallel.hpp"
#include "qic/rng.hpp"

namespace qic {

using Amplitude = std::complex<double>;

// Unit-norm tolerance for states accepted from or returned to callers.
inline constexpr double kNormTolerance = 1e-9;
// Squared-norm threshold below which a pre-normalization state counts as
// total destructive interference.
inline constexpr double kNullTolerance = 1e-9;

// n-qubit register: 2^n complex amplitudes. Basis index convention:
// |b1 b2 ... bn> -> i = sum b_k 2^(n-k), leftmost ket bit most significant.
struct StateVector {
  std::uint32_t n_qubits = 0;
  std::vector<Amplitude> amps;

  std::uint64_t dim() const { return amps.size(); }
};

struct Histogram {
  std::map<std::uint64_t, std::uint64_t> counts;  // basis index -> shots
  std::uint64_t shots = 0;
};

// Chunked Kahan sum of |amp|^2; partials combined in chunk order, so the
// result does not depend on the thread count.
inline double norm_squared(const StateVector& state) {
  return parallel::reduce_chunks(state.amps.size(), [&](std::size_t begin, std::size_t end) {
    double sum = 0.0, c = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      const double y = std::norm(state.amps[i]) - c;
      const double t = sum + y;
      c = (t - sum) - y;
      sum = t;
    }
    return sum;
  });
}

inline bool is_unit_norm(const StateVector& state, double tol = kNormTolerance) {
  return std::abs(norm_squared(state) - 1.0) < tol;
}

// Equal superposition over all 2^n basis states, amplitude 2^(-n/2).
inline StateVector hadamard_uniform(std::uint32_t n, std::uint32_t cap = kDefaultQubitCap) {
  if (n > cap)
    throw CapExceeded("qubit count " + std::to_string(n) + " above cap " + std::to_string(cap));
  StateVector state{n, {}};
  const std::uint64_t dim = dimension(n);
  const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
  state.amps.assign(dim, Amplitude{amp, 0.0});
  return state;
}

// Phase oracle: negates the amplitude of every basis state x with
// oracle(x) false (invalid solution) or x in `exclusions` (already-found
// solution being removed from play). Norm is unchanged.
inline StateVector apply_phase_oracle(const StateVector& state, const Oracle& oracle,
                                      const std::set<std::uint64_t>& exclusions = {}) {
  if (oracle.arity() != state.n_qubits)
    throw ArityMismatch("oracle arity " + std::to_string(oracle.arity()) + " vs register of " +
                        std::to_string(state.n_qubits) + " qubits");
  for (std::uint64_t x : exclusions)
    if (x >= state.dim()) throw Error("exclusion index " + std::to_string(x) + " out of range");

  const std::vector<std::uint64_t> excl(exclusions.begin(), exclusions.end());
  StateVector out{state.n_qubits, std::vector<Amplitude>(state.dim())};
  parallel::for_each_chunk(state.dim(), [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const bool flip = !oracle.eval_index(i) || std::binary_search(excl.begin(), excl.end(), i);
      out.amps[i] = flip ? -state.amps[i] : state.amps[i];
    }
  });
  return out;
}

// Divides every amplitude by the norm. Throws NullInterference when the
// squared norm is below `null_tolerance` instead of dividing by ~0.
inline StateVector renormalize(StateVector state, double null_tolerance = kNullTolerance) {
  const double n2 = norm_squared(state);
  if (!std::isfinite(n2)) throw Error("state contains non-finite amplitudes");
  if (n2 < null_tolerance)
    throw NullInterference("squared norm " + std::to_string(n2) + " below null tolerance");
  const double inv = 1.0 / std::sqrt(n2);
  parallel::for_each_chunk(state.amps.size(), [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) state.amps[i] *= inv;
  });
  return state;
}

// Coherent overlap of two arms: componentwise sum, then renormalization.
// Exact cancellation of the arms (no surviving solutions) surfaces as
// NullInterference.
inline StateVector interfere(const StateVector& arm_a, const StateVector& arm_b,
                             double null_tolerance = kNullTolerance) {
  if (arm_a.n_qubits != arm_b.n_qubits || arm_a.dim() != arm_b.dim())
    throw ShapeMismatch("arms differ: " + std::to_string(arm_a.n_qubits) + " vs " +
                        std::to_string(arm_b.n_qubits) + " qubits");
  StateVector sum{arm_a.n_qubits, std::vector<Amplitude>(arm_a.dim())};
  parallel::for_each_chunk(sum.amps.size(), [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) sum.amps[i] = arm_a.amps[i] + arm_b.amps[i];
  });
  return renormalize(std::move(sum), null_tolerance);
}

// Imperfect-cancellation model: every amplitude picks up a multiplicative
// perturbation (1 + delta*g_i), g_i independent standard complex Gaussians
// (E|g|^2 = 1), then the state is renormalized. delta = 0 is a bit-exact
// identity. Draws come from one child stream of `rng` in index order.
inline StateVector apply_amplitude_noise(const StateVector& state, double delta, MasterRng& rng) {
  if (delta < 0.0) throw Error("noise scale delta must be non-negative");
  RngStream stream = rng.next_stream();
  if (delta == 0.0) return state;
  StateVector out{state.n_qubits, std::vector<Amplitude>(state.dim())};
  for (std::size_t i = 0; i < out.amps.size(); ++i) {
    const Amplitude g = stream.next_complex_gaussian();
    out.amps[i] = state.amps[i] * (1.0 + delta * g);
  }
  return renormalize(std::move(out));
}

// Born-rule sampling: `shots` independent draws from p(i) = |amp_i|^2.
// Deterministic given the master seed.
inline Histogram measure(const StateVector& state, std::uint64_t shots, MasterRng& rng) {
  if (shots == 0) throw Error("shots must be positive");
  if (!is_unit_norm(state))
    throw NotNormalized("measure requires a unit-norm state (squared norm " +
                        std::to_string(norm_squared(state)) + ")");
  RngStream stream = rng.next_stream();

  std::vector<double> cdf(state.dim());
  double acc = 0.0;
  for (std::size_t i = 0; i < cdf.size(); ++i) {
    acc += std::norm(state.amps[i]);
    cdf[i] = acc;
  }
  const double total = cdf.back();

  Histogram hist;
  hist.shots = shots;
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = stream.next_unit_double() * total;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::uint64_t idx = static_cast<std::uint64_t>(
        std::min<std::ptrdiff_t>(it - cdf.begin(), cdf.size() - 1));
    ++hist.counts[idx];
  }
  return hist;
}

// Largest componentwise distance between two states of equal shape.
inline double max_amplitude_diff(const StateVector& a, const StateVector& b) {
  if (a.n_qubits != b.n_qubits || a.dim() != b.dim())
    throw ShapeMismatch("states differ in shape");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.amps.size(); ++i)
    worst = std::max(worst, std::abs(a.amps[i] - b.amps[i]));
  return worst;
}

}  // namespace qic

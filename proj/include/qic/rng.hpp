#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace qic {

namespace detail {

// splitmix64 finalizer; stateless mixing step used for both stream output
// and child-seed derivation.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace detail

// A small self-contained PRNG stream (splitmix64). Self-contained so results
// do not depend on the standard library's distribution implementations.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return detail::mix64(state_);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_unit_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard complex Gaussian CN(0,1): E|g|^2 = 1. Sampled in polar form,
  // |g| = sqrt(-ln u), phase uniform; exactly two draws per sample.
  std::complex<double> next_complex_gaussian() {
    double u = next_unit_double();
    // Clamp away from 0 so the log stays finite.
    if (u <= 0.0) u = 0x1.0p-53;
    const double r = std::sqrt(-std::log(u));
    const double phi = 2.0 * std::numbers::pi * next_unit_double();
    return {r * std::cos(phi), r * std::sin(phi)};
  }

 private:
  std::uint64_t state_;
};

// Master generator: hands out one child stream per operation invocation.
// Child seeds are derived from (master seed, invocation counter), so a run
// is reproducible end to end from the master seed alone and operations
// never share a stream.
class MasterRng {
 public:
  explicit MasterRng(std::uint64_t seed) : seed_(seed) {}

  RngStream next_stream() {
    const std::uint64_t child = detail::mix64(detail::mix64(seed_) ^ counter_);
    ++counter_;
    return RngStream(child);
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t invocations() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace qic

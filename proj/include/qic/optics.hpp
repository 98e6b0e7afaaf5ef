#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qic/errors.hpp"
#include "qic/statevector.hpp"

namespace qic::optics {

// Two-component polarization state; h is horizontal (|0>), v vertical (|1>).
struct JonesVector {
  Amplitude h{0.0, 0.0};
  Amplitude v{0.0, 0.0};
};

inline JonesVector horizontal() { return {{1.0, 0.0}, {0.0, 0.0}}; }
inline JonesVector vertical() { return {{0.0, 0.0}, {1.0, 0.0}}; }

inline double norm_squared(const JonesVector& j) { return std::norm(j.h) + std::norm(j.v); }

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

// Angles are degrees from horizontal throughout.
//
// Rotator(theta): lossless rotation of the polarization plane, parameterized
// by the axis the *vertical* input is carried onto: vertical maps to
// (cos theta, sin theta). Equivalently a plane rotation by theta - 90 deg.
// Rotator(+45) takes |1> to (|0>+|1>)/sqrt(2), Rotator(-45) to
// (|0>-|1>)/sqrt(2); composing theta with -theta returns the input up to a
// global sign.
struct Rotator {
  double theta_deg = 0.0;
};

// Polarizer(theta): transmission along the axis (cos theta, sin theta). The
// transmitted amplitude is the magnitude of the overlap with the axis, so
// the output is always a non-negative multiple of the axis vector. This is
// the Malus-law reading in which a diagonal polarizer fed vertical light
// emits the diagonal state itself, sign included.
struct Polarizer {
  double theta_deg = 0.0;
};

// Attenuator(eta): multiplies both components by sqrt(eta), eta in [0,1].
struct Attenuator {
  double eta = 1.0;
};

using OpticalElement = std::variant<Rotator, Polarizer, Attenuator>;

inline JonesVector apply_element(const OpticalElement& element, const JonesVector& j) {
  return std::visit(
      [&](const auto& e) -> JonesVector {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, Rotator>) {
          const double t = deg_to_rad(e.theta_deg);
          const double s = std::sin(t), c = std::cos(t);
          return {s * j.h + c * j.v, -c * j.h + s * j.v};
        } else if constexpr (std::is_same_v<T, Polarizer>) {
          const double t = deg_to_rad(e.theta_deg);
          const double uh = std::cos(t), uv = std::sin(t);
          const double transmitted = std::abs(uh * j.h + uv * j.v);
          return {{transmitted * uh, 0.0}, {transmitted * uv, 0.0}};
        } else {
          if (e.eta < 0.0 || e.eta > 1.0) throw Error("attenuator eta must lie in [0,1]");
          const double f = std::sqrt(e.eta);
          return {f * j.h, f * j.v};
        }
      },
      element);
}

// Beam path description: input state, one element list per arm, and the
// power split ratio of the entry beam splitter.
struct InterferometerSpec {
  JonesVector input = vertical();
  std::vector<OpticalElement> arm_a;
  std::vector<OpticalElement> arm_b;
  double split_ratio = 0.5;  // fraction of power sent to arm a
};

struct ExperimentResult {
  JonesVector raw_output;                       // coherent arm sum, un-normalized
  double detection_probability = 0.0;           // |raw|^2; can exceed 1 by design
  std::optional<JonesVector> normalized_output; // absent below the null tolerance
};

// Propagates the input through both arms and overlaps them coherently.
// There is no recombining beam splitter: the raw output is the plain sum of
// the arm fields, and its squared norm is reported as-is even when it
// exceeds 1.
inline ExperimentResult run_interferometer(const InterferometerSpec& spec) {
  if (std::abs(norm_squared(spec.input) - 1.0) > 1e-12)
    throw Error("interferometer input must be unit-norm");
  if (!(spec.split_ratio > 0.0 && spec.split_ratio < 1.0))
    throw Error("split ratio must lie strictly between 0 and 1");

  const double wa = std::sqrt(spec.split_ratio);
  const double wb = std::sqrt(1.0 - spec.split_ratio);
  JonesVector a{wa * spec.input.h, wa * spec.input.v};
  JonesVector b{wb * spec.input.h, wb * spec.input.v};
  for (const auto& e : spec.arm_a) a = apply_element(e, a);
  for (const auto& e : spec.arm_b) b = apply_element(e, b);

  ExperimentResult result;
  result.raw_output = {a.h + b.h, a.v + b.v};
  result.detection_probability = norm_squared(result.raw_output);
  if (result.detection_probability >= kNullTolerance) {
    const double inv = 1.0 / std::sqrt(result.detection_probability);
    result.normalized_output = JonesVector{inv * result.raw_output.h, inv * result.raw_output.v};
  }
  return result;
}

enum class Arm { A, B };

// Addresses one element of one arm for an angle sweep.
struct ElementRef {
  Arm arm = Arm::A;
  std::size_t index = 0;
};

struct SweepRow {
  double value = 0.0;                 // the angle that was set, degrees
  double detection_probability = 0.0;
  double vertical_leakage = 0.0;      // |v|^2 of the normalized output; NaN if null
};

// Re-runs the interferometer once per angle value, rows in the given order.
// The referenced element must be a Rotator or Polarizer.
inline std::vector<SweepRow> sweep_angles(const InterferometerSpec& spec, ElementRef ref,
                                          const std::vector<double>& values_deg) {
  InterferometerSpec work = spec;
  std::vector<OpticalElement>& arm = (ref.arm == Arm::A) ? work.arm_a : work.arm_b;
  if (ref.index >= arm.size())
    throw ParamNotFound("element index " + std::to_string(ref.index) + " out of range");
  OpticalElement& target = arm[ref.index];
  if (std::holds_alternative<Attenuator>(target))
    throw ParamNotFound("swept element must be a rotator or polarizer");

  std::vector<SweepRow> rows;
  rows.reserve(values_deg.size());
  for (double value : values_deg) {
    if (auto* r = std::get_if<Rotator>(&target))
      r->theta_deg = value;
    else
      std::get<Polarizer>(target).theta_deg = value;
    const ExperimentResult res = run_interferometer(work);
    SweepRow row;
    row.value = value;
    row.detection_probability = res.detection_probability;
    row.vertical_leakage = res.normalized_output
                               ? std::norm(res.normalized_output->v)
                               : std::numeric_limits<double>::quiet_NaN();
    rows.push_back(row);
  }
  return rows;
}

// Coarse label for reports: H, V, or mixed.
inline std::string polarization_label(const JonesVector& j, double tol = 1e-9) {
  if (std::norm(j.v) < tol) return "H";
  if (std::norm(j.h) < tol) return "V";
  return "mixed";
}

}  // namespace qic::optics

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "qic/engine.hpp"
#include "qic/optics.hpp"
#include "qic/oracle.hpp"
#include "qic/version.hpp"

namespace qic::io {

using Json = nlohmann::ordered_json;

// Fixed-point rendering with 12 significant digits, used for CSV cells.
inline std::string fixed12(double value) {
  if (std::isnan(value)) return "nan";
  if (value == 0.0) return "0";
  const double mag = std::abs(value);
  const int exponent = static_cast<int>(std::floor(std::log10(mag)));
  const int decimals = std::max(0, 11 - exponent);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

inline Json manifest(const std::string& command, std::uint64_t master_seed, Json config_echo) {
  Json m;
  m["command"] = command;
  m["version"] = kVersion;
  m["master_seed"] = master_seed;
  m["config"] = std::move(config_echo);
  return m;
}

inline Json search_config_json(const SearchConfig& config, const std::string& oracle_desc,
                               std::uint32_t n) {
  Json j;
  j["oracle"] = oracle_desc;
  j["n"] = n;
  j["delta"] = config.delta;
  j["repetitions"] = config.repetitions;
  j["shots"] = config.shots;
  j["null_tolerance"] = config.null_tolerance;
  j["max_rounds"] = config.max_rounds;
  return j;
}

// Basis states render as MSB-first bit strings ("001"), never integers.
inline Json probability_table(const std::map<std::uint64_t, double>& probs, std::uint32_t n) {
  Json j = Json::object();
  for (const auto& [index, p] : probs) j[to_bit_string(index, n)] = p;
  return j;
}

inline Json histogram_json(const Histogram& hist, std::uint32_t n) {
  Json counts = Json::object();
  for (const auto& [index, c] : hist.counts) counts[to_bit_string(index, n)] = c;
  Json j;
  j["shots"] = hist.shots;
  j["counts"] = std::move(counts);
  return j;
}

inline Json search_outcome_json(const SearchOutcome& outcome, std::uint32_t n) {
  Json j;
  j["sampled"] = to_bit_string(outcome.sampled_index, n);
  j["verified"] = outcome.verified;
  j["rounds_used"] = outcome.rounds_used;
  j["probabilities"] = probability_table(outcome.post_state_probabilities, n);
  j["histogram"] = histogram_json(outcome.histogram, n);
  return j;
}

inline Json enumeration_report_json(const EnumerationReport& report, std::uint32_t n) {
  Json found = Json::array();
  for (std::uint64_t index : report.found) found.push_back(to_bit_string(index, n));
  Json rounds = Json::array();
  for (const auto& outcome : report.per_round_outcomes) rounds.push_back(search_outcome_json(outcome, n));
  Json j;
  j["found"] = std::move(found);
  j["rounds"] = report.rounds;
  j["terminated_by"] = to_string(report.terminated_by);
  j["per_round"] = std::move(rounds);
  return j;
}

inline Json jones_json(const optics::JonesVector& j) {
  Json out;
  out["h"] = Json::array({j.h.real(), j.h.imag()});
  out["v"] = Json::array({j.v.real(), j.v.imag()});
  return out;
}

inline Json experiment_result_json(const optics::ExperimentResult& result) {
  Json j;
  j["raw_output"] = jones_json(result.raw_output);
  j["detection_probability"] = result.detection_probability;
  if (result.normalized_output) {
    j["normalized_output"] = jones_json(*result.normalized_output);
    j["polarization"] = optics::polarization_label(*result.normalized_output);
  } else {
    j["normalized_output"] = nullptr;
    j["polarization"] = "none";
  }
  return j;
}

}  // namespace qic::io

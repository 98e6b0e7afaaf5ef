#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qic/qic.hpp"

namespace {

using qic::io::Json;

struct OracleOptions {
  std::string cnf_path;
  std::string builtin;
  std::int64_t n = -1;  // required for builtins, optional cross-check for CNF
};

struct LoadedOracle {
  qic::Oracle oracle;
  std::uint32_t n;
};

// Resolves --cnf/--builtin into an oracle. Throws qic::Error on bad input;
// DIMACS diagnostics already carry line numbers.
LoadedOracle load_oracle(const OracleOptions& opts) {
  const bool has_cnf = !opts.cnf_path.empty();
  const bool has_builtin = !opts.builtin.empty();
  if (has_cnf == has_builtin) throw qic::Error("exactly one of --cnf or --builtin is required");

  if (has_cnf) {
    std::ifstream in(opts.cnf_path);
    if (!in) throw qic::Error("cannot open '" + opts.cnf_path + "'");
    qic::CnfFormula formula = qic::parse_dimacs(in);
    const std::uint32_t n = formula.num_vars;
    if (opts.n >= 0 && static_cast<std::uint32_t>(opts.n) != n)
      throw qic::Error("--n " + std::to_string(opts.n) + " contradicts CNF with " + std::to_string(n) +
                       " variables");
    return {qic::Oracle::from_cnf(std::move(formula)), n};
  }
  if (opts.n < 0) throw qic::Error("--n is required with --builtin");
  const auto n = static_cast<std::uint32_t>(opts.n);
  return {qic::make_builtin(opts.builtin, n), n};
}

void emit_json(const Json& j) { std::cout << j.dump(2) << '\n'; }

void emit_csv_manifest(const Json& manifest) {
  std::cout << "# manifest " << manifest.dump() << '\n';
}

int run_search_command(const OracleOptions& oracle_opts, const qic::SearchConfig& config, bool csv) {
  const LoadedOracle loaded = load_oracle(oracle_opts);
  const Json manifest = qic::io::manifest(
      "search", config.master_seed,
      qic::io::search_config_json(config, loaded.oracle.describe(), loaded.n));

  std::optional<qic::SearchOutcome> outcome;
  try {
    outcome = qic::run_search(loaded.oracle, loaded.n, {}, config);
  } catch (const qic::NullInterference&) {
    if (csv) {
      emit_csv_manifest(manifest);
      std::cout << "error,NullInterference\n";
    } else {
      Json j;
      j["manifest"] = manifest;
      j["terminated_by"] = "NullInterference";
      emit_json(j);
    }
    return 2;
  }

  if (csv) {
    emit_csv_manifest(manifest);
    std::cout << "state,probability,count\n";
    std::set<std::uint64_t> keys;
    for (const auto& [i, p] : outcome->post_state_probabilities) keys.insert(i);
    for (const auto& [i, c] : outcome->histogram.counts) keys.insert(i);
    for (std::uint64_t i : keys) {
      const auto pit = outcome->post_state_probabilities.find(i);
      const auto cit = outcome->histogram.counts.find(i);
      std::cout << qic::to_bit_string(i, loaded.n) << ','
                << qic::io::fixed12(pit == outcome->post_state_probabilities.end() ? 0.0 : pit->second)
                << ',' << (cit == outcome->histogram.counts.end() ? 0 : cit->second) << '\n';
    }
  } else {
    Json j;
    j["manifest"] = manifest;
    j.update(qic::io::search_outcome_json(*outcome, loaded.n));
    emit_json(j);
  }
  return outcome->verified ? 0 : 2;
}

int run_enumerate_command(const OracleOptions& oracle_opts, const qic::SearchConfig& config) {
  const LoadedOracle loaded = load_oracle(oracle_opts);
  const Json manifest = qic::io::manifest(
      "enumerate", config.master_seed,
      qic::io::search_config_json(config, loaded.oracle.describe(), loaded.n));

  const qic::EnumerationReport report = qic::enumerate_solutions(loaded.oracle, loaded.n, config);
  Json j;
  j["manifest"] = manifest;
  j.update(qic::io::enumeration_report_json(report, loaded.n));
  emit_json(j);
  return report.terminated_by == qic::Termination::RoundCap ? 3 : 0;
}

struct ExperimentOptions {
  std::string element = "rotator";
  double theta_a = 45.0;
  double theta_b = -45.0;
  std::string sweep;  // "start:stop:step"
  double eta = -1.0;  // <0 = no attenuator
};

std::vector<double> parse_sweep(const std::string& text) {
  double start = 0, stop = 0, step = 0;
  char extra = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &start, &stop, &step, &extra) != 3 || step <= 0.0 ||
      stop < start)
    throw qic::Error("--sweep expects start:stop:step with step > 0 and stop >= start");
  std::vector<double> values;
  for (int i = 0;; ++i) {
    const double v = start + i * step;
    if (v > stop + 1e-9) break;
    values.push_back(v);
  }
  return values;
}

int run_experiment_command(const ExperimentOptions& opts) {
  if (opts.element != "rotator" && opts.element != "polarizer")
    throw qic::Error("--element must be rotator or polarizer");

  qic::optics::InterferometerSpec spec;
  if (opts.element == "rotator") {
    spec.arm_a = {qic::optics::Rotator{opts.theta_a}};
    spec.arm_b = {qic::optics::Rotator{opts.theta_b}};
  } else {
    spec.arm_a = {qic::optics::Polarizer{opts.theta_a}};
    spec.arm_b = {qic::optics::Polarizer{opts.theta_b}};
  }
  if (opts.eta >= 0.0) spec.arm_a.push_back(qic::optics::Attenuator{opts.eta});

  Json config;
  config["element"] = opts.element;
  config["theta_a"] = opts.theta_a;
  config["theta_b"] = opts.theta_b;
  config["split_ratio"] = spec.split_ratio;
  if (opts.eta >= 0.0) config["eta"] = opts.eta;
  if (!opts.sweep.empty()) config["sweep"] = opts.sweep;
  const Json manifest = qic::io::manifest("experiment", 0, config);

  if (!opts.sweep.empty()) {
    const std::vector<double> values = parse_sweep(opts.sweep);
    const auto rows = qic::optics::sweep_angles(spec, {qic::optics::Arm::A, 0}, values);
    emit_csv_manifest(manifest);
    std::cout << "value,detection_probability,vertical_leakage\n";
    for (const auto& row : rows)
      std::cout << qic::io::fixed12(row.value) << ',' << qic::io::fixed12(row.detection_probability)
                << ',' << qic::io::fixed12(row.vertical_leakage) << '\n';
    return 0;
  }

  const qic::optics::ExperimentResult result = qic::optics::run_interferometer(spec);
  Json j;
  j["manifest"] = manifest;
  j.update(qic::io::experiment_result_json(result));
  emit_json(j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qic: interference-amplified search simulator and optical test bench"};
  app.require_subcommand(1);

  OracleOptions oracle_opts;
  qic::SearchConfig config;
  bool csv = false;
  bool json = true;

  auto add_oracle_flags = [&](CLI::App* cmd) {
    cmd->add_option("--cnf", oracle_opts.cnf_path, "DIMACS CNF file defining the oracle");
    cmd->add_option("--builtin", oracle_opts.builtin,
                    "builtin oracle: all-true, all-false, parity, eq7demo, single:<bits>");
    cmd->add_option("--n", oracle_opts.n, "qubit count (required for builtins)");
    cmd->add_option("--delta", config.delta, "noise scale (default 0)");
    cmd->add_option("--reps", config.repetitions, "interference passes before measuring (default 1)");
    cmd->add_option("--shots", config.shots, "measurement shots (default 1024)");
    cmd->add_option("--seed", config.master_seed, "master seed (default 0)");
  };

  CLI::App* search = app.add_subcommand("search", "run one interference search");
  add_oracle_flags(search);
  search->add_flag("--csv", csv, "emit CSV instead of JSON");
  search->add_flag("--json", json, "emit JSON (default)");

  CLI::App* enumerate = app.add_subcommand("enumerate", "enumerate all solutions via exclusion");
  add_oracle_flags(enumerate);
  enumerate->add_option("--max-rounds", config.max_rounds, "round cap (default 4*2^n)");

  ExperimentOptions exp_opts;
  CLI::App* experiment = app.add_subcommand("experiment", "run the polarization test interferometer");
  experiment->add_option("--element", exp_opts.element, "rotator or polarizer (default rotator)");
  experiment->add_option("--theta-a", exp_opts.theta_a, "arm A angle in degrees (default 45)");
  experiment->add_option("--theta-b", exp_opts.theta_b, "arm B angle in degrees (default -45)");
  experiment->add_option("--sweep", exp_opts.sweep, "sweep arm A angle: start:stop:step (emits CSV)");
  experiment->add_option("--eta", exp_opts.eta, "append an attenuator with this transmission to arm A");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (search->parsed()) return run_search_command(oracle_opts, config, csv);
    if (enumerate->parsed()) return run_enumerate_command(oracle_opts, config);
    return run_experiment_command(exp_opts);
  } catch (const qic::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

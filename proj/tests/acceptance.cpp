// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qic/qic.hpp"
#include "support/stats.hpp"
#include "support/test_util.hpp"

using namespace qic;
using Clock = std::chrono::steady_clock;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw Failure(message);
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// --- criterion bodies -------------------------------------------------------

void eq9_reproduction() {
  const auto start = Clock::now();
  MasterRng rng(0);
  const StateVector out = interference_step(hadamard_uniform(3), Oracle::eq7_demo(), {}, 0.0, rng);
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < 8; ++i) {
    const double expected = (i == 1 || i == 3) ? r : 0.0;
    require(std::abs(out.amps[i] - Amplitude{expected, 0.0}) <= 1e-12,
            "amplitude " + std::to_string(i) + " off");
  }
  const Histogram hist = measure(out, 100000, rng);
  for (const auto& [index, count] : hist.counts)
    require(index == 1 || index == 3, "sampled an extinguished state");
  require(hist.counts.at(1) + hist.counts.at(3) == 100000, "lost shots");
  require(seconds_since(start) < 1.0, "took longer than 1 s");
}

void null_interference_case() {
  for (std::uint32_t n = 0; n <= 10; ++n) {
    bool threw = false;
    try {
      run_search(Oracle::all_false(n), n, {}, SearchConfig{});
    } catch (const NullInterference&) {
      threw = true;
    }
    require(threw, "ideal all-false search must cancel at n=" + std::to_string(n));

    const EnumerationReport report = enumerate_solutions(Oracle::all_false(n), n, SearchConfig{});
    require(report.found.empty(), "found solutions of an unsatisfiable oracle");
    require(report.rounds == 1, "needed more than one round");
    require(report.terminated_by == Termination::NullInterference, "wrong termination");
  }
}

void enumeration_vs_brute_force() {
  const auto start = Clock::now();
  RngStream gen(8181);
  SearchConfig config;
  config.shots = 512;
  for (int instance = 0; instance < 100; ++instance) {
    const std::uint32_t n = 4 + static_cast<std::uint32_t>(gen.next_u64() % 7);  // 4..10
    const CnfFormula f = test::random_cnf(gen, n, 2 * n + gen.next_u64() % n);
    const Oracle oracle = Oracle::from_cnf(f);
    config.master_seed = gen.next_u64();
    const EnumerationReport report = enumerate_solutions(oracle, n, config);
    const std::vector<std::uint64_t> expected = brute_force_solutions(oracle);
    require(std::vector<std::uint64_t>(report.found.begin(), report.found.end()) == expected,
            "instance " + std::to_string(instance) + " diverged from brute force");
    require(report.terminated_by != Termination::RoundCap, "hit the round cap");
  }
  require(seconds_since(start) < 30.0, "took longer than 30 s");
}

void projection_idempotence() {
  RngStream gen(4242);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::uint32_t n = 1 + static_cast<std::uint32_t>(gen.next_u64() % 8);  // 1..8
    const Oracle oracle = test::random_oracle(gen, n, true);
    const StateVector state = test::random_unit_state(gen, n);
    MasterRng rng(trial);
    const StateVector once = interference_step(state, oracle, {}, 0.0, rng);
    const StateVector twice = interference_step(once, oracle, {}, 0.0, rng);
    require(max_amplitude_diff(once, twice) < 1e-12,
            "second application moved the state (trial " + std::to_string(trial) + ")");
  }
}

void optical_bench_both_readings() {
  optics::InterferometerSpec rotator_setup;
  rotator_setup.arm_a = {optics::Rotator{45.0}};
  rotator_setup.arm_b = {optics::Rotator{-45.0}};
  const optics::ExperimentResult r = optics::run_interferometer(rotator_setup);
  require(std::abs(r.detection_probability - 1.0) <= 1e-12, "rotator detection probability not 1");
  require(r.normalized_output.has_value(), "rotator output vanished");
  require(std::norm(r.normalized_output->v) < 1e-12, "rotator output leaks vertical");
  require(std::abs(r.normalized_output->h - Amplitude{1.0, 0.0}) <= 1e-12, "rotator output not |0>");

  optics::InterferometerSpec polarizer_setup;
  polarizer_setup.arm_a = {optics::Polarizer{45.0}};
  polarizer_setup.arm_b = {optics::Polarizer{-45.0}};
  const optics::ExperimentResult p = optics::run_interferometer(polarizer_setup);
  require(std::abs(p.detection_probability - 0.5) <= 1e-12, "polarizer detection probability not 0.5");
  require(p.normalized_output.has_value(), "polarizer output vanished");
  require(std::norm(p.normalized_output->v) < 1e-12, "polarizer output leaks vertical");
  require(std::abs(p.normalized_output->h - Amplitude{1.0, 0.0}) <= 1e-12, "polarizer output not |0>");
}

void optics_statevec_consistency() {
  const StateVector uniform = hadamard_uniform(1);
  const Oracle keep_zero = Oracle::from_truth_table(1, {true, false});
  const StateVector reg_out = interfere(apply_phase_oracle(uniform, keep_zero), uniform);

  optics::InterferometerSpec bench;
  bench.arm_a = {optics::Rotator{45.0}};
  bench.arm_b = {optics::Rotator{-45.0}};
  const optics::ExperimentResult result = optics::run_interferometer(bench);
  require(result.normalized_output.has_value(), "bench output vanished");
  require(std::abs(reg_out.amps[0] - result.normalized_output->h) <= 1e-12, "h components differ");
  require(std::abs(reg_out.amps[1] - result.normalized_output->v) <= 1e-12, "v components differ");
}

void sampling_fidelity() {
  RngStream state_rng(12345);
  const StateVector state = test::random_unit_state(state_rng, 3);
  std::vector<double> probabilities(8);
  for (int i = 0; i < 8; ++i) {
    probabilities[i] = std::norm(state.amps[i]);
    require(probabilities[i] * 100000 > 20.0, "test state has an under-resolved cell");
  }
  int passes = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    MasterRng rng(seed);
    const Histogram hist = measure(state, 100000, rng);
    const double chi2 = test::chi_square_statistic(hist.counts, probabilities, hist.shots);
    if (test::chi_square_survival(chi2, 7.0) >= 0.001) ++passes;
  }
  require(passes >= 99, "only " + std::to_string(passes) + "/100 seeds passed the chi-square test");
}

void noise_behavior() {
  const Oracle oracle = Oracle::eq7_demo();
  const double delta = 1e-2;
  double mean[3] = {0.0, 0.0, 0.0};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    MasterRng rng(seed);
    StateVector state = hadamard_uniform(3);
    for (int k = 0; k < 3; ++k) {
      state = interference_step(state, oracle, {}, delta, rng);
      double mass = 0.0;
      for (std::uint64_t i = 0; i < state.dim(); ++i)
        if (!oracle.eval_index(i)) mass += std::norm(state.amps[i]);
      mean[k] += mass;
    }
  }
  for (double& m : mean) m /= 100.0;
  std::printf("        noise means: k=1 %.3e, k=2 %.3e, k=3 %.3e\n", mean[0], mean[1], mean[2]);
  require(mean[0] <= 10 * delta * delta, "non-solution mass above 10*delta^2 after one step");
  require(mean[1] <= mean[0], "mass grew from k=1 to k=2");
  require(mean[2] <= mean[1], "mass grew from k=2 to k=3");
}

void performance_smoke() {
  const Oracle oracle = Oracle::parity(20);
  const StateVector state = hadamard_uniform(20);
  MasterRng rng(0);
  const auto start = Clock::now();
  const StateVector out = interference_step(state, oracle, {}, 0.0, rng);
  const double elapsed = seconds_since(start);
  std::printf("        n=20 step: %.3f s\n", elapsed);
  require(out.dim() == state.dim(), "lost amplitudes");
  require(elapsed < 1.0, "step took " + std::to_string(elapsed) + " s");
}

std::string run_cli_capture(const std::string& args, int& exit_code) {
  static int counter = 0;
  const std::string path = "acceptance_cli_" + std::to_string(counter++) + ".tmp";
  const std::string cmd = std::string(QIC_CLI_PATH) + " " + args + " >" + path + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::remove(path.c_str());
  return ss.str();
}

void cli_determinism() {
  const std::string invocations[] = {
      "search --builtin eq7demo --n 3 --seed 11 --delta 0.02 --reps 3 --shots 5000",
      "search --builtin eq7demo --n 3 --seed 11 --csv",
      "enumerate --builtin parity --n 5 --seed 9 --delta 0.005",
      "enumerate --cnf " + std::string(QIC_TEST_DATA_DIR) + "/random3_n6.cnf --seed 4",
      "experiment --element polarizer --theta-a 44 --theta-b -45",
      "experiment --sweep 0:180:7.5",
  };
  for (const std::string& args : invocations) {
    int code_a = 0, code_b = 0;
    const std::string a = run_cli_capture(args, code_a);
    const std::string b = run_cli_capture(args, code_b);
    require(!a.empty(), "no output from: " + args);
    require(code_a == code_b, "exit codes differ for: " + args);
    require(a == b, "output differs between runs for: " + args);
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void()>>> criteria = {
      {"eq9-reproduction", eq9_reproduction},
      {"null-interference-case", null_interference_case},
      {"enumeration-vs-brute-force", enumeration_vs_brute_force},
      {"projection-idempotence", projection_idempotence},
      {"optical-bench-both-readings", optical_bench_both_readings},
      {"optics-statevec-consistency", optics_statevec_consistency},
      {"sampling-fidelity", sampling_fidelity},
      {"noise-behavior", noise_behavior},
      {"performance-smoke", performance_smoke},
      {"cli-determinism", cli_determinism},
  };

  int failures = 0;
  for (const auto& [name, body] : criteria) {
    const auto start = Clock::now();
    try {
      body();
      std::printf("[PASS] %-28s (%.2f s)\n", name.c_str(), seconds_since(start));
    } catch (const std::exception& e) {
      ++failures;
      std::printf("[FAIL] %-28s %s\n", name.c_str(), e.what());
    }
    std::fflush(stdout);
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}

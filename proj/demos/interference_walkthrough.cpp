// Walks the 3-qubit demo oracle (solutions |001> and |011>) through the
// interference pipeline step by step and prints each state.

#include <cstdio>

#include "qic/qic.hpp"

namespace {

void print_state(const char* label, const qic::StateVector& state) {
  std::printf("%s\n", label);
  for (std::uint64_t i = 0; i < state.dim(); ++i) {
    const auto amp = state.amps[i];
    if (std::abs(amp) < 1e-12) continue;
    std::printf("  |%s>  % .6f %+.6fi   p=%.6f\n", qic::to_bit_string(i, state.n_qubits).c_str(),
                amp.real(), amp.imag(), std::norm(amp));
  }
}

}  // namespace

int main() {
  const qic::Oracle oracle = qic::Oracle::eq7_demo();
  const std::uint32_t n = 3;

  qic::StateVector uniform = qic::hadamard_uniform(n);
  print_state("uniform superposition:", uniform);

  qic::StateVector marked = qic::apply_phase_oracle(uniform, oracle);
  print_state("\nmarked arm (invalid states phase-inverted):", marked);

  qic::StateVector overlapped = qic::interfere(marked, uniform);
  print_state("\nafter overlap of the arms:", overlapped);

  qic::MasterRng rng(7);
  const qic::Histogram hist = qic::measure(overlapped, 100000, rng);
  std::printf("\n100000 shots:\n");
  for (const auto& [index, count] : hist.counts)
    std::printf("  |%s>  %llu\n", qic::to_bit_string(index, n).c_str(),
                static_cast<unsigned long long>(count));

  qic::SearchConfig config;
  config.master_seed = 7;
  const qic::EnumerationReport report = qic::enumerate_solutions(oracle, n, config);
  std::printf("\nenumeration: %llu rounds, terminated by %s, found:",
              static_cast<unsigned long long>(report.rounds), qic::to_string(report.terminated_by));
  for (std::uint64_t index : report.found) std::printf(" |%s>", qic::to_bit_string(index, n).c_str());
  std::printf("\n");
  return 0;
}

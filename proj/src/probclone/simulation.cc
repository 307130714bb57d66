#include "probclone/simulation.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "probclone/error.h"

namespace probclone::sim {
namespace {

using linalg::ComplexVector;
using qstate::PureState;

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t splitmix_finalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t count_successes(std::uint64_t seed, std::uint64_t begin, std::uint64_t end,
                              double eta) {
  std::uint64_t hits = 0;
  for (std::uint64_t i = begin; i < end; ++i) {
    hits += shot_uniform(seed, i) < eta ? 1 : 0;
  }
  return hits;
}

}  // namespace

std::uint64_t shot_bits(std::uint64_t seed, std::uint64_t index) {
  return splitmix_finalize(splitmix_finalize(seed ^ kGolden) + (index + 1) * kGolden);
}

double shot_uniform(std::uint64_t seed, std::uint64_t index) {
  return static_cast<double>(shot_bits(seed, index) >> 11) * 0x1.0p-53;
}

SimulationReport run_monte_carlo(const cloning::CloningMachine& machine, int input_label,
                                 std::uint64_t shots, std::uint64_t seed, unsigned threads) {
  if (shots == 0) {
    throw DomainError("run_monte_carlo: shots must be at least 1");
  }
  const PureState& input = machine.designated(input_label);
  const double eta = machine.eta();
  const cloning::CloneOutcome success = cloning::postselect(machine, input);

  threads = std::max(1u, threads);
  const std::uint64_t chunks = std::min<std::uint64_t>(threads, shots);
  std::vector<std::uint64_t> partial(chunks, 0);
  if (chunks == 1) {
    partial[0] = count_successes(seed, 0, shots, eta);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(chunks);
    for (std::uint64_t c = 0; c < chunks; ++c) {
      const std::uint64_t begin = shots * c / chunks;
      const std::uint64_t end = shots * (c + 1) / chunks;
      workers.emplace_back(
          [&partial, c, seed, begin, end, eta] { partial[c] = count_successes(seed, begin, end, eta); });
    }
    for (auto& w : workers) {
      w.join();
    }
  }

  SimulationReport report;
  report.seed = seed;
  report.shots = shots;
  report.input_label = input_label;
  for (auto hits : partial) {
    report.successes += hits;
  }
  report.empirical_eta = static_cast<double>(report.successes) / static_cast<double>(shots);
  report.analytic_eta = eta;
  const double n = static_cast<double>(shots);
  const double variance = n * eta * (1.0 - eta);
  report.z_score =
      variance > 0.0 ? (static_cast<double>(report.successes) - n * eta) / std::sqrt(variance) : 0.0;
  report.mean_clone_fidelity = report.successes > 0 ? success.clone_fidelity : 0.0;
  return report;
}

FilterDemoReport filter_demo() {
  const double r = 1.0 / std::sqrt(2.0);
  const PureState psi0(ComplexVector{r, 0.0, r});
  const PureState psi1(ComplexVector{0.0, r, r});
  const std::array<ComplexVector, 3> observable_basis{
      ComplexVector::basis(3, 0), ComplexVector::basis(3, 1), ComplexVector::basis(3, 2)};
  constexpr std::size_t kDiscarded = 2;

  auto kept = [&](const PureState& psi) {
    auto outcomes = qstate::measure_projective(psi, observable_basis);
    outcomes.erase(outcomes.begin() + kDiscarded);
    return outcomes;
  };
  const auto kept0 = kept(psi0);
  const auto kept1 = kept(psi1);

  FilterDemoReport report;
  report.fidelity_before =
      qstate::fidelity(qstate::pure_to_density(psi0), qstate::pure_to_density(psi1));
  report.fidelity_after = qstate::fidelity(qstate::mixture(kept0), qstate::mixture(kept1));
  for (const auto& o : kept0) {
    report.keep_probability_psi0 += o.probability;
  }
  for (const auto& o : kept1) {
    report.keep_probability_psi1 += o.probability;
  }
  report.monotonicity_violated = report.fidelity_after < report.fidelity_before - 1e-12;
  return report;
}

bool fidelity_monotone_check(const qstate::DensityOperator& rho0_before,
                             const qstate::DensityOperator& rho1_before,
                             const qstate::DensityOperator& rho0_after,
                             const qstate::DensityOperator& rho1_after) {
  return qstate::fidelity(rho0_before, rho1_before) <=
         qstate::fidelity(rho0_after, rho1_after) + 1e-12;
}

}  // namespace probclone::sim

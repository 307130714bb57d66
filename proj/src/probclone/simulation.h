#ifndef PROBCLONE_SIMULATION_H
#define PROBCLONE_SIMULATION_H

#include <cstdint>
#include <string_view>

#include "probclone/cloning_machine.h"
#include "probclone/quantum_state.h"

namespace probclone::sim {

// Counter-based generator: the draw for a shot is a pure function of
// (seed, shot index), two rounds of the SplitMix64 finalizer.  Reports carry
// this identifier so a change of algorithm is visible.
inline constexpr std::string_view kGeneratorId = "splitmix64-counter-v1";

std::uint64_t shot_bits(std::uint64_t seed, std::uint64_t index);
// Uniform in [0, 1) with 53 bits of resolution.
double shot_uniform(std::uint64_t seed, std::uint64_t index);

struct SimulationReport {
  std::uint64_t seed = 0;
  std::uint64_t shots = 0;
  int input_label = 0;
  std::uint64_t successes = 0;
  double empirical_eta = 0.0;
  double analytic_eta = 0.0;
  // (successes - shots*eta) / sqrt(shots*eta*(1-eta)); 0 when the variance
  // vanishes.
  double z_score = 0.0;
  double mean_clone_fidelity = 0.0;
};

// Samples the probe outcome of every shot as a Bernoulli draw with the
// machine's analytic efficiency.  The machine is applied once; every
// successful shot carries the fidelity of that cached success-branch state.
// The report is independent of the thread count.
SimulationReport run_monte_carlo(const cloning::CloningMachine& machine, int input_label,
                                 std::uint64_t shots, std::uint64_t seed, unsigned threads = 1);

struct FilterDemoReport {
  double fidelity_before = 0.0;
  double fidelity_after = 0.0;
  double keep_probability_psi0 = 0.0;
  double keep_probability_psi1 = 0.0;
  bool monotonicity_violated = false;
};

// Two three-level states (|s1>+|s3>)/sqrt2 and (|s2>+|s3>)/sqrt2 measured in
// the s basis, with outcome s3 discarded.  The kept states are orthogonal,
// so measurement with rejection lowers fidelity from 1/2 to 0.
FilterDemoReport filter_demo();

// F(before) <= F(after) + 1e-12.
bool fidelity_monotone_check(const qstate::DensityOperator& rho0_before,
                             const qstate::DensityOperator& rho1_before,
                             const qstate::DensityOperator& rho0_after,
                             const qstate::DensityOperator& rho1_after);

}  // namespace probclone::sim

#endif  // PROBCLONE_SIMULATION_H

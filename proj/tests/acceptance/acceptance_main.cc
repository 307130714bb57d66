// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.  Tolerances are fixed here and never loosened at runtime.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "commands.h"
#include "probclone/cloning_machine.h"
#include "probclone/efficiency_bounds.h"
#include "probclone/linalg.h"
#include "probclone/quantum_state.h"
#include "probclone/simulation.h"
#include "probclone/unitary_synthesis.h"
#include "test_util.h"

namespace {

using namespace probclone;
using cloning::build_machine;
using cloning::CloningMachine;
using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::ComplexVector;
using qstate::DensityOperator;
using qstate::PureState;

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

const std::vector<double> kGridOverlaps{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
const std::vector<std::size_t> kGridDims{2, 3, 4};

// The pair sits at overlap s in a random orientation of C^n.
std::pair<PureState, PureState> grid_pair(std::mt19937_64& rng, double s, std::size_t n) {
  const ComplexMatrix frame = testing::random_unitary(rng, n);
  const ComplexVector b = s * frame.column(0) + std::sqrt(1 - s * s) * frame.column(1);
  return {PureState(frame.column(0)), PureState::normalized(b)};
}

Outcome filter_counterexample() {
  const auto start = std::chrono::steady_clock::now();
  const cli::CommandResult r = cli::cmd_filter_demo();
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double before = r.report["results"]["fidelity_before"].get<double>();
  const double after = r.report["results"]["fidelity_after"].get<double>();
  const bool ok = r.exit_code == 0 && std::abs(before - 0.5) <= 1e-12 &&
                  std::abs(after) <= 1e-12 && elapsed < 1.0;
  return {ok, fmt("fidelity_before=%.17g fidelity_after=%.3g runtime=%.3fs", before, after,
                  elapsed)};
}

Outcome golden_construction() {
  const CloningMachine m = build_machine(
      PureState::basis(2, 0), PureState(ComplexVector{1.0 / 3.0, std::sqrt(8.0) / 3.0}));
  ComplexVector img0(8);
  img0[0b000] = std::sqrt(3.0) / 2.0;
  img0[0b001] = 0.5;
  ComplexVector img1(8);
  img1[0b000] = -1.0 / (2.0 * std::sqrt(6.0));
  img1[0b010] = 1.0 / (2.0 * std::sqrt(3.0));
  img1[0b100] = 1.0 / (2.0 * std::sqrt(3.0));
  img1[0b110] = std::sqrt(2.0 / 3.0);
  img1[0b001] = 1.0 / (2.0 * std::sqrt(2.0));
  const double d0 = linalg::max_abs_diff(m.unitary().column(0b000), img0);
  const double d1 = linalg::max_abs_diff(m.unitary().column(0b100), img1);
  return {std::max(d0, d1) <= 1e-10,
          fmt("max coefficient error |000> image %.2e, |100> image %.2e", d0, d1)};
}

Outcome unitarity_and_cloning() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2024);
  double worst_unitarity = 0.0;
  double worst_fidelity_gap = 0.0;
  double worst_probability = 0.0;
  for (std::size_t n : kGridDims) {
    for (double s : kGridOverlaps) {
      const auto [psi0, psi1] = grid_pair(rng, s, n);
      const CloningMachine m = build_machine(psi0, psi1);
      worst_unitarity = std::max(worst_unitarity, linalg::is_unitary(m.unitary()).residual);
      for (int label : {0, 1}) {
        const auto out = cloning::postselect(m, m.designated(label));
        worst_fidelity_gap = std::max(worst_fidelity_gap, 1.0 - out.clone_fidelity);
        worst_probability =
            std::max(worst_probability, std::abs(out.probability - 1.0 / (1.0 + s)));
      }
    }
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool ok = worst_unitarity <= 1e-10 && worst_fidelity_gap <= 1e-9 &&
                  worst_probability <= 1e-9 && elapsed < 10.0;
  return {ok, fmt("30 machines: unitarity<=%.2e 1-fidelity<=%.2e |p-1/(1+s)|<=%.2e "
                  "runtime=%.3fs",
                  worst_unitarity, worst_fidelity_gap, worst_probability, elapsed)};
}

Outcome bound_saturation() {
  std::mt19937_64 rng(2025);
  double worst_eta = 0.0;
  double worst_flag = 0.0;
  int unsaturated = 0;
  for (std::size_t n : kGridDims) {
    for (double s : kGridOverlaps) {
      const auto [psi0, psi1] = grid_pair(rng, s, n);
      const auto a = bounds::analyze_machine(bounds::general_spec(build_machine(psi0, psi1)));
      const double target = 1.0 / (1.0 + s);
      worst_eta = std::max({worst_eta, std::abs(a.eta0 - target), std::abs(a.eta1 - target)});
      worst_flag = std::max(worst_flag, std::abs(a.flag_overlap - Complex(1.0)));
      unsaturated += a.saturated ? 0 : 1;
    }
  }
  return {worst_eta <= 1e-9 && worst_flag <= 1e-9 && unsaturated == 0,
          fmt("|eta-1/(1+s)|<=%.2e |flag_overlap-1|<=%.2e unsaturated=%d", worst_eta, worst_flag,
              unsaturated)};
}

Outcome no_perfect_cloning() {
  int wrongly_allowed = 0;
  for (int k = 1; k <= 9; ++k) {
    for (double f : {0.0, 0.5, 1.0}) {
      wrongly_allowed += bounds::check_no_perfect_cloning(k / 10.0, 1.0, 1.0, f) ? 1 : 0;
    }
  }
  int saturation_rejected = 0;
  for (int k = 1; k <= 9; ++k) {
    const double eta = 1.0 / (1.0 + k / 10.0);
    saturation_rejected += bounds::check_no_perfect_cloning(k / 10.0, eta, eta, 1.0) ? 0 : 1;
  }
  return {wrongly_allowed == 0 && saturation_rejected == 0,
          fmt("perfect cloning allowed in %d/27 cases, saturation point rejected in %d/9",
              wrongly_allowed, saturation_rejected)};
}

Outcome monte_carlo() {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  double worst_fidelity_gap = 0.0;
  for (double s : {0.2, 1.0 / 3.0, 0.5}) {
    const CloningMachine m = build_machine(
        PureState::basis(2, 0), PureState(ComplexVector{s, std::sqrt(1 - s * s)}));
    int within = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto r = sim::run_monte_carlo(m, static_cast<int>(seed % 2), 100000, seed);
      within += std::abs(r.z_score) <= 3.0 ? 1 : 0;
      worst_fidelity_gap = std::max(worst_fidelity_gap, 1.0 - r.mean_clone_fidelity);
    }
    ok = ok && within >= 19;
    detail += fmt("s=%.3f %d/20 |z|<=3; ", s, within);
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ok = ok && worst_fidelity_gap <= 1e-9 && elapsed < 10.0;
  return {ok, detail + fmt("1-fidelity<=%.2e runtime=%.3fs", worst_fidelity_gap, elapsed)};
}

Outcome lemma_properties() {
  std::mt19937_64 rng(2026);
  std::uniform_int_distribution<std::size_t> dim_dist(2, 16);
  double worst_mapping = 0.0;
  double worst_unitarity = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t dim = dim_dist(rng);
    const ComplexVector a = testing::random_vector(rng, dim);
    const ComplexVector b = testing::random_vector(rng, dim);
    const ComplexMatrix v = testing::random_unitary(rng, dim);
    const ComplexVector ta = linalg::matvec(v, a);
    const ComplexVector tb = linalg::matvec(v, b);
    const ComplexMatrix u = synthesis::lemma2_unitary(a, b, ta, tb);
    worst_mapping = std::max({worst_mapping, (linalg::matvec(u, a) - ta).norm(),
                              (linalg::matvec(u, b) - tb).norm()});
    worst_unitarity = std::max(worst_unitarity, linalg::is_unitary(u).residual);
  }

  int audited = 0;
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto cm = testing::compliant_machine(rng, 2 + static_cast<std::size_t>(trial) % 3, 3);
    if (!cm) {
      continue;
    }
    const auto a = bounds::analyze_machine(cm->spec);
    if (a.orthogonality_violation > 1e-9) {
      continue;
    }
    ++audited;
    const bool holds = a.inner_product_lhs <= a.inner_product_rhs + 1e-9 &&
                       a.mean_eta <= a.universal_limit + 1e-9;
    violations += holds ? 0 : 1;
  }
  const bool ok = worst_mapping <= 1e-9 && worst_unitarity <= 1e-10 && audited > 0 &&
                  violations == 0;
  return {ok, fmt("1000 instances: mapping<=%.2e unitarity<=%.2e; audit %d machines, "
                  "%d violations",
                  worst_mapping, worst_unitarity, audited, violations)};
}

Outcome fidelity_invariance() {
  std::mt19937_64 rng(2027);
  std::uniform_int_distribution<std::size_t> dim_dist(2, 4);
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = dim_dist(rng);
    const std::size_t k = dim_dist(rng);
    const ComplexMatrix f0 = testing::random_factor(rng, n);
    const ComplexMatrix f1 = testing::random_factor(rng, n);
    const double reference = testing::factor_fidelity(f0, f1);
    // System joined with a fixed ancilla, then a random unitary on the pair.
    const ComplexMatrix ancilla = qstate::pure_to_density(PureState::basis(k, 0)).matrix();
    const DensityOperator rho0(linalg::kron(testing::density_from_factor(f0), ancilla));
    const DensityOperator rho1(linalg::kron(testing::density_from_factor(f1), ancilla));
    const ComplexMatrix u = testing::random_unitary(rng, n * k);
    const double after = qstate::fidelity(qstate::evolve(rho0, u), qstate::evolve(rho1, u));
    worst = std::max(worst, std::abs(after - reference));
  }
  const auto demo = sim::filter_demo();
  return {worst <= 1e-9 && demo.monotonicity_violated,
          fmt("500 checks: |F_after-F_before|<=%.2e; filter demo violated=%s", worst,
              demo.monotonicity_violated ? "true" : "false")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"filter counterexample", filter_counterexample},
      {"golden construction", golden_construction},
      {"unitarity and cloning correctness", unitarity_and_cloning},
      {"bound saturation", bound_saturation},
      {"no perfect cloning", no_perfect_cloning},
      {"Monte Carlo statistics", monte_carlo},
      {"lemma property suite", lemma_properties},
      {"fidelity invariance", fidelity_invariance},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.passed ? 0 : 1;
    std::printf("%s [%zu] %s: %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

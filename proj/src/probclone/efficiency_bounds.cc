#include "probclone/efficiency_bounds.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "probclone/error.h"

namespace probclone::bounds {
namespace {

using linalg::ComplexVector;

// Below this a branch residual has no reliable direction to test. The
// threshold sits well above sqrt(eps): an overlap of 1e-17 from round-off
// already produces a failure amplitude near 3e-9, and normalizing by it would
// magnify the noise in the flag contraction.
constexpr double kVanishingResidual = 1e-6;

void require_overlap(double s, const char* op) {
  if (!(s >= 0.0 && s < 1.0)) {
    throw DomainError(std::string(op) + ": overlap must lie in [0, 1), got " + std::to_string(s));
  }
}

// sum_p conj(flag[p]) v[ab * dp + p], returned as its norm.
double contracted_norm(const ComplexVector& v, const ComplexVector& flag) {
  const std::size_t dp = flag.size();
  const std::size_t rest = v.size() / dp;
  double acc = 0.0;
  for (std::size_t ab = 0; ab < rest; ++ab) {
    Complex c{};
    for (std::size_t p = 0; p < dp; ++p) {
      c += std::conj(flag[p]) * v[ab * dp + p];
    }
    acc += std::norm(c);
  }
  return std::sqrt(acc);
}

double flag_violation(const ComplexVector& residual, double residual_norm,
                      const ComplexVector& flag0, const ComplexVector& flag1) {
  const double worst =
      std::max(contracted_norm(residual, flag0), contracted_norm(residual, flag1));
  return residual_norm > kVanishingResidual ? worst / residual_norm : worst;
}

}  // namespace

double universal_bound(double overlap_s) {
  require_overlap(overlap_s, "universal_bound");
  return 1.0 / (1.0 + overlap_s);
}

double mean_efficiency_bound(double overlap_s, double flag_overlap) {
  require_overlap(overlap_s, "mean_efficiency_bound");
  if (!(flag_overlap >= -1.0 && flag_overlap <= 1.0)) {
    throw DomainError("mean_efficiency_bound: flag overlap must lie in [-1, 1], got " +
                      std::to_string(flag_overlap));
  }
  const double denominator = 1.0 - overlap_s * overlap_s * flag_overlap;
  if (!(denominator > 0.0)) {
    throw DomainError("mean_efficiency_bound: non-positive denominator");
  }
  return (1.0 - overlap_s) / denominator;
}

bool check_no_perfect_cloning(double overlap_s, double eta0, double eta1, double flag_overlap) {
  return 0.5 * (eta0 + eta1) <= mean_efficiency_bound(overlap_s, flag_overlap) + 1e-12;
}

GeneralMachineSpec general_spec(const cloning::CloningMachine& machine) {
  const auto& cfg = machine.config();
  return {machine.unitary(), cfg.sigma,      cfg.probe_success, cfg.probe_success,
          cfg.probe_success, machine.psi0(), machine.psi1()};
}

BoundAnalysis analyze_machine(const GeneralMachineSpec& spec) {
  const std::size_t n = spec.psi0.dim();
  const std::size_t dp = spec.probe_init.dim();
  if (spec.psi1.dim() != n || spec.sigma.dim() != n) {
    throw DimensionError("analyze_machine: psi0, psi1 and sigma must share a dimension");
  }
  if (dp < 2 || spec.probe_flag0.dim() != dp || spec.probe_flag1.dim() != dp) {
    throw DimensionError("analyze_machine: probe states must share a dimension of at least 2");
  }
  const std::size_t total = n * n * dp;
  if (spec.unitary.rows() != total || spec.unitary.cols() != total) {
    throw DimensionError("analyze_machine: operator must be " + std::to_string(total) + "x" +
                         std::to_string(total));
  }

  const std::array<const PureState*, 2> psi{&spec.psi0, &spec.psi1};
  const std::array<const PureState*, 2> flag{&spec.probe_flag0, &spec.probe_flag1};
  const ComplexVector& m0 = spec.probe_flag0.amplitudes();
  const ComplexVector& m1 = spec.probe_flag1.amplitudes();

  std::array<Complex, 2> clone_amp{};
  std::array<double, 2> eta{};
  std::array<double, 2> residual_norm{};
  std::vector<ComplexVector> residual;
  double violation = 0.0;
  for (std::size_t s = 0; s < 2; ++s) {
    const ComplexVector& p = psi[s]->amplitudes();
    const ComplexVector input = linalg::kron(linalg::kron(p, spec.sigma.amplitudes()),
                                             spec.probe_init.amplitudes());
    const ComplexVector output = linalg::matvec(spec.unitary, input);
    const ComplexVector ideal = linalg::kron(linalg::kron(p, p), flag[s]->amplitudes());
    clone_amp[s] = linalg::inner(ideal, output);
    eta[s] = std::min(1.0, std::norm(clone_amp[s]));
    residual.push_back(output - clone_amp[s] * ideal);
    residual_norm[s] = residual.back().norm();
    violation = std::max(violation, flag_violation(residual.back(), residual_norm[s], m0, m1));
  }

  BoundAnalysis a;
  a.eta0 = eta[0];
  a.eta1 = eta[1];
  a.flag_overlap = linalg::inner(m0, m1);
  a.overlap = linalg::inner(spec.psi0.amplitudes(), spec.psi1.amplitudes());
  a.residual0 = residual_norm[0];
  a.residual1 = residual_norm[1];
  a.orthogonality_violation = violation;
  a.residual_overlap = linalg::inner(residual[0], residual[1]);

  const Complex lhs =
      a.overlap - std::conj(clone_amp[0]) * clone_amp[1] * a.overlap * a.overlap * a.flag_overlap;
  a.inner_product_lhs = lhs.real();
  a.inner_product_lhs_imag = lhs.imag();
  a.inner_product_rhs = std::sqrt((1.0 - a.eta0) * (1.0 - a.eta1));

  const double s = std::abs(a.overlap);
  a.mean_eta = 0.5 * (a.eta0 + a.eta1);
  a.mean_bound = mean_efficiency_bound(s, std::clamp(a.flag_overlap.real(), -1.0, 1.0));
  a.universal_limit = universal_bound(s);
  a.saturated = std::abs(a.mean_eta - a.universal_limit) <= kSaturationTolerance;
  return a;
}

}  // namespace probclone::bounds

#include "probclone/verification.h"

#include <algorithm>
#include <cmath>

namespace probclone::verify {
namespace {

using linalg::ComplexVector;

bool near_basis(const ComplexVector& v, std::size_t index) {
  return linalg::max_abs_diff(v, ComplexVector::basis(v.size(), index)) <= 1e-12;
}

bool is_golden_candidate(const cloning::CloningMachine& m) {
  if (m.system_dim() != 2) {
    return false;
  }
  const auto& cfg = m.config();
  const ComplexVector& psi1 = m.psi1().amplitudes();
  return near_basis(m.psi0().amplitudes(), 0) && near_basis(cfg.sigma.amplitudes(), 0) &&
         near_basis(cfg.phi_ab.amplitudes(), 0) && near_basis(cfg.probe_success.amplitudes(), 0) &&
         near_basis(cfg.probe_fail.amplitudes(), 1) && std::abs(psi1[0].imag()) <= 1e-12 &&
         std::abs(psi1[1].imag()) <= 1e-12 && psi1[0].real() >= 0.0 && psi1[1].real() >= 0.0;
}

}  // namespace

Report verify_machine(const cloning::CloningMachine& machine, const Tolerances& tol) {
  Report r;
  r.unitarity_residual = linalg::is_unitary(machine.unitary()).residual;

  const ComplexVector src0 = machine.source(0);
  const ComplexVector src1 = machine.source(1);
  const ComplexVector tgt0 = machine.target(0);
  const ComplexVector tgt1 = machine.target(1);
  r.gram = synthesis::check_gram(src0, src1, tgt0, tgt1, tol.gram);
  r.mapping_residual =
      std::max(linalg::max_abs_diff(linalg::matvec(machine.unitary(), src0), tgt0),
               linalg::max_abs_diff(linalg::matvec(machine.unitary(), src1), tgt1));

  const double a00 = machine.amplitudes().a00;
  r.eta_deviation = std::max(std::abs(machine.eta() - a00 * a00),
                             std::abs(machine.eta() - 1.0 / (1.0 + machine.overlap_s())));

  r.bounds = bounds::analyze_machine(bounds::general_spec(machine));

  if (is_golden_candidate(machine)) {
    const double alpha = std::atan(std::sqrt(machine.overlap_s()));
    const auto golden = cloning::qubit_example_images(alpha);
    r.golden_checked = true;
    r.golden_residual =
        std::max(linalg::max_abs_diff(machine.unitary().column(0b000), golden.phi0_img.amplitudes()),
                 linalg::max_abs_diff(machine.unitary().column(0b100), golden.phi1_img.amplitudes()));
  }

  auto add = [&r](std::string name, double value, double limit) {
    r.checks.push_back({std::move(name), value, limit, value <= limit});
  };
  add("unitarity_residual", r.unitarity_residual, tol.unitarity);
  add("gram_norm0_delta", r.gram.norm0_delta, tol.gram);
  add("gram_norm1_delta", r.gram.norm1_delta, tol.gram);
  add("gram_cross_delta", r.gram.cross_delta, tol.gram);
  add("mapping_residual", r.mapping_residual, tol.mapping);
  add("eta_deviation", r.eta_deviation, tol.eta);
  add("orthogonality_violation", r.bounds.orthogonality_violation, tol.orthogonality);
  add("saturation_gap", std::abs(r.bounds.mean_eta - r.bounds.universal_limit), tol.saturation);
  if (r.golden_checked) {
    add("golden_residual", r.golden_residual, tol.golden);
  }
  r.passed = std::all_of(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.passed; });
  return r;
}

}  // namespace probclone::verify

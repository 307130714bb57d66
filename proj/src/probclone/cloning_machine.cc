#include "probclone/cloning_machine.h"

#include <cmath>
#include <numbers>
#include <string>

#include "probclone/error.h"
#include "probclone/unitary_synthesis.h"

namespace probclone::cloning {
namespace {

void require_dim(const PureState& state, std::size_t dim, const char* name) {
  if (state.dim() != dim) {
    throw DimensionError(std::string(name) + " has dimension " + std::to_string(state.dim()) +
                         ", expected " + std::to_string(dim));
  }
}

void validate_config(const MachineConfig& config, std::size_t n) {
  require_dim(config.sigma, n, "sigma");
  require_dim(config.phi_ab, n * n, "phi_ab");
  require_dim(config.probe_success, kProbeDim, "probe_success");
  require_dim(config.probe_fail, kProbeDim, "probe_fail");
  const double overlap =
      std::abs(linalg::inner(config.probe_success.amplitudes(), config.probe_fail.amplitudes()));
  if (overlap > 1e-12) {
    throw DomainError("probe flags are not orthogonal (overlap " + std::to_string(overlap) + ")");
  }
}

PureState with_shape(const PureState& state, SpaceShape shape) {
  return PureState(state.amplitudes(), std::move(shape));
}

}  // namespace

CloningAmplitudes compute_amplitudes(double overlap_s) {
  if (!(overlap_s >= 0.0 && overlap_s < 1.0)) {
    throw DomainError("compute_amplitudes: overlap must lie in [0, 1), got " +
                      std::to_string(overlap_s));
  }
  const double clone = 1.0 / std::sqrt(1.0 + overlap_s);
  const double fail = std::sqrt(overlap_s) / std::sqrt(1.0 + overlap_s);
  return {clone, fail, clone, fail};
}

MachineConfig MachineConfig::defaults(std::size_t system_dim) {
  return {PureState::basis(system_dim, 0),
          PureState(ComplexVector::basis(system_dim * system_dim, 0),
                    SpaceShape({system_dim, system_dim})),
          PureState::basis(kProbeDim, 0), PureState::basis(kProbeDim, 1)};
}

CloningMachine::CloningMachine(PureState psi0, PureState psi1, double overlap_s,
                               double rephase_angle, MachineConfig config,
                               CloningAmplitudes amplitudes, ComplexMatrix unitary, double eta)
    : psi0_(std::move(psi0)),
      psi1_(std::move(psi1)),
      overlap_s_(overlap_s),
      rephase_angle_(rephase_angle),
      config_(std::move(config)),
      amplitudes_(amplitudes),
      unitary_(std::move(unitary)),
      eta_(eta) {}

CloningMachine CloningMachine::from_parts(PureState psi0, PureState psi1, double overlap_s,
                                          double rephase_angle, MachineConfig config,
                                          CloningAmplitudes amplitudes, ComplexMatrix unitary,
                                          double eta) {
  const std::size_t n = psi0.dim();
  if (n < 2) {
    throw DimensionError("cloning machine: system dimension must be at least 2");
  }
  require_dim(psi1, n, "psi1");
  validate_config(config, n);
  const std::size_t total = n * n * kProbeDim;
  if (unitary.rows() != total || unitary.cols() != total) {
    throw DimensionError("cloning machine: unitary must be " + std::to_string(total) + "x" +
                         std::to_string(total));
  }
  if (!(overlap_s >= 0.0 && overlap_s < 1.0) || !std::isfinite(rephase_angle) ||
      !(eta >= 0.0 && eta <= 1.0)) {
    throw DomainError("cloning machine: overlap, phase or efficiency out of range");
  }
  return CloningMachine(std::move(psi0), std::move(psi1), overlap_s, rephase_angle,
                        std::move(config), amplitudes, std::move(unitary), eta);
}

const PureState& CloningMachine::designated(int label) const {
  if (label == 0) {
    return psi0_;
  }
  if (label == 1) {
    return psi1_;
  }
  throw DomainError("designated input label must be 0 or 1, got " + std::to_string(label));
}

SpaceShape CloningMachine::shape() const {
  return SpaceShape({system_dim(), system_dim(), kProbeDim});
}

ComplexVector CloningMachine::source(int label) const {
  const ComplexVector& psi = designated(label).amplitudes();
  return linalg::kron(linalg::kron(psi, config_.sigma.amplitudes()),
                      config_.probe_success.amplitudes());
}

ComplexVector CloningMachine::target(int label) const {
  const ComplexVector& psi = designated(label).amplitudes();
  const double clone_amp = label == 0 ? amplitudes_.a00 : amplitudes_.a10;
  const double fail_amp = label == 0 ? amplitudes_.a01 : amplitudes_.a11;
  ComplexVector clone =
      linalg::kron(linalg::kron(psi, psi), config_.probe_success.amplitudes());
  ComplexVector fail = linalg::kron(config_.phi_ab.amplitudes(), config_.probe_fail.amplitudes());
  return clone_amp * clone + fail_amp * fail;
}

CloningMachine build_machine(const PureState& psi0, const PureState& psi1,
                             const MachineConfig& config) {
  const std::size_t n = psi0.dim();
  if (n < 2) {
    throw DimensionError("build_machine: system dimension must be at least 2");
  }
  require_dim(psi1, n, "psi1");
  validate_config(config, n);

  const linalg::Complex overlap = linalg::inner(psi0.amplitudes(), psi1.amplitudes());
  const double s = std::abs(overlap);
  if (s > kMaxOverlap) {
    throw DomainError("build_machine: states are too close to identical (|<psi0|psi1>| = " +
                      std::to_string(s) + ")");
  }
  const double angle = s > 0.0 ? std::arg(overlap) : 0.0;
  PureState psi1_real = psi1.with_phase(-angle);

  const CloningAmplitudes amps = compute_amplitudes(s);
  MachineConfig cfg{with_shape(config.sigma, SpaceShape::single(n)),
                    with_shape(config.phi_ab, SpaceShape({n, n})),
                    with_shape(config.probe_success, SpaceShape::single(kProbeDim)),
                    with_shape(config.probe_fail, SpaceShape::single(kProbeDim))};

  // Placeholder unitary so source()/target() can assemble the vectors.
  const std::size_t total = n * n * kProbeDim;
  const CloningMachine draft = CloningMachine::from_parts(
      with_shape(psi0, SpaceShape::single(n)), with_shape(psi1_real, SpaceShape::single(n)), s,
      angle, std::move(cfg), amps, ComplexMatrix::identity(total), amps.a00 * amps.a00);

  ComplexMatrix u = synthesis::lemma2_unitary(draft.source(0), draft.source(1), draft.target(0),
                                              draft.target(1));
  const auto check = linalg::is_unitary(u, 1e-10);
  if (!check.unitary) {
    throw NumericalError("build_machine: synthesized operator has unitarity residual " +
                         std::to_string(check.residual));
  }
  return CloningMachine::from_parts(draft.psi0(), draft.psi1(), s, angle, draft.config(), amps,
                                    std::move(u), amps.a00 * amps.a00);
}

CloningMachine build_machine(const PureState& psi0, const PureState& psi1) {
  return build_machine(psi0, psi1, MachineConfig::defaults(psi0.dim()));
}

PureState apply_machine(const CloningMachine& machine, const PureState& input_a) {
  require_dim(input_a, machine.system_dim(), "input state");
  const MachineConfig& cfg = machine.config();
  const ComplexVector initial = linalg::kron(
      linalg::kron(input_a.amplitudes(), cfg.sigma.amplitudes()), cfg.probe_success.amplitudes());
  ComplexVector out = linalg::matvec(machine.unitary(), initial);
  const double deviation = std::abs(out.norm() - 1.0);
  if (deviation > 1e-10) {
    throw DomainError("apply_machine: machine operator changed the norm by " +
                      std::to_string(deviation));
  }
  return PureState::normalized(std::move(out), machine.shape());
}

std::array<CloneOutcome, 2> measure_probe(const CloningMachine& machine, const PureState& input_a) {
  const PureState output = apply_machine(machine, input_a);
  const std::array<ComplexVector, 2> probe_basis{machine.config().probe_success.amplitudes(),
                                                 machine.config().probe_fail.amplitudes()};
  auto outcomes = qstate::measure_subsystem(output, 2, probe_basis);
  const ComplexVector ideal = linalg::kron(input_a.amplitudes(), input_a.amplitudes());

  std::array<CloneOutcome, 2> result;
  for (std::size_t k = 0; k < 2; ++k) {
    CloneOutcome& o = result[k];
    o.success = k == 0;
    o.probability = outcomes[k].probability;
    o.post_state_ab = std::move(outcomes[k].post_state);
    if (o.post_state_ab) {
      o.clone_fidelity = std::abs(linalg::inner(ideal, o.post_state_ab->amplitudes()));
    }
  }
  return result;
}

CloneOutcome postselect(const CloningMachine& machine, const PureState& input_a) {
  return std::move(measure_probe(machine, input_a)[0]);
}

QubitExampleImages qubit_example_images(double alpha) {
  if (!(alpha >= 0.0 && alpha < std::numbers::pi / 4.0)) {
    throw DomainError("qubit_example_images: alpha must lie in [0, pi/4), got " +
                      std::to_string(alpha));
  }
  // Basis index of |a b p> is 4a + 2b + p.
  const double sa = std::sin(alpha);
  const double ca = std::cos(alpha);
  const double ta = std::tan(alpha);
  const double root_cos2a = std::sqrt(std::cos(2.0 * alpha));

  ComplexVector img0(8);
  img0[0b000] = ca;
  img0[0b001] = sa;

  ComplexVector img1(8);
  img1[0b000] = -root_cos2a * sa * ta;
  img1[0b100] = sa * ta;
  img1[0b010] = sa * ta;
  img1[0b110] = std::sqrt(1.0 - ta * ta);
  img1[0b001] = root_cos2a * sa;

  const SpaceShape shape({2, 2, 2});
  return {PureState(std::move(img0), shape), PureState(std::move(img1), shape)};
}

}  // namespace probclone::cloning

#ifndef PROBCLONE_CLONING_MACHINE_H
#define PROBCLONE_CLONING_MACHINE_H

// Probabilistic cloning of two designated non-orthogonal pure states.
//
// The apparatus acts on A (n levels) x B (n levels) x P (probe, 2 levels).
// For each designated input |psi_s>,
//
//   U |psi_s>|sigma>|m_ok> = a_s0 |psi_s>|psi_s>|m_ok> + a_s1 |phi_ab>|m_fail>,
//
// so measuring the probe and keeping outcome m_ok yields an exact clone with
// probability a_s0^2.  The amplitudes are the symmetric optimum
// a_s0 = 1/sqrt(1+s), a_s1 = sqrt(s)/sqrt(1+s) with s = <psi0|psi1> made real
// and nonnegative by rephasing psi1.

#include <array>
#include <cstddef>
#include <optional>

#include "probclone/linalg.h"
#include "probclone/quantum_state.h"

namespace probclone::cloning {

using linalg::ComplexMatrix;
using linalg::ComplexVector;
using qstate::PureState;
using qstate::SpaceShape;

// Overlaps above this are rejected: the orthogonalized source pair would
// collapse.
inline constexpr double kMaxOverlap = 1.0 - 1e-8;
inline constexpr std::size_t kProbeDim = 2;

struct CloningAmplitudes {
  double a00 = 1.0;
  double a01 = 0.0;
  double a10 = 1.0;
  double a11 = 0.0;
};

// Throws DomainError unless 0 <= overlap_s < 1.
CloningAmplitudes compute_amplitudes(double overlap_s);

struct MachineConfig {
  PureState sigma;          // blank state of B
  PureState phi_ab;         // shared failure-branch state of A x B
  PureState probe_success;  // initial probe state and success flag
  PureState probe_fail;

  // sigma = e0, phi_ab = e0 x e0, probe flags = canonical 0 and 1.
  static MachineConfig defaults(std::size_t system_dim);
};

class CloningMachine {
 public:
  // Reassembles a machine from stored parts without re-synthesizing it.
  // Shapes and normalizations are validated; unitarity is not, so that a
  // damaged machine can still be loaded and diagnosed.
  static CloningMachine from_parts(PureState psi0, PureState psi1, double overlap_s,
                                   double rephase_angle, MachineConfig config,
                                   CloningAmplitudes amplitudes, ComplexMatrix unitary,
                                   double eta);

  // psi1 is stored rephased: <psi0|psi1> is real and nonnegative.  The
  // removed phase is rephase_angle, i.e. the caller's state was
  // e^{i rephase_angle} psi1().
  const PureState& psi0() const { return psi0_; }
  const PureState& psi1() const { return psi1_; }
  const PureState& designated(int label) const;
  double overlap_s() const { return overlap_s_; }
  double rephase_angle() const { return rephase_angle_; }
  const MachineConfig& config() const { return config_; }
  const CloningAmplitudes& amplitudes() const { return amplitudes_; }
  const ComplexMatrix& unitary() const { return unitary_; }
  double eta() const { return eta_; }

  std::size_t system_dim() const { return psi0_.dim(); }
  SpaceShape shape() const;

  // |psi_s>|sigma>|m_ok>
  ComplexVector source(int label) const;
  // a_s0 |psi_s psi_s>|m_ok> + a_s1 |phi_ab>|m_fail>
  ComplexVector target(int label) const;

 private:
  CloningMachine(PureState psi0, PureState psi1, double overlap_s, double rephase_angle,
                 MachineConfig config, CloningAmplitudes amplitudes, ComplexMatrix unitary,
                 double eta);

  PureState psi0_;
  PureState psi1_;
  double overlap_s_;
  double rephase_angle_;
  MachineConfig config_;
  CloningAmplitudes amplitudes_;
  ComplexMatrix unitary_;
  double eta_;
};

CloningMachine build_machine(const PureState& psi0, const PureState& psi1,
                             const MachineConfig& config);
CloningMachine build_machine(const PureState& psi0, const PureState& psi1);

// U (input_a x sigma x m_ok).  Throws DomainError if the result deviates
// from unit norm by more than 1e-10 (damaged unitary).
PureState apply_machine(const CloningMachine& machine, const PureState& input_a);

struct CloneOutcome {
  bool success = false;
  double probability = 0.0;
  std::optional<PureState> post_state_ab;
  double clone_fidelity = 0.0;  // |<input input|post_state_ab>|
};

// Both probe branches, success first.
std::array<CloneOutcome, 2> measure_probe(const CloningMachine& machine, const PureState& input_a);

// Success branch of measure_probe.
CloneOutcome postselect(const CloningMachine& machine, const PureState& input_a);

struct QubitExampleImages {
  PureState phi0_img;
  PureState phi1_img;
};

// Closed-form images of |000> and |100> for the three-qubit machine with
// <psi0|psi1> = tan^2(alpha), evaluated directly from the trigonometric
// expressions.  Requires 0 <= alpha < pi/4.
QubitExampleImages qubit_example_images(double alpha);

}  // namespace probclone::cloning

#endif  // PROBCLONE_CLONING_MACHINE_H

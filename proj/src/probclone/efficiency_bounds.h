#ifndef PROBCLONE_EFFICIENCY_BOUNDS_H
#define PROBCLONE_EFFICIENCY_BOUNDS_H

// Efficiency limits for probabilistic cloning machines.
//
// Any machine can be written as
//
//   U |psi_s>|sigma>|m_p> = sqrt(eta_s) |psi_s>|psi_s>|m_s> + sqrt(1-eta_s) |Phi_s>,
//
// with per-branch success flags m_0, m_1.  Post-selection is exact only if
// each Phi_s has no component along either flag.  Under that condition the
// inner product of the two branches gives
//
//   s - sqrt(eta0 eta1) s^2 <m_0|m_1> = sqrt((1-eta0)(1-eta1)) <Phi_0|Phi_1>
//                                    <= sqrt((1-eta0)(1-eta1)),
//
// which bounds (eta0+eta1)/2 by (1-s)/(1-s^2 <m_0|m_1>) and then by 1/(1+s).

#include "probclone/cloning_machine.h"
#include "probclone/linalg.h"
#include "probclone/quantum_state.h"

namespace probclone::bounds {

using linalg::Complex;
using linalg::ComplexMatrix;
using qstate::PureState;

inline constexpr double kSaturationTolerance = 1e-9;

// 1/(1+s); throws DomainError unless 0 <= s < 1.
double universal_bound(double overlap_s);

// (1-s)/(1-s^2 f); throws DomainError unless 0 <= s < 1 and -1 <= f <= 1.
double mean_efficiency_bound(double overlap_s, double flag_overlap);

// True iff (eta0+eta1)/2 <= mean_efficiency_bound(s, f) + 1e-12.
bool check_no_perfect_cloning(double overlap_s, double eta0, double eta1, double flag_overlap);

struct GeneralMachineSpec {
  ComplexMatrix unitary;  // over A x B x P, P of dimension >= 2
  PureState sigma;
  PureState probe_init;   // |m_p>
  PureState probe_flag0;  // success flag of the psi0 branch
  PureState probe_flag1;  // success flag of the psi1 branch
  PureState psi0;
  PureState psi1;
};

// The constructed machine seen in the general frame: its single success flag
// serves as the initial probe state and as both per-branch flags.
GeneralMachineSpec general_spec(const cloning::CloningMachine& machine);

struct BoundAnalysis {
  double eta0 = 0.0;
  double eta1 = 0.0;
  Complex flag_overlap{};  // <m_0|m_1>
  Complex overlap{};       // <psi0|psi1>
  double residual0 = 0.0;  // |sqrt(1-eta0) Phi_0|
  double residual1 = 0.0;
  // Largest norm of a flag contracted against a normalized Phi_s.
  double orthogonality_violation = 0.0;
  // sqrt((1-eta0)(1-eta1)) <Phi_0|Phi_1>, measured directly.
  Complex residual_overlap{};
  // Real part of s - conj(c0) c1 s^2 <m_0|m_1>, where c_s is the extracted
  // clone amplitude (sqrt(eta_s) up to phase); the imaginary part is
  // reported separately.
  double inner_product_lhs = 0.0;
  double inner_product_lhs_imag = 0.0;
  double inner_product_rhs = 0.0;  // sqrt((1-eta0)(1-eta1))
  double mean_eta = 0.0;
  double mean_bound = 0.0;       // (1-|s|)/(1-|s|^2 Re<m_0|m_1>)
  double universal_limit = 0.0;  // 1/(1+|s|)
  bool saturated = false;        // |mean_eta - universal_limit| <= 1e-9
};

// Decomposes both designated evolutions against the ideal clone-with-flag
// and evaluates the inequality chain.  Only shapes are validated; a
// non-unitary operator yields numbers but no guarantees.
BoundAnalysis analyze_machine(const GeneralMachineSpec& spec);

}  // namespace probclone::bounds

#endif  // PROBCLONE_EFFICIENCY_BOUNDS_H

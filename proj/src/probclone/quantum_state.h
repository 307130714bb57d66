#ifndef PROBCLONE_QUANTUM_STATE_H
#define PROBCLONE_QUANTUM_STATE_H

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "probclone/linalg.h"

namespace probclone::qstate {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::ComplexVector;

// Subsystem dimensions of a composite space, most significant factor first
// (A, B, P for the cloning apparatus).
class SpaceShape {
 public:
  explicit SpaceShape(std::vector<std::size_t> factor_dims);
  static SpaceShape single(std::size_t dim) { return SpaceShape({dim}); }

  std::span<const std::size_t> factor_dims() const { return factor_dims_; }
  std::size_t num_factors() const { return factor_dims_.size(); }
  std::size_t factor(std::size_t index) const;
  std::size_t total_dim() const;

  // Shape with one factor removed; removing the only factor leaves {1}.
  SpaceShape without_factor(std::size_t index) const;
  SpaceShape concat(const SpaceShape& other) const;

  bool operator==(const SpaceShape&) const = default;

 private:
  std::vector<std::size_t> factor_dims_;
};

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kDensityTolerance = 1e-10;

class PureState {
 public:
  // Throws DomainError unless the amplitudes have unit norm within 1e-12.
  PureState(ComplexVector amplitudes, SpaceShape shape);
  explicit PureState(ComplexVector amplitudes);

  // Rescales to unit norm; throws DomainError on a zero vector.
  static PureState normalized(ComplexVector amplitudes, SpaceShape shape);
  static PureState normalized(ComplexVector amplitudes);
  static PureState basis(std::size_t dim, std::size_t index);

  const ComplexVector& amplitudes() const { return amplitudes_; }
  const SpaceShape& shape() const { return shape_; }
  std::size_t dim() const { return amplitudes_.size(); }

  // Same amplitudes multiplied by a unit phase e^{i angle}.
  PureState with_phase(double angle) const;

 private:
  ComplexVector amplitudes_;
  SpaceShape shape_;
};

// |a>|b> with shapes concatenated.
PureState tensor(const PureState& a, const PureState& b);

class DensityOperator {
 public:
  // Validates: Hermitian within 1e-10, unit trace within 1e-10, eigenvalues
  // no lower than -1e-10.
  DensityOperator(ComplexMatrix matrix, SpaceShape shape);
  explicit DensityOperator(ComplexMatrix matrix);

  const ComplexMatrix& matrix() const { return matrix_; }
  const SpaceShape& shape() const { return shape_; }
  std::size_t dim() const { return matrix_.rows(); }

 private:
  ComplexMatrix matrix_;
  SpaceShape shape_;
};

struct MeasurementOutcome {
  std::size_t label = 0;
  double probability = 0.0;
  std::optional<PureState> post_state;
};

DensityOperator pure_to_density(const PureState& psi);

// U rho U^+
DensityOperator evolve(const DensityOperator& rho, const ComplexMatrix& u);

// Probability-weighted mixture of the post-states of the given outcomes,
// renormalized by their total probability.  Outcomes without a post-state
// are skipped.
DensityOperator mixture(std::span<const MeasurementOutcome> outcomes);

// F = tr sqrt( sqrt(rho0) rho1 sqrt(rho0) ), computed through hermitian_sqrt.
double fidelity(const DensityOperator& rho0, const DensityOperator& rho1);

// |<psi0|psi1>|
double pure_fidelity(const PureState& psi0, const PureState& psi1);

// Complete projective measurement in an orthonormal basis of the whole space.
std::vector<MeasurementOutcome> measure_projective(const PureState& psi,
                                                   std::span<const ComplexVector> basis);

// Projective measurement of a single factor.  Post-states are the
// renormalized conditional states of the remaining factors; outcomes with
// (numerically) zero probability carry no post-state.
std::vector<MeasurementOutcome> measure_subsystem(const PureState& psi, std::size_t factor_index,
                                                  std::span<const ComplexVector> basis);

}  // namespace probclone::qstate

#endif  // PROBCLONE_QUANTUM_STATE_H

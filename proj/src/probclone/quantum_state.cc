#include "probclone/quantum_state.h"

#include <cmath>
#include <numeric>
#include <string>

#include "probclone/error.h"

namespace probclone::qstate {
namespace {

// Conditional norms below this are treated as an impossible outcome.
constexpr double kZeroProbability = 1e-24;

void require_basis(std::span<const ComplexVector> basis, std::size_t dim, const char* op) {
  if (basis.size() != dim) {
    throw DimensionError(std::string(op) + ": basis has " + std::to_string(basis.size()) +
                         " vectors, space has dimension " + std::to_string(dim));
  }
  for (const auto& b : basis) {
    if (b.size() != dim) {
      throw DimensionError(std::string(op) + ": basis vector length differs from dimension");
    }
  }
  const double deviation = linalg::orthonormality_deviation(basis);
  if (deviation > kDensityTolerance) {
    throw DomainError(std::string(op) + ": basis is not orthonormal (deviation " +
                      std::to_string(deviation) + ")");
  }
}

}  // namespace

SpaceShape::SpaceShape(std::vector<std::size_t> factor_dims) : factor_dims_(std::move(factor_dims)) {
  if (factor_dims_.empty()) {
    throw DimensionError("SpaceShape: at least one factor required");
  }
  for (auto d : factor_dims_) {
    if (d == 0) {
      throw DimensionError("SpaceShape: factor dimensions must be positive");
    }
  }
}

std::size_t SpaceShape::factor(std::size_t index) const {
  if (index >= factor_dims_.size()) {
    throw DimensionError("SpaceShape: factor index " + std::to_string(index) + " out of range");
  }
  return factor_dims_[index];
}

std::size_t SpaceShape::total_dim() const {
  return std::accumulate(factor_dims_.begin(), factor_dims_.end(), std::size_t{1},
                         std::multiplies<>());
}

SpaceShape SpaceShape::without_factor(std::size_t index) const {
  if (index >= factor_dims_.size()) {
    throw DimensionError("SpaceShape: factor index " + std::to_string(index) + " out of range");
  }
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < factor_dims_.size(); ++i) {
    if (i != index) {
      rest.push_back(factor_dims_[i]);
    }
  }
  if (rest.empty()) {
    rest.push_back(1);
  }
  return SpaceShape(std::move(rest));
}

SpaceShape SpaceShape::concat(const SpaceShape& other) const {
  std::vector<std::size_t> dims = factor_dims_;
  dims.insert(dims.end(), other.factor_dims_.begin(), other.factor_dims_.end());
  return SpaceShape(std::move(dims));
}

PureState::PureState(ComplexVector amplitudes, SpaceShape shape)
    : amplitudes_(std::move(amplitudes)), shape_(std::move(shape)) {
  if (shape_.total_dim() != amplitudes_.size()) {
    throw DimensionError("PureState: shape describes dimension " +
                         std::to_string(shape_.total_dim()) + " but " +
                         std::to_string(amplitudes_.size()) + " amplitudes given");
  }
  const double deviation = std::abs(amplitudes_.norm() - 1.0);
  if (deviation > kNormTolerance) {
    throw DomainError("PureState: amplitudes are not normalized (|norm - 1| = " +
                      std::to_string(deviation) + ")");
  }
}

PureState::PureState(ComplexVector amplitudes)
    : PureState(amplitudes, SpaceShape::single(amplitudes.size())) {}

PureState PureState::normalized(ComplexVector amplitudes, SpaceShape shape) {
  const double n = amplitudes.norm();
  if (!(n > 0.0)) {
    throw DomainError("PureState: cannot normalize a zero vector");
  }
  amplitudes *= 1.0 / n;
  return PureState(std::move(amplitudes), std::move(shape));
}

PureState PureState::normalized(ComplexVector amplitudes) {
  SpaceShape shape = SpaceShape::single(amplitudes.size());
  return normalized(std::move(amplitudes), std::move(shape));
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
  return PureState(ComplexVector::basis(dim, index));
}

PureState PureState::with_phase(double angle) const {
  return normalized(std::polar(1.0, angle) * amplitudes_, shape_);
}

PureState tensor(const PureState& a, const PureState& b) {
  return PureState::normalized(linalg::kron(a.amplitudes(), b.amplitudes()),
                               a.shape().concat(b.shape()));
}

DensityOperator::DensityOperator(ComplexMatrix matrix, SpaceShape shape)
    : matrix_(std::move(matrix)), shape_(std::move(shape)) {
  if (!matrix_.is_square() || matrix_.rows() != shape_.total_dim()) {
    throw DimensionError("DensityOperator: matrix shape does not match space dimension " +
                         std::to_string(shape_.total_dim()));
  }
  const double herm = linalg::hermiticity_deviation(matrix_);
  if (herm > kDensityTolerance) {
    throw DomainError("DensityOperator: not Hermitian (deviation " + std::to_string(herm) + ")");
  }
  const Complex tr = linalg::trace(matrix_);
  if (std::abs(tr - 1.0) > kDensityTolerance) {
    throw DomainError("DensityOperator: trace is not 1");
  }
  const auto eig = linalg::hermitian_eig(matrix_);
  if (eig.eigenvalues.front() < -kDensityTolerance) {
    throw DomainError("DensityOperator: negative eigenvalue " +
                      std::to_string(eig.eigenvalues.front()));
  }
}

DensityOperator::DensityOperator(ComplexMatrix matrix)
    : DensityOperator(matrix, SpaceShape::single(matrix.rows())) {}

DensityOperator pure_to_density(const PureState& psi) {
  return DensityOperator(linalg::outer(psi.amplitudes(), psi.amplitudes()), psi.shape());
}

DensityOperator evolve(const DensityOperator& rho, const ComplexMatrix& u) {
  if (!u.is_square() || u.rows() != rho.dim()) {
    throw DimensionError("evolve: operator does not act on the state's space");
  }
  ComplexMatrix out = linalg::matmul(linalg::matmul(u, rho.matrix()), linalg::adjoint(u));
  const ComplexMatrix herm = linalg::adjoint(out);
  for (std::size_t r = 0; r < out.rows(); ++r) {
    for (std::size_t c = 0; c < out.cols(); ++c) {
      out(r, c) = 0.5 * (out(r, c) + herm(r, c));
    }
  }
  return DensityOperator(std::move(out), rho.shape());
}

DensityOperator mixture(std::span<const MeasurementOutcome> outcomes) {
  const PureState* first = nullptr;
  double total = 0.0;
  for (const auto& o : outcomes) {
    if (o.post_state && o.probability > 0.0) {
      first = first ? first : &*o.post_state;
      total += o.probability;
    }
  }
  if (first == nullptr || !(total > 0.0)) {
    throw DomainError("mixture: no outcome with positive probability");
  }
  const std::size_t dim = first->dim();
  ComplexMatrix acc(dim, dim);
  for (const auto& o : outcomes) {
    if (!o.post_state || !(o.probability > 0.0)) {
      continue;
    }
    if (o.post_state->dim() != dim) {
      throw DimensionError("mixture: post-states live in different spaces");
    }
    const ComplexMatrix proj = linalg::outer(o.post_state->amplitudes(), o.post_state->amplitudes());
    const double w = o.probability / total;
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) {
        acc(r, c) += w * proj(r, c);
      }
    }
  }
  return DensityOperator(std::move(acc), first->shape());
}

double fidelity(const DensityOperator& rho0, const DensityOperator& rho1) {
  if (rho0.dim() != rho1.dim()) {
    throw DimensionError("fidelity: dimension mismatch (" + std::to_string(rho0.dim()) + " vs " +
                         std::to_string(rho1.dim()) + ")");
  }
  const ComplexMatrix root0 = linalg::hermitian_sqrt(rho0.matrix());
  ComplexMatrix sandwich = linalg::matmul(linalg::matmul(root0, rho1.matrix()), root0);
  const ComplexMatrix sandwich_dag = linalg::adjoint(sandwich);
  for (std::size_t r = 0; r < sandwich.rows(); ++r) {
    for (std::size_t c = 0; c < sandwich.cols(); ++c) {
      sandwich(r, c) = 0.5 * (sandwich(r, c) + sandwich_dag(r, c));
    }
  }
  return linalg::trace(linalg::hermitian_sqrt(sandwich)).real();
}

double pure_fidelity(const PureState& psi0, const PureState& psi1) {
  if (psi0.dim() != psi1.dim()) {
    throw DimensionError("pure_fidelity: dimension mismatch");
  }
  return std::abs(linalg::inner(psi0.amplitudes(), psi1.amplitudes()));
}

std::vector<MeasurementOutcome> measure_projective(const PureState& psi,
                                                   std::span<const ComplexVector> basis) {
  require_basis(basis, psi.dim(), "measure_projective");
  std::vector<MeasurementOutcome> outcomes;
  outcomes.reserve(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const double p = std::norm(linalg::inner(basis[k], psi.amplitudes()));
    outcomes.push_back({k, p, PureState::normalized(basis[k], psi.shape())});
  }
  return outcomes;
}

std::vector<MeasurementOutcome> measure_subsystem(const PureState& psi, std::size_t factor_index,
                                                  std::span<const ComplexVector> basis) {
  const SpaceShape& shape = psi.shape();
  if (factor_index >= shape.num_factors()) {
    throw DimensionError("measure_subsystem: factor index " + std::to_string(factor_index) +
                         " out of range for " + std::to_string(shape.num_factors()) + " factors");
  }
  const std::size_t d = shape.factor(factor_index);
  require_basis(basis, d, "measure_subsystem");

  std::size_t left = 1;
  for (std::size_t i = 0; i < factor_index; ++i) {
    left *= shape.factor(i);
  }
  const std::size_t right = psi.dim() / (left * d);
  const SpaceShape rest = shape.without_factor(factor_index);
  const ComplexVector& amp = psi.amplitudes();

  std::vector<MeasurementOutcome> outcomes;
  outcomes.reserve(d);
  for (std::size_t k = 0; k < d; ++k) {
    ComplexVector conditional(left * right);
    for (std::size_t l = 0; l < left; ++l) {
      for (std::size_t r = 0; r < right; ++r) {
        Complex acc{};
        for (std::size_t j = 0; j < d; ++j) {
          acc += std::conj(basis[k][j]) * amp[(l * d + j) * right + r];
        }
        conditional[l * right + r] = acc;
      }
    }
    const double p = conditional.norm_squared();
    MeasurementOutcome outcome{k, p, std::nullopt};
    if (p > kZeroProbability) {
      outcome.post_state = PureState::normalized(std::move(conditional), rest);
    }
    outcomes.push_back(std::move(outcome));
  }
  return outcomes;
}

}  // namespace probclone::qstate

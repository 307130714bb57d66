#include "probclone/linalg.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "probclone/error.h"

namespace probclone::linalg {
namespace {

bool is_finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_finite(std::span<const Complex> entries, const char* what) {
  for (const auto& z : entries) {
    if (!is_finite(z)) {
      throw DomainError(std::string(what) + " contains a non-finite entry");
    }
  }
}

void require_same_length(const ComplexVector& a, const ComplexVector& b, const char* op) {
  if (a.size() != b.size()) {
    throw DimensionError(std::string(op) + ": length mismatch (" + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()) + ")");
  }
}

using EigenMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

EigenMatrix to_eigen(const ComplexMatrix& m) {
  EigenMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out(r, c) = m(r, c);
    }
  }
  return out;
}

// Subtracts from w its projection on every vector in basis, in order.
void project_out(ComplexVector& w, std::span<const ComplexVector> basis) {
  for (const auto& q : basis) {
    const Complex c = inner(q, w);
    for (std::size_t i = 0; i < w.size(); ++i) {
      w[i] -= c * q[i];
    }
  }
}

}  // namespace

ComplexVector::ComplexVector(std::size_t length) : entries_(length) {
  if (length == 0) {
    throw DimensionError("ComplexVector: length must be at least 1");
  }
}

ComplexVector::ComplexVector(std::vector<Complex> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) {
    throw DimensionError("ComplexVector: length must be at least 1");
  }
  require_finite(entries_, "ComplexVector");
}

ComplexVector::ComplexVector(std::initializer_list<Complex> entries)
    : ComplexVector(std::vector<Complex>(entries)) {}

ComplexVector ComplexVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) {
    throw DimensionError("ComplexVector::basis: index " + std::to_string(index) +
                         " out of range for dimension " + std::to_string(dim));
  }
  ComplexVector v(dim);
  v[index] = 1.0;
  return v;
}

double ComplexVector::norm_squared() const {
  double acc = 0.0;
  for (const auto& z : entries_) {
    acc += std::norm(z);
  }
  return acc;
}

double ComplexVector::norm() const { return std::sqrt(norm_squared()); }

ComplexVector& ComplexVector::operator+=(const ComplexVector& other) {
  require_same_length(*this, other, "vector +");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    entries_[i] += other.entries_[i];
  }
  return *this;
}

ComplexVector& ComplexVector::operator-=(const ComplexVector& other) {
  require_same_length(*this, other, "vector -");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    entries_[i] -= other.entries_[i];
  }
  return *this;
}

ComplexVector& ComplexVector::operator*=(Complex scale) {
  for (auto& z : entries_) {
    z *= scale;
  }
  return *this;
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {
  if (rows == 0 || cols == 0) {
    throw DimensionError("ComplexMatrix: rows and cols must be positive");
  }
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> row_major)
    : rows_(rows), cols_(cols), entries_(std::move(row_major)) {
  if (rows == 0 || cols == 0) {
    throw DimensionError("ComplexMatrix: rows and cols must be positive");
  }
  if (entries_.size() != rows * cols) {
    throw DimensionError("ComplexMatrix: expected " + std::to_string(rows * cols) +
                         " entries, got " + std::to_string(entries_.size()));
  }
  require_finite(entries_, "ComplexMatrix");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 1.0;
  }
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    m(i, i) = values[i];
  }
  return m;
}

ComplexMatrix ComplexMatrix::from_columns(std::span<const ComplexVector> columns) {
  if (columns.empty()) {
    throw DimensionError("ComplexMatrix::from_columns: no columns");
  }
  const std::size_t rows = columns.front().size();
  ComplexMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) {
      throw DimensionError("ComplexMatrix::from_columns: ragged columns");
    }
    for (std::size_t r = 0; r < rows; ++r) {
      m(r, c) = columns[c][r];
    }
  }
  return m;
}

ComplexVector ComplexMatrix::column(std::size_t c) const {
  if (c >= cols_) {
    throw DimensionError("ComplexMatrix::column: index out of range");
  }
  ComplexVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    v[r] = (*this)(r, c);
  }
  return v;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) {
        continue;
      }
      for (std::size_t j = 0; j < b.cols(); ++j) {
        out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

ComplexVector matvec(const ComplexMatrix& a, const ComplexVector& x) {
  if (a.cols() != x.size()) {
    throw DimensionError("matvec: matrix has " + std::to_string(a.cols()) +
                         " columns, vector has length " + std::to_string(x.size()));
  }
  ComplexVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex acc{};
    for (std::size_t k = 0; k < a.cols(); ++k) {
      acc += a(i, k) * x[k];
    }
    out[i] = acc;
  }
  return out;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      out(c, r) = std::conj(a(r, c));
    }
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
      }
    }
  }
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i * b.size() + j] = a[i] * b[j];
    }
  }
  return out;
}

Complex inner(const ComplexVector& a, const ComplexVector& b) {
  require_same_length(a, b, "inner");
  Complex acc{};
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += std::conj(a[i]) * b[i];
  }
  return acc;
}

ComplexMatrix outer(const ComplexVector& ket, const ComplexVector& bra) {
  ComplexMatrix out(ket.size(), bra.size());
  for (std::size_t r = 0; r < ket.size(); ++r) {
    for (std::size_t c = 0; c < bra.size(); ++c) {
      out(r, c) = ket[r] * std::conj(bra[c]);
    }
  }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("max_abs_diff: shape mismatch");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return worst;
}

double max_abs_diff(const ComplexVector& a, const ComplexVector& b) {
  require_same_length(a, b, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

double hermiticity_deviation(const ComplexMatrix& h) {
  if (!h.is_square()) {
    throw DimensionError("hermiticity_deviation: matrix is not square");
  }
  double worst = 0.0;
  for (std::size_t r = 0; r < h.rows(); ++r) {
    for (std::size_t c = r; c < h.cols(); ++c) {
      worst = std::max(worst, std::abs(h(r, c) - std::conj(h(c, r))));
    }
  }
  return worst;
}

Complex trace(const ComplexMatrix& a) {
  if (!a.is_square()) {
    throw DimensionError("trace: matrix is not square");
  }
  Complex acc{};
  for (std::size_t i = 0; i < a.rows(); ++i) {
    acc += a(i, i);
  }
  return acc;
}

EigenDecomposition hermitian_eig(const ComplexMatrix& h) {
  if (!h.is_square()) {
    throw DimensionError("hermitian_eig: matrix is not square");
  }
  const double deviation = hermiticity_deviation(h);
  if (deviation > kHermitianTolerance) {
    throw DomainError("hermitian_eig: input is not Hermitian (deviation " +
                      std::to_string(deviation) + ")");
  }

  const std::size_t n = h.rows();
  Eigen::MatrixXcd dense = to_eigen(h);
  // Solve on the exactly Hermitian part; the solver only reads one triangle.
  dense = (0.5 * (dense + dense.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("hermitian_eig: eigensolver did not converge");
  }

  EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = solver.eigenvalues()(static_cast<Eigen::Index>(k));
    for (std::size_t r = 0; r < n; ++r) {
      out.eigenvectors(r, k) =
          solver.eigenvectors()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k));
    }
  }

  const Eigen::MatrixXcd rebuilt =
      solver.eigenvectors() * solver.eigenvalues().asDiagonal() * solver.eigenvectors().adjoint();
  const double scale = std::max(1.0, dense.cwiseAbs().maxCoeff());
  const double residual = (rebuilt - dense).cwiseAbs().maxCoeff();
  if (residual > 1e-10 * scale) {
    throw NumericalError("hermitian_eig: reconstruction residual " + std::to_string(residual));
  }
  return out;
}

ComplexMatrix hermitian_sqrt(const ComplexMatrix& h) {
  const EigenDecomposition eig = hermitian_eig(h);
  const std::size_t n = h.rows();

  double largest = 0.0;
  for (double lambda : eig.eigenvalues) {
    largest = std::max(largest, std::abs(lambda));
  }
  // Eigenvalues this close to zero are indistinguishable from round-off in
  // the solver, and their square roots would be amplified to ~1e-7.
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, largest);

  std::vector<double> roots(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lambda = eig.eigenvalues[k];
    if (lambda < -kNegativeEigenvalueTolerance) {
      throw DomainError("hermitian_sqrt: input is not positive semidefinite (eigenvalue " +
                        std::to_string(lambda) + ")");
    }
    roots[k] = lambda <= floor ? 0.0 : std::sqrt(lambda);
  }

  const ComplexMatrix& v = eig.eigenvectors;
  ComplexMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r; c < n; ++c) {
      Complex acc{};
      for (std::size_t k = 0; k < n; ++k) {
        acc += v(r, k) * roots[k] * std::conj(v(c, k));
      }
      out(r, c) = acc;
      out(c, r) = std::conj(acc);
    }
    out(r, r) = out(r, r).real();
  }
  return out;
}

OrthonormalizeResult orthonormalize(std::span<const ComplexVector> vectors, double tol) {
  OrthonormalizeResult result;
  if (vectors.empty()) {
    return result;
  }
  if (!(tol > 0.0)) {
    throw DomainError("orthonormalize: tolerance must be positive");
  }
  const std::size_t dim = vectors.front().size();
  for (const auto& v : vectors) {
    if (v.size() != dim) {
      throw DimensionError("orthonormalize: vectors have different lengths");
    }
  }

  for (const auto& v : vectors) {
    ComplexVector w = v;
    project_out(w, result.vectors);
    if (w.norm() < tol) {
      ++result.dropped;
      continue;
    }
    project_out(w, result.vectors);
    w *= 1.0 / w.norm();
    result.vectors.push_back(std::move(w));
  }
  return result;
}

double orthonormality_deviation(std::span<const ComplexVector> vectors) {
  double worst = 0.0;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (std::size_t j = i; j < vectors.size(); ++j) {
      const Complex expected = i == j ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(inner(vectors[i], vectors[j]) - expected));
    }
  }
  return worst;
}

std::vector<ComplexVector> complete_basis(std::span<const ComplexVector> vectors,
                                          std::size_t dim) {
  if (dim == 0) {
    throw DimensionError("complete_basis: dimension must be positive");
  }
  if (vectors.size() > dim) {
    throw DimensionError("complete_basis: " + std::to_string(vectors.size()) +
                         " vectors exceed dimension " + std::to_string(dim));
  }
  for (const auto& v : vectors) {
    if (v.size() != dim) {
      throw DimensionError("complete_basis: vector length differs from dimension");
    }
  }
  const double deviation = orthonormality_deviation(vectors);
  if (deviation > kHermitianTolerance) {
    throw DomainError("complete_basis: inputs are not orthonormal (deviation " +
                      std::to_string(deviation) + ")");
  }

  std::vector<ComplexVector> basis(vectors.begin(), vectors.end());
  basis.reserve(dim);
  for (std::size_t j = 0; j < dim && basis.size() < dim; ++j) {
    ComplexVector w = ComplexVector::basis(dim, j);
    project_out(w, basis);
    if (w.norm() < kDependenceTolerance) {
      continue;
    }
    project_out(w, basis);
    w *= 1.0 / w.norm();
    basis.push_back(std::move(w));
  }
  if (basis.size() != dim) {
    throw NumericalError("complete_basis: canonical completion stalled at " +
                         std::to_string(basis.size()) + " of " + std::to_string(dim));
  }
  return basis;
}

UnitarityCheck is_unitary(const ComplexMatrix& u, double tol) {
  if (!u.is_square()) {
    throw DimensionError("is_unitary: matrix is not square");
  }
  const ComplexMatrix identity = ComplexMatrix::identity(u.rows());
  const ComplexMatrix u_dag = adjoint(u);
  const double residual = std::max(max_abs_diff(matmul(u, u_dag), identity),
                                   max_abs_diff(matmul(u_dag, u), identity));
  return {residual <= tol, residual};
}

}  // namespace probclone::linalg

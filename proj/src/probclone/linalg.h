#ifndef PROBCLONE_LINALG_H
#define PROBCLONE_LINALG_H

// Dense complex linear algebra for small Hilbert spaces.
//
// Storage is row-major and every routine is a pure function of its
// arguments.  Composite-space ordering follows the Kronecker convention with
// the left factor as the most significant index, so kron(a, b)[i*|b| + j] is
// a[i]*b[j].

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace probclone::linalg {

using Complex = std::complex<double>;

class ComplexVector {
 public:
  // Zero vector of the given length (length >= 1).
  explicit ComplexVector(std::size_t length);
  explicit ComplexVector(std::vector<Complex> entries);
  ComplexVector(std::initializer_list<Complex> entries);

  // Canonical basis vector e_index.
  static ComplexVector basis(std::size_t dim, std::size_t index);

  std::size_t size() const { return entries_.size(); }
  Complex& operator[](std::size_t i) { return entries_[i]; }
  const Complex& operator[](std::size_t i) const { return entries_[i]; }
  std::span<const Complex> entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  double norm() const;
  double norm_squared() const;

  ComplexVector& operator+=(const ComplexVector& other);
  ComplexVector& operator-=(const ComplexVector& other);
  ComplexVector& operator*=(Complex scale);

  friend ComplexVector operator+(ComplexVector a, const ComplexVector& b) { return a += b; }
  friend ComplexVector operator-(ComplexVector a, const ComplexVector& b) { return a -= b; }
  friend ComplexVector operator*(Complex scale, ComplexVector v) { return v *= scale; }
  friend ComplexVector operator*(ComplexVector v, Complex scale) { return v *= scale; }

  bool operator==(const ComplexVector&) const = default;

 private:
  std::vector<Complex> entries_;
};

class ComplexMatrix {
 public:
  // Zero matrix.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> row_major);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);
  // Assembles a matrix whose j-th column is columns[j].
  static ComplexMatrix from_columns(std::span<const ComplexVector> columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  std::span<const Complex> entries() const { return entries_; }

  ComplexVector column(std::size_t c) const;

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> entries_;
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector matvec(const ComplexMatrix& a, const ComplexVector& x);
ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

// <a|b>, conjugate-linear in a.
Complex inner(const ComplexVector& a, const ComplexVector& b);

// |ket><bra|
ComplexMatrix outer(const ComplexVector& ket, const ComplexVector& bra);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs_diff(const ComplexVector& a, const ComplexVector& b);
// max |H - H^+| over entries.
double hermiticity_deviation(const ComplexMatrix& h);
Complex trace(const ComplexMatrix& a);

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kNegativeEigenvalueTolerance = 1e-12;
inline constexpr double kDependenceTolerance = 1e-8;

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]
};

// Throws DomainError when h deviates from Hermitian by more than
// kHermitianTolerance, NumericalError when the solver does not converge or
// the reconstruction residual exceeds 1e-10.
EigenDecomposition hermitian_eig(const ComplexMatrix& h);

// Positive semidefinite square root.  Eigenvalues in [-1e-12, 0) and
// eigenvalues at the solver's round-off floor are treated as exact zeros;
// anything more negative is rejected with DomainError.
ComplexMatrix hermitian_sqrt(const ComplexMatrix& h);

struct OrthonormalizeResult {
  std::vector<ComplexVector> vectors;
  std::size_t dropped = 0;
};

// Modified Gram-Schmidt in input order with one reorthogonalization pass.
// A vector whose residual norm after the first projection pass is below tol
// is dropped.
OrthonormalizeResult orthonormalize(std::span<const ComplexVector> vectors,
                                    double tol = kDependenceTolerance);

// Extends an orthonormal tuple to a full basis of dimension dim.  The inputs
// are kept verbatim as the leading entries; canonical vectors e_0, e_1, ...
// are then orthonormalized against the growing set in index order, skipping
// dependent ones.
std::vector<ComplexVector> complete_basis(std::span<const ComplexVector> vectors,
                                          std::size_t dim);

// Largest entry deviation of the pairwise Gram matrix from the identity.
double orthonormality_deviation(std::span<const ComplexVector> vectors);

struct UnitarityCheck {
  bool unitary = false;
  double residual = 0.0;  // max entry of |UU^+ - I| and |U^+U - I|
};

UnitarityCheck is_unitary(const ComplexMatrix& u, double tol = 1e-10);

}  // namespace probclone::linalg

#endif  // PROBCLONE_LINALG_H

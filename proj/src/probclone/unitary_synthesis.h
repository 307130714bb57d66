#ifndef PROBCLONE_UNITARY_SYNTHESIS_H
#define PROBCLONE_UNITARY_SYNTHESIS_H

// Constructive unitaries between vector tuples.
//
// lemma1_unitary maps an orthonormal tuple onto another orthonormal tuple by
// completing both to full bases and summing |target_i><source_i|.
// lemma2_unitary handles a pair of arbitrary vectors with matching Gram
// matrices: both pairs are orthonormalized with the same projection
// coefficient and the result is delegated to lemma1_unitary.

#include <cstddef>
#include <optional>
#include <span>

#include "probclone/linalg.h"

namespace probclone::synthesis {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::ComplexVector;

inline constexpr double kGramTolerance = 1e-9;
inline constexpr double kParallelThreshold = 1e-8;

struct GramCheckReport {
  double norm0_delta = 0.0;  // |<phi0|phi0> - <tphi0|tphi0>|
  double norm1_delta = 0.0;  // |<phi1|phi1> - <tphi1|tphi1>|
  double cross_delta = 0.0;  // |<phi0|phi1> - <tphi0|tphi1>|, compared as complex numbers
  bool passed = false;
};

GramCheckReport check_gram(const ComplexVector& phi0, const ComplexVector& phi1,
                           const ComplexVector& tphi0, const ComplexVector& tphi1,
                           double tol = kGramTolerance);

// gamma0 = |phi0|, gamma1 = |phi1 - (<phi0|phi1>/gamma0^2) phi0|.
// e1 is absent when gamma1 < kParallelThreshold.
struct OrthonormalizationPair {
  double gamma0 = 0.0;
  double gamma1 = 0.0;
  Complex projection{};  // <phi0|phi1> / gamma0^2
  ComplexVector e0;
  std::optional<ComplexVector> e1;
};

OrthonormalizationPair orthonormalize_pair(const ComplexVector& phi0, const ComplexVector& phi1);

// The source frame and the matching target frame built with the source's
// gamma0, gamma1 and projection coefficient.
struct Lemma2Frames {
  OrthonormalizationPair source;
  ComplexVector target_e0;
  std::optional<ComplexVector> target_e1;
};

Lemma2Frames lemma2_frames(const ComplexVector& phi0, const ComplexVector& phi1,
                           const ComplexVector& tphi0, const ComplexVector& tphi1);

// Throws DomainError for non-orthonormal tuples (1e-10) and DimensionError
// for count or length mismatches.
ComplexMatrix lemma1_unitary(std::span<const ComplexVector> sources,
                             std::span<const ComplexVector> targets, std::size_t dim);

// Throws DomainError when the Gram check fails at kGramTolerance.
ComplexMatrix lemma2_unitary(const ComplexVector& phi0, const ComplexVector& phi1,
                             const ComplexVector& tphi0, const ComplexVector& tphi1);

}  // namespace probclone::synthesis

#endif  // PROBCLONE_UNITARY_SYNTHESIS_H

#include "probclone/unitary_synthesis.h"

#include <cmath>
#include <string>
#include <vector>

#include "probclone/error.h"

namespace probclone::synthesis {
namespace {

void require_same_dim(std::initializer_list<const ComplexVector*> vs, const char* op) {
  const std::size_t dim = (*vs.begin())->size();
  for (const auto* v : vs) {
    if (v->size() != dim) {
      throw DimensionError(std::string(op) + ": vectors live in different dimensions");
    }
  }
}

}  // namespace

GramCheckReport check_gram(const ComplexVector& phi0, const ComplexVector& phi1,
                           const ComplexVector& tphi0, const ComplexVector& tphi1, double tol) {
  require_same_dim({&phi0, &phi1, &tphi0, &tphi1}, "check_gram");
  GramCheckReport report;
  report.norm0_delta = std::abs(linalg::inner(phi0, phi0) - linalg::inner(tphi0, tphi0));
  report.norm1_delta = std::abs(linalg::inner(phi1, phi1) - linalg::inner(tphi1, tphi1));
  report.cross_delta = std::abs(linalg::inner(phi0, phi1) - linalg::inner(tphi0, tphi1));
  report.passed =
      report.norm0_delta <= tol && report.norm1_delta <= tol && report.cross_delta <= tol;
  return report;
}

OrthonormalizationPair orthonormalize_pair(const ComplexVector& phi0, const ComplexVector& phi1) {
  require_same_dim({&phi0, &phi1}, "orthonormalize_pair");
  const double gamma0 = phi0.norm();
  if (!(gamma0 > 0.0)) {
    throw DomainError("orthonormalize_pair: first vector is zero");
  }
  const Complex projection = linalg::inner(phi0, phi1) / (gamma0 * gamma0);
  ComplexVector residual = phi1 - projection * phi0;
  const double gamma1 = residual.norm();

  OrthonormalizationPair pair{gamma0, gamma1, projection, (1.0 / gamma0) * phi0, std::nullopt};
  if (gamma1 >= kParallelThreshold) {
    pair.e1 = (1.0 / gamma1) * residual;
  }
  return pair;
}

Lemma2Frames lemma2_frames(const ComplexVector& phi0, const ComplexVector& phi1,
                           const ComplexVector& tphi0, const ComplexVector& tphi1) {
  require_same_dim({&phi0, &phi1, &tphi0, &tphi1}, "lemma2_frames");
  OrthonormalizationPair source = orthonormalize_pair(phi0, phi1);

  // The target pair reuses the source's gamma0, gamma1 and projection; the
  // Gram condition makes the result orthonormal up to the input round-off,
  // which one Gram-Schmidt sweep removes.
  std::vector<ComplexVector> raw{(1.0 / source.gamma0) * tphi0};
  if (source.e1) {
    raw.push_back((1.0 / source.gamma1) * (tphi1 - source.projection * tphi0));
  }
  auto cleaned = linalg::orthonormalize(raw);
  if (cleaned.dropped != 0) {
    throw DomainError("lemma2_frames: target pair collapsed during orthonormalization");
  }

  Lemma2Frames frames{std::move(source), std::move(cleaned.vectors[0]), std::nullopt};
  if (cleaned.vectors.size() > 1) {
    frames.target_e1 = std::move(cleaned.vectors[1]);
  }
  return frames;
}

ComplexMatrix lemma1_unitary(std::span<const ComplexVector> sources,
                             std::span<const ComplexVector> targets, std::size_t dim) {
  if (sources.size() != targets.size()) {
    throw DimensionError("lemma1_unitary: " + std::to_string(sources.size()) + " sources but " +
                         std::to_string(targets.size()) + " targets");
  }
  if (sources.size() > dim) {
    throw DimensionError("lemma1_unitary: more vectors than the space dimension");
  }
  const double src_dev = linalg::orthonormality_deviation(sources);
  const double tgt_dev = linalg::orthonormality_deviation(targets);
  if (src_dev > linalg::kHermitianTolerance || tgt_dev > linalg::kHermitianTolerance) {
    throw DomainError("lemma1_unitary: tuples are not orthonormal (deviations " +
                      std::to_string(src_dev) + ", " + std::to_string(tgt_dev) + ")");
  }

  const auto source_basis = linalg::complete_basis(sources, dim);
  const auto target_basis = linalg::complete_basis(targets, dim);
  // sum_i |target_i><source_i| = T S^+ with bases as columns.
  return linalg::matmul(ComplexMatrix::from_columns(target_basis),
                        linalg::adjoint(ComplexMatrix::from_columns(source_basis)));
}

ComplexMatrix lemma2_unitary(const ComplexVector& phi0, const ComplexVector& phi1,
                             const ComplexVector& tphi0, const ComplexVector& tphi1) {
  const GramCheckReport gram = check_gram(phi0, phi1, tphi0, tphi1);
  if (!gram.passed) {
    throw DomainError("lemma2_unitary: Gram matrices differ (deltas " +
                      std::to_string(gram.norm0_delta) + ", " + std::to_string(gram.norm1_delta) +
                      ", " + std::to_string(gram.cross_delta) + ")");
  }
  const Lemma2Frames frames = lemma2_frames(phi0, phi1, tphi0, tphi1);

  std::vector<ComplexVector> sources{frames.source.e0};
  std::vector<ComplexVector> targets{frames.target_e0};
  if (frames.source.e1 && frames.target_e1) {
    sources.push_back(*frames.source.e1);
    targets.push_back(*frames.target_e1);
  }
  return lemma1_unitary(sources, targets, phi0.size());
}

}  // namespace probclone::synthesis

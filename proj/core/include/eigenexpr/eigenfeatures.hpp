#pragma once

#include <array>
#include <cstddef>

#include "eigenexpr/image.hpp"
#include "eigenexpr/matrix.hpp"

namespace eigenexpr {

/// Number of dominant eigenvectors kept per region.
inline constexpr std::size_t kBasisSize = 5;

/// The kBasisSize dominant eigenpairs of one region's column covariance.
struct EigenBasis {
  RegionKind region = RegionKind::kLeftEye;
  std::array<EigenPair, kBasisSize> pairs;

  friend bool operator==(const EigenBasis&, const EigenBasis&) = default;
};

/// Covariance eigenvalues at or below this fraction of the trace count as
/// zero when checking the rank of a region.
inline constexpr double kRankTolerance = 1e-10;

/// Eigendecomposes the column covariance of a canonical-size region image
/// and keeps the top kBasisSize pairs.
///
/// Throws kShape when the image is not canonical_dims(kind) and
/// kDegenerateRank when fewer than kBasisSize eigenvalues are positive.
EigenBasis extract_basis(const GrayImage& region_img, RegionKind kind);

/// Same, on an already-built matrix (used by training on mean images, whose
/// values need not be re-validated as pixels).
EigenBasis extract_basis(const Matrix& region, RegionKind kind);

/// Throws kFormat describing the first violated EigenBasis invariant:
/// vector lengths, unit norm, sign convention, ordering, orthogonality.
void validate_basis(const EigenBasis& basis);

}  // namespace eigenexpr

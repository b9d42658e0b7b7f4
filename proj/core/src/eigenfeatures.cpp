#include "eigenexpr/eigenfeatures.hpp"

#include <cmath>
#include <string>

#include "eigenexpr/error.hpp"

namespace eigenexpr {
namespace {

constexpr double kUnitNormTolerance = 1e-10;
constexpr double kOrthogonalityTolerance = 1e-8;
constexpr double kNegativeEigenvalueTolerance = 1e-10;

std::string dims_string(std::size_t rows, std::size_t cols) {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

}  // namespace

EigenBasis extract_basis(const Matrix& region, RegionKind kind) {
  const Dims dims = canonical_dims(kind);
  if (region.rows() != dims.rows || region.cols() != dims.cols) {
    throw Error(ErrorKind::kShape, std::string(region_key(kind)) + " region must be " +
                                       dims_string(dims.rows, dims.cols) + ", got " +
                                       dims_string(region.rows(), region.cols()));
  }
  const Matrix cov = covariance(region);
  const auto pairs = eigen_symmetric(cov);
  TopK top = top_k(pairs, kBasisSize);

  const double trace = cov.trace();
  if (top.short_rank || !(trace > 0.0) ||
      top.pairs.back().value <= kRankTolerance * trace) {
    std::size_t positive = 0;
    for (const auto& p : pairs) positive += trace > 0.0 && p.value > kRankTolerance * trace;
    throw Error(ErrorKind::kDegenerateRank,
                std::string(region_key(kind)) + " covariance has " + std::to_string(positive) +
                    " positive eigenvalues, need " + std::to_string(kBasisSize));
  }

  EigenBasis basis;
  basis.region = kind;
  for (std::size_t k = 0; k < kBasisSize; ++k) basis.pairs[k] = std::move(top.pairs[k]);
  return basis;
}

EigenBasis extract_basis(const GrayImage& region_img, RegionKind kind) {
  if (region_img.empty()) {
    throw Error(ErrorKind::kShape, std::string(region_key(kind)) + " region image is empty");
  }
  return extract_basis(region_to_matrix(region_img), kind);
}

void validate_basis(const EigenBasis& basis) {
  const std::string where(region_key(basis.region));
  const std::size_t length = canonical_dims(basis.region).cols;
  for (std::size_t k = 0; k < kBasisSize; ++k) {
    const EigenPair& pair = basis.pairs[k];
    const std::string at = where + " eigenpair " + std::to_string(k + 1);
    if (!std::isfinite(pair.value)) throw Error(ErrorKind::kFormat, at + ": eigenvalue not finite");
    if (pair.value < -kNegativeEigenvalueTolerance) {
      throw Error(ErrorKind::kFormat, at + ": negative eigenvalue");
    }
    if (k > 0 && pair.value > basis.pairs[k - 1].value) {
      throw Error(ErrorKind::kFormat, at + ": eigenvalues not in descending order");
    }
    if (pair.vector.size() != length) {
      throw Error(ErrorKind::kFormat, at + ": vector length " + std::to_string(pair.vector.size()) +
                                          ", expected " + std::to_string(length));
    }
    double norm = 0.0;
    std::size_t largest = 0;
    for (std::size_t i = 0; i < length; ++i) {
      const double x = pair.vector[i];
      if (!std::isfinite(x)) throw Error(ErrorKind::kFormat, at + ": vector not finite");
      norm += x * x;
      if (std::abs(x) > std::abs(pair.vector[largest])) largest = i;
    }
    if (std::abs(std::sqrt(norm) - 1.0) > kUnitNormTolerance) {
      throw Error(ErrorKind::kFormat, at + ": vector is not unit length");
    }
    if (pair.vector[largest] < 0.0) {
      throw Error(ErrorKind::kFormat, at + ": vector breaks the sign convention");
    }
    for (std::size_t j = 0; j < k; ++j) {
      double dot = 0.0;
      for (std::size_t i = 0; i < length; ++i) dot += pair.vector[i] * basis.pairs[j].vector[i];
      if (std::abs(dot) > kOrthogonalityTolerance) {
        throw Error(ErrorKind::kFormat,
                    at + ": not orthogonal to eigenpair " + std::to_string(j + 1));
      }
    }
  }
}

}  // namespace eigenexpr

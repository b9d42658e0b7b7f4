#include "eigenexpr/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eigenexpr/error.hpp"

namespace eigenexpr {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
  if (!std::isfinite(fill)) throw Error(ErrorKind::kParameter, "matrix fill value is not finite");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw Error(ErrorKind::kDimension, "matrix data has " + std::to_string(data_.size()) +
                                           " elements, expected " + std::to_string(rows_) + "x" +
                                           std::to_string(cols_));
  }
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!std::isfinite(data_[i])) {
      throw Error(ErrorKind::kParameter, "matrix element " + std::to_string(i) + " is not finite");
    }
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorKind::kDimension, "ragged matrix literal");
    for (double v : r) {
      if (!std::isfinite(v)) throw Error(ErrorKind::kParameter, "matrix element is not finite");
      data_.push_back(v);
    }
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double Matrix::frobenius_norm() const {
  double sum = 0.0;
  for (double v : data_) sum += v * v;
  return std::sqrt(sum);
}

double Matrix::trace() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) sum += (*this)(i, i);
  return sum;
}

Vector column_mean(const Matrix& m) {
  if (m.empty()) throw Error(ErrorKind::kDimension, "column_mean of an empty matrix");
  Vector mean(m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto row = m.row(i);
    for (std::size_t j = 0; j < m.cols(); ++j) mean[j] += row[j];
  }
  const double n = static_cast<double>(m.rows());
  for (double& v : mean) v /= n;
  return mean;
}

Matrix center(const Matrix& m) {
  const Vector mean = column_mean(m);
  Matrix out = m;
  for (std::size_t i = 0; i < out.rows(); ++i) {
    auto row = out.row(i);
    for (std::size_t j = 0; j < out.cols(); ++j) row[j] -= mean[j];
  }
  return out;
}

Matrix covariance(const Matrix& m) {
  if (m.empty()) throw Error(ErrorKind::kDimension, "covariance of an empty matrix");
  if (m.rows() < 2) {
    throw Error(ErrorKind::kDegenerateSample,
                "covariance needs at least 2 rows, got " + std::to_string(m.rows()));
  }
  const Matrix x = center(m);
  const std::size_t n = x.cols();
  Matrix cov(n, n);
  // Accumulate the upper triangle one observation at a time.
  for (std::size_t i = 0; i < x.rows(); ++i) {
    auto row = x.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      const double xj = row[j];
      auto out = cov.row(j);
      for (std::size_t k = j; k < n; ++k) out[k] += xj * row[k];
    }
  }
  const double denom = static_cast<double>(x.rows() - 1);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j; k < n; ++k) {
      cov(j, k) /= denom;
      cov(k, j) = cov(j, k);
    }
  }
  return cov;
}

TopK top_k(std::span<const EigenPair> pairs, std::size_t k) {
  if (k == 0) throw Error(ErrorKind::kParameter, "top_k needs k >= 1");
  TopK out;
  const std::size_t n = std::min(k, pairs.size());
  out.pairs.assign(pairs.begin(), pairs.begin() + static_cast<std::ptrdiff_t>(n));
  out.short_rank = n < k;
  return out;
}

}  // namespace eigenexpr

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace eigenexpr {

using Vector = std::vector<double>;

/// Dense row-major matrix of finite doubles. Rows are observations and
/// columns are variables throughout the statistics helpers below.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  /// Takes ownership of row-major `data`; throws kDimension if the size does
  /// not match and kParameter on a non-finite element.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  double frobenius_norm() const;
  double trace() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// One eigenvalue with its unit eigenvector. Vectors produced by
/// eigen_symmetric have their largest-magnitude component non-negative
/// (lowest index wins on a magnitude tie).
struct EigenPair {
  double value = 0.0;
  Vector vector;

  friend bool operator==(const EigenPair&, const EigenPair&) = default;
};

/// Per-column mean.
Vector column_mean(const Matrix& m);

/// Subtracts the column mean from every column.
Matrix center(const Matrix& m);

/// Sample covariance (N-1 denominator) of the columns of `m`; cols x cols.
/// Requires at least two rows.
Matrix covariance(const Matrix& m);

/// Flips `v` so its largest-magnitude component is non-negative.
void normalize_sign(std::span<double> v);

/// Full eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Pairs come back eigenvalue-descending; exact eigenvalue ties are ordered
/// by the sign-normalized vectors, lexicographically descending, so the
/// result is a pure function of the input bits.
std::vector<EigenPair> eigen_symmetric(const Matrix& c);

struct TopK {
  std::vector<EigenPair> pairs;
  /// True when fewer than k pairs were available.
  bool short_rank = false;
};

/// The first min(k, pairs.size()) pairs. Throws kParameter when k == 0.
TopK top_k(std::span<const EigenPair> pairs, std::size_t k);

}  // namespace eigenexpr

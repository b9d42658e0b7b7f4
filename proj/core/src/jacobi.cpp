#include <algorithm>
#include <cmath>
#include <string>

#include "eigenexpr/error.hpp"
#include "eigenexpr/matrix.hpp"

namespace eigenexpr {
namespace {

constexpr double kSymmetryTolerance = 1e-8;
constexpr double kOffDiagonalTolerance = 1e-12;
constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const Matrix& a) {
  double sum = 0.0;
  for (std::size_t p = 0; p < a.rows(); ++p) {
    for (std::size_t q = p + 1; q < a.cols(); ++q) sum += a(p, q) * a(p, q);
  }
  return std::sqrt(2.0 * sum);
}

// Zeroes a(p, q) with one plane rotation and accumulates it into v.
void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const double apq = a(p, q);
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) t = -t;
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const std::size_t n = a.rows();

  for (std::size_t k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const double akp = a(k, p);
    const double akq = a(k, q);
    const double new_kp = c * akp - s * akq;
    const double new_kq = s * akp + c * akq;
    a(k, p) = a(p, k) = new_kp;
    a(k, q) = a(q, k) = new_kq;
  }
  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = a(q, p) = 0.0;

  for (std::size_t k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

// Descending value, then descending lexicographic vector order.
bool precedes(const EigenPair& a, const EigenPair& b) {
  if (a.value != b.value) return a.value > b.value;
  return std::lexicographical_compare(b.vector.begin(), b.vector.end(), a.vector.begin(),
                                      a.vector.end());
}

}  // namespace

void normalize_sign(std::span<double> v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  }
  if (!v.empty() && v[best] < 0.0) {
    for (double& x : v) x = -x;
  }
}

std::vector<EigenPair> eigen_symmetric(const Matrix& c) {
  if (c.rows() != c.cols()) {
    throw Error(ErrorKind::kShape, "eigen_symmetric needs a square matrix, got " +
                                       std::to_string(c.rows()) + "x" + std::to_string(c.cols()));
  }
  if (c.empty()) throw Error(ErrorKind::kShape, "eigen_symmetric of an empty matrix");
  const std::size_t n = c.rows();

  double max_abs = 0.0;
  for (double x : c.data()) max_abs = std::max(max_abs, std::abs(x));
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      if (std::abs(c(i, j) - c(j, i)) > kSymmetryTolerance * max_abs) {
        throw Error(ErrorKind::kShape, "matrix is not symmetric at (" + std::to_string(i) + ", " +
                                           std::to_string(j) + ")");
      }
      a(i, j) = a(j, i) = 0.5 * (c(i, j) + c(j, i));
    }
  }

  Matrix v = Matrix::identity(n);
  const double threshold = kOffDiagonalTolerance * a.frobenius_norm();
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= threshold) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Once the sweep is past the first few, entries that no longer
        // register against both diagonal entries are dropped outright.
        const double g = 100.0 * std::abs(apq);
        if (sweep > 3 && std::abs(a(p, p)) + g == std::abs(a(p, p)) &&
            std::abs(a(q, q)) + g == std::abs(a(q, q))) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        rotate(a, v, p, q);
      }
    }
  }

  std::vector<EigenPair> pairs(n);
  for (std::size_t j = 0; j < n; ++j) {
    pairs[j].value = a(j, j);
    pairs[j].vector.resize(n);
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      pairs[j].vector[i] = v(i, j);
      norm += v(i, j) * v(i, j);
    }
    norm = std::sqrt(norm);
    for (double& x : pairs[j].vector) x /= norm;
    normalize_sign(pairs[j].vector);
  }
  std::sort(pairs.begin(), pairs.end(), precedes);
  return pairs;
}

}  // namespace eigenexpr

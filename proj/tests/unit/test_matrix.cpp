#include <doctest.h>

#include <cmath>
#include <random>

#include "eigenexpr/error.hpp"
#include "eigenexpr/matrix.hpp"
#include "support/oracles.hpp"

using namespace eigenexpr;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an eigenexpr::Error");
  return ErrorKind::kFormat;
}

}  // namespace

TEST_CASE("column_mean") {
  CHECK(column_mean(Matrix{{1, 2}, {3, 4}}) == Vector{2, 3});
  CHECK(column_mean(Matrix(4, 3, 0.25)) == Vector{0.25, 0.25, 0.25});

  std::mt19937_64 rng(11);
  const Matrix m = oracle::random_matrix(rng, 7, 5);
  CHECK(oracle::max_abs_diff(column_mean(m), oracle::column_mean(m)) <= 1e-12);

  CHECK(kind_of([] { column_mean(Matrix{}); }) == ErrorKind::kDimension);
}

TEST_CASE("center") {
  CHECK(center(Matrix{{1, 2}, {3, 4}}) == Matrix{{-1, -1}, {1, 1}});

  const Matrix centered{{-1, 2}, {1, -2}};
  CHECK(oracle::max_abs_diff(center(centered).data(), centered.data()) <= 1e-12);

  std::mt19937_64 rng(12);
  const Matrix out = center(oracle::random_matrix(rng, 10, 6));
  for (double mean : oracle::column_mean(out)) CHECK(std::abs(mean) <= 1e-10);

  CHECK(kind_of([] { center(Matrix{}); }) == ErrorKind::kDimension);
}

TEST_CASE("covariance") {
  CHECK(covariance(Matrix(5, 3, 0.7)) == Matrix(3, 3, 0.0));
  CHECK(covariance(Matrix{{1, 2}, {3, 4}}) == Matrix{{2, 2}, {2, 2}});

  std::mt19937_64 rng(13);
  const Matrix m = oracle::random_matrix(rng, 8, 4);
  const Matrix c = covariance(m);
  CHECK(oracle::max_abs_diff(c.data(), oracle::covariance(m).data()) <= 1e-12);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(c(i, j) == c(j, i));

  CHECK(kind_of([] { covariance(Matrix{{1, 2, 3}}); }) == ErrorKind::kDegenerateSample);
}

TEST_CASE("eigen_symmetric on small exact cases") {
  SUBCASE("identity") {
    const auto pairs = eigen_symmetric(Matrix::identity(3));
    REQUIRE(pairs.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(pairs[i].value == 1.0);
      for (std::size_t j = 0; j < 3; ++j) {
        CHECK(oracle::dot(pairs[i].vector, pairs[j].vector) == doctest::Approx(i == j ? 1.0 : 0.0));
      }
    }
    // Exact ties fall back to descending lexicographic order of the vectors.
    CHECK(pairs[0].vector == Vector{1, 0, 0});
    CHECK(pairs[2].vector == Vector{0, 0, 1});
  }
  SUBCASE("2x2 with eigenvalues 3 and 1") {
    const auto pairs = eigen_symmetric(Matrix{{2, 1}, {1, 2}});
    const double h = 1.0 / std::sqrt(2.0);
    CHECK(pairs[0].value == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(pairs[1].value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(oracle::max_abs_diff(pairs[0].vector, Vector{h, h}) <= 1e-14);
    CHECK(oracle::max_abs_diff(pairs[1].vector, Vector{h, -h}) <= 1e-14);
  }
  SUBCASE("diagonal input needs no rotation") {
    const auto pairs = eigen_symmetric(Matrix{{1, 0}, {0, 5}});
    CHECK(pairs[0].value == 5.0);
    CHECK(pairs[0].vector == Vector{0, 1});
  }
  SUBCASE("zero matrix") {
    for (const auto& p : eigen_symmetric(Matrix(4, 4))) CHECK(p.value == 0.0);
  }
}

TEST_CASE("eigen_symmetric on a random 95x95 matrix matches the reference solver") {
  std::mt19937_64 rng(95);
  const Matrix c = oracle::random_symmetric(rng, 95);
  const auto pairs = eigen_symmetric(c);
  const auto ref = oracle::reference_eigenvalues(c);
  const double scale = std::max(1.0, c.frobenius_norm());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    CHECK(oracle::residual(c, pairs[i]) <= 1e-8 * scale);
    CHECK(std::abs(pairs[i].value - ref[i]) <= 1e-8);
    CHECK(std::abs(oracle::norm(pairs[i].vector) - 1.0) <= 1e-10);
    if (i > 0) CHECK(pairs[i].value <= pairs[i - 1].value);
  }
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = i + 1; j < pairs.size(); ++j)
      CHECK(std::abs(oracle::dot(pairs[i].vector, pairs[j].vector)) <= 1e-8);
  // Well-separated top eigenvector agrees with the reference up to the
  // shared sign convention.
  CHECK(oracle::max_abs_diff(pairs[0].vector, oracle::reference_eigenvector(c, 0)) <= 1e-8);
}

TEST_CASE("eigen_symmetric rejects bad input") {
  CHECK(kind_of([] { eigen_symmetric(Matrix(2, 3)); }) == ErrorKind::kShape);
  CHECK(kind_of([] { eigen_symmetric(Matrix{{1, 2}, {2.1, 1}}); }) == ErrorKind::kShape);
  // Asymmetry inside the tolerance is accepted.
  CHECK_NOTHROW(eigen_symmetric(Matrix{{1, 2}, {2 + 1e-12, 1}}));
}

TEST_CASE("sign convention") {
  Vector v{0.1, -0.9, 0.3};
  normalize_sign(v);
  CHECK(v == Vector{-0.1, 0.9, -0.3});
  Vector tie{-0.5, 0.5};
  normalize_sign(tie);
  CHECK(tie == Vector{0.5, -0.5});

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    for (const auto& p : eigen_symmetric(oracle::random_symmetric(rng, 12))) {
      std::size_t arg = 0;
      for (std::size_t i = 1; i < p.vector.size(); ++i)
        if (std::abs(p.vector[i]) > std::abs(p.vector[arg])) arg = i;
      CHECK(p.vector[arg] >= 0.0);
    }
  }
}

TEST_CASE("top_k") {
  std::vector<EigenPair> pairs(40);
  for (std::size_t i = 0; i < pairs.size(); ++i) pairs[i].value = 40.0 - static_cast<double>(i);

  const TopK five = top_k(pairs, 5);
  CHECK(five.pairs.size() == 5);
  CHECK_FALSE(five.short_rank);
  CHECK(five.pairs.back().value == 36.0);

  const std::vector<EigenPair> exact(pairs.begin(), pairs.begin() + 5);
  CHECK(top_k(exact, 5).pairs == exact);

  const std::vector<EigenPair> three(pairs.begin(), pairs.begin() + 3);
  const TopK short_result = top_k(three, 5);
  CHECK(short_result.pairs.size() == 3);
  CHECK(short_result.short_rank);

  CHECK(kind_of([&] { top_k(pairs, 0); }) == ErrorKind::kParameter);
}

TEST_CASE("matrix invariants") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 25; ++trial) {
    const Matrix m = oracle::random_matrix(rng, 12, 7, -3.0, 5.0);
    const Matrix once = center(m);
    CHECK(oracle::max_abs_diff(center(once).data(), once.data()) <= 1e-12);
    CHECK(oracle::max_abs_diff(covariance(once).data(), covariance(m).data()) <= 1e-12);

    const Matrix c = covariance(m);
    const auto pairs = eigen_symmetric(c);
    Matrix rebuilt(c.rows(), c.cols());
    double sum = 0.0;
    for (const auto& p : pairs) {
      sum += p.value;
      for (std::size_t i = 0; i < c.rows(); ++i)
        for (std::size_t j = 0; j < c.cols(); ++j) rebuilt(i, j) += p.value * p.vector[i] * p.vector[j];
    }
    double err = 0.0;
    for (std::size_t i = 0; i < c.data().size(); ++i) err += std::pow(rebuilt.data()[i] - c.data()[i], 2);
    CHECK(std::sqrt(err) <= 1e-7 * c.frobenius_norm());
    CHECK(std::abs(sum - c.trace()) <= 1e-8 * std::abs(c.trace()));
    CHECK(pairs.back().value >= -1e-10 * c.trace());

    // Bitwise determinism.
    CHECK(eigen_symmetric(c) == pairs);
  }
}

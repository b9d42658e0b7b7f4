#include <benchmark/benchmark.h>

#include <random>

#include "eigenexpr/classifier.hpp"
#include "eigenexpr/eigenfeatures.hpp"
#include "eigenexpr/model.hpp"
#include "eigenexpr/synthetic.hpp"

using namespace eigenexpr;

namespace {

Matrix random_symmetric(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = u(rng);
  return m;
}

void BM_EigenSymmetric(benchmark::State& state) {
  const Matrix m = random_symmetric(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(eigen_symmetric(m));
}
BENCHMARK(BM_EigenSymmetric)->Arg(40)->Arg(95)->Unit(benchmark::kMillisecond);

void BM_ExtractBasis(benchmark::State& state) {
  const RegionKind kind = kAllRegions[static_cast<std::size_t>(state.range(0))];
  const Dims d = canonical_dims(kind);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> px(d.rows * d.cols);
  for (double& x : px) x = u(rng);
  const GrayImage img(d.rows, d.cols, std::move(px));
  for (auto _ : state) benchmark::DoNotOptimize(extract_basis(img, kind));
  state.SetLabel(std::string(region_key(kind)));
}
BENCHMARK(BM_ExtractBasis)->DenseRange(0, kRegionCount - 1)->Unit(benchmark::kMillisecond);

void BM_Classify(benchmark::State& state) {
  const auto samples = synthetic::make_set(1, 0.05, 3);
  const ExpressionModel model = train(synthetic::manifest_for(samples), synthetic::images_of(samples));
  const GrayImage probe = synthetic::render(Expression::kSad, 0.05, 99);
  for (auto _ : state) benchmark::DoNotOptimize(classify(probe, synthetic::layout(), model));
}
BENCHMARK(BM_Classify)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

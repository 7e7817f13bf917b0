#include <benchmark/benchmark.h>

#include "framelab/frame.hpp"
#include "framelab/rng.hpp"
#include "framelab/wmetric.hpp"

using namespace framelab;

namespace {

FrameFamily seeded_family(Eigen::Index dim, Eigen::Index count,
                          std::uint64_t seed) {
  SplitMix64 rng{seed};
  const Eigen::MatrixXd q = random_orthogonal(rng, dim);
  KreinSpace space{FundamentalSymmetry::conjugated(dim / 2, dim - dim / 2, q)};
  Eigen::MatrixXd synthesis = random_matrix(rng, dim, count);
  for (Eigen::Index c = 0; c < count; ++c) synthesis.col(c).normalize();
  return FrameFamily{std::move(space), std::move(synthesis)};
}

void BM_AnalyzeFrame(benchmark::State& state) {
  const FrameFamily family =
      seeded_family(state.range(0), 2 * state.range(0) + 4, 7);
  for (auto _ : state) {
    FrameAnalysis analysis{family};
    benchmark::DoNotOptimize(analysis.lower_bound());
  }
}
BENCHMARK(BM_AnalyzeFrame)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_BoundsOracle(benchmark::State& state) {
  const FrameFamily family =
      seeded_family(state.range(0), 2 * state.range(0) + 4, 11);
  for (auto _ : state) {
    const BoundsPair b = optimal_bounds_oracle(family);
    benchmark::DoNotOptimize(b.lower);
  }
}
BENCHMARK(BM_BoundsOracle)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_FourWayBounds(benchmark::State& state) {
  const FrameFamily family =
      seeded_family(state.range(0), 2 * state.range(0) + 4, 13);
  for (auto _ : state) {
    const FourWayBounds b = four_way_bounds(family);
    benchmark::DoNotOptimize(b.max_relative_spread);
  }
}
BENCHMARK(BM_FourWayBounds)->Arg(16)->Arg(64);

void BM_Transfer(benchmark::State& state) {
  const Eigen::Index dim = state.range(0);
  SplitMix64 rng{17};
  const Eigen::MatrixXd q = random_orthogonal(rng, dim);
  Eigen::VectorXd lambda(dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    lambda(i) = (rng.uniform() < 0.5 ? -1.0 : 1.0) *
                std::pow(10.0, rng.uniform(-2.0, 2.0));
  const WKreinSpace ws{GramModel{
      Eigen::MatrixXd(q * lambda.asDiagonal() * q.transpose())}};
  const FrameFamily family = seeded_family(dim, 2 * dim + 4, 19);
  for (auto _ : state) {
    const TransferResult t = transfer_frame(ws, family);
    benchmark::DoNotOptimize(t.w_metric.lower);
  }
}
BENCHMARK(BM_Transfer)->Arg(8)->Arg(32)->Arg(64);

void BM_DegradationSweep(benchmark::State& state) {
  const Eigen::Index dim = 16;
  SplitMix64 rng{23};
  const Eigen::MatrixXd q = random_orthogonal(rng, dim);
  Eigen::VectorXd lambda(dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    lambda(i) = (i % 2 == 0 ? 1.0 : -1.0) * (1.0 + static_cast<double>(i));
  const GramModel base{
      Eigen::MatrixXd(q * lambda.asDiagonal() * q.transpose())};
  const FrameFamily family = seeded_family(dim, 40, 29);
  const std::vector<double> params{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  for (auto _ : state) {
    const DegradationCurve curve =
        degradation_sweep(base, family, SweepDirection::floor, params);
    benchmark::DoNotOptimize(curve.samples.back().lower);
  }
}
BENCHMARK(BM_DegradationSweep);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <random>

#include "doflab/channel.hpp"
#include "doflab/numerics.hpp"

using namespace doflab;

namespace {

Mat<QComplex> random_exact(std::uint64_t seed, std::size_t rows,
                           std::size_t cols) {
  auto real = draw_channel_exact(seed, cols, rows, 1);
  Mat<QComplex> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = real.at(i, 0)[j];
  return m;
}

}  // namespace

static void BM_ExactRank(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Mat<QComplex> m = random_exact(1, n, n + 8);
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_ExactRank)->Arg(4)->Arg(8)->Arg(12);

static void BM_FloatRankSvd(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto real = draw_channel_float(1, n + 8, n, 1);
  Mat<CDouble> m(n, n + 8);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n + 8; ++j) m.at(i, j) = real.at(i, 0)[j];
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_FloatRankSvd)->Arg(4)->Arg(12);

static void BM_ExactProjector(benchmark::State& state) {
  auto real = draw_channel_exact(2, 3, 2, 1);
  std::vector<Vec<QComplex>> rows = {real.at(0, 0), real.at(1, 0)};
  for (auto _ : state) benchmark::DoNotOptimize(orth_projector(rows, 3));
}
BENCHMARK(BM_ExactProjector);

static void BM_ExactZeroForcer(benchmark::State& state) {
  Mat<QComplex> g = random_exact(3, 12, 20);
  std::vector<std::size_t> desired = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  for (auto _ : state) benchmark::DoNotOptimize(solve_zero_forcer(g, desired));
}
BENCHMARK(BM_ExactZeroForcer);

#include <benchmark/benchmark.h>

#include "doflab/decoding.hpp"
#include "doflab/dof_lab.hpp"
#include "doflab/schemes.hpp"

using namespace doflab;

static void BM_RunSchemeExact(benchmark::State& state) {
  const SchemeDef& scheme = schemes::registry()[state.range(0)];
  auto real = draw_channel_exact(1, scheme.desc.tx, scheme.desc.rx,
                                 scheme.desc.slots);
  state.SetLabel(scheme.desc.name);
  for (auto _ : state)
    benchmark::DoNotOptimize(run_scheme(scheme, real, scheme.desc.csit));
}
BENCHMARK(BM_RunSchemeExact)->DenseRange(0, 5);

static void BM_OracleReport(benchmark::State& state) {
  const SchemeDef& scheme = schemes::registry()[state.range(0)];
  auto real = draw_channel_exact(1, scheme.desc.tx, scheme.desc.rx,
                                 scheme.desc.slots);
  auto tr = run_scheme(scheme, real, scheme.desc.csit);
  state.SetLabel(scheme.desc.name);
  for (auto _ : state) benchmark::DoNotOptimize(oracle_report(tr));
}
BENCHMARK(BM_OracleReport)->DenseRange(0, 5);

static void BM_VerifyTrial(benchmark::State& state) {
  const SchemeDef& scheme = *schemes::find("pdd23");
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto real = draw_channel_exact(seed++, 2, 3, 12);
    auto tr = run_scheme(scheme, real, scheme.desc.csit);
    benchmark::DoNotOptimize(oracle_report(tr).all_pass);
  }
}
BENCHMARK(BM_VerifyTrial);

static void BM_SweepTrial(benchmark::State& state) {
  const SchemeDef& scheme = *schemes::find("pdd33");
  auto grid = default_power_grid();
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto real = draw_channel_float(seed++, 3, 3, 10);
    auto tr = run_scheme(scheme, real, scheme.desc.csit);
    double acc = 0.0;
    for (std::size_t k = 0; k < 3; ++k)
      for (double p : grid) acc += zf_rate(tr, k, p);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_SweepTrial);

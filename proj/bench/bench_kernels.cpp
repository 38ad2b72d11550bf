// Parallel kernels against their vcgap::serial references.

#include <benchmark/benchmark.h>

#include "vcgap/charikar.hpp"
#include "vcgap/embed.hpp"
#include "vcgap/isoperimetry.hpp"
#include "vcgap/metric.hpp"
#include "vcgap/parallel.hpp"
#include "vcgap/pentagon.hpp"
#include "vcgap/relaxations.hpp"

using namespace vcgap;

namespace {

const VectorSolution& charikar_gram() {
  static const VectorSolution sol = CharikarSolution(charikar_params(1, 4)).to_vector_solution();
  return sol;
}

const Graph& charikar_graph() {
  static const Graph g = CharikarSolution(charikar_params(1, 4)).graph();
  return g;
}

void BM_CheckTier(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(check_tier(charikar_gram(), charikar_graph(), Tier::Pentagonal));
}

void BM_CheckTierSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(serial::check_tier(charikar_gram(), charikar_graph(), Tier::Pentagonal));
}

void BM_PentagonalCensus(benchmark::State& st) {
  auto m = tensor_metric(5, false).metric;
  for (auto _ : st) benchmark::DoNotOptimize(pentagonal_census(m));
}

void BM_PentagonalCensusSerial(benchmark::State& st) {
  auto m = tensor_metric(5, false).metric;
  for (auto _ : st) benchmark::DoNotOptimize(serial::pentagonal_census(m));
}

void BM_IsoCensus(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(census_generalized(4));
}

void BM_IsoCensusSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(serial::census_generalized(4));
}

void BM_PoincareCensus(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(poincare_census(5));
}

void BM_PoincareCensusSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(serial::poincare_census(5));
}

void BM_PentagonalCharikar(benchmark::State& st) {
  auto p = charikar_params(1, 12);
  for (auto _ : st) benchmark::DoNotOptimize(verify_pentagonal_charikar(p));
}

void BM_PentagonalCharikarSerial(benchmark::State& st) {
  auto p = charikar_params(1, 12);
  for (auto _ : st) benchmark::DoNotOptimize(serial::verify_pentagonal_charikar(p));
}

void BM_Distortion(benchmark::State& st) {
  auto m = tensor_metric(4).metric;
  for (auto _ : st) benchmark::DoNotOptimize(min_distortion_l1(m));
}

void BM_DistortionSerial(benchmark::State& st) {
  auto m = tensor_metric(4).metric;
  for (auto _ : st) benchmark::DoNotOptimize(serial::min_distortion_l1(m));
}

}  // namespace

BENCHMARK(BM_CheckTier)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CheckTierSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PentagonalCensus)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PentagonalCensusSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IsoCensus)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IsoCensusSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PoincareCensus)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PoincareCensusSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PentagonalCharikar)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PentagonalCharikarSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Distortion)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DistortionSerial)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  configure_workers_from_env();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}

// Serial reference vs OpenMP kernels. Arguments: n, N.
#include <benchmark/benchmark.h>

#include "pentagram/pentagram_geometric.hpp"
#include "pentagram/suite.hpp"

using namespace pentagram;

namespace {

InvariantField<Rational> field_for(const benchmark::State& state) {
  Rng rng(17);
  return generate(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), rng).field;
}

void ExactParallel(benchmark::State& state) {
  const auto a = field_for(state);
  for (auto _ : state) benchmark::DoNotOptimize(pentagram_map_invariants(a));
}

void ExactSerial(benchmark::State& state) {
  const auto a = field_for(state);
  for (auto _ : state) benchmark::DoNotOptimize(pentagram_map_invariants_serial(a));
}

void FloatParallel(benchmark::State& state) {
  const auto a = to_double(field_for(state));
  for (auto _ : state) benchmark::DoNotOptimize(pentagram_map_invariants(a));
}

void FloatSerial(benchmark::State& state) {
  const auto a = to_double(field_for(state));
  for (auto _ : state) benchmark::DoNotOptimize(pentagram_map_invariants_serial(a));
}

void GeometricParallel(benchmark::State& state) {
  const auto a = field_for(state);
  const auto lp = to_double(reconstruct(a, Matrix<Rational>::identity(a.n() + 1)));
  for (auto _ : state) benchmark::DoNotOptimize(pentagram_map_geometric(lp));
}

void GeometricSerial(benchmark::State& state) {
  const auto a = field_for(state);
  const auto lp = to_double(reconstruct(a, Matrix<Rational>::identity(a.n() + 1)));
  for (auto _ : state) benchmark::DoNotOptimize(pentagram_map_geometric_serial(lp));
}

void Sizes(benchmark::internal::Benchmark* b) {
  b->Args({2, 101})->Args({3, 101})->Args({4, 101})->Args({6, 101});
}

// Float renormalisation of long twisted polygons loses conditioning, so the
// geometric kernels run on shorter ones.
void GeometricSizes(benchmark::internal::Benchmark* b) {
  b->Args({2, 13})->Args({3, 13})->Args({4, 13})->Args({6, 13});
}

}  // namespace

BENCHMARK(ExactParallel)->Apply(Sizes)->Unit(benchmark::kMillisecond);
BENCHMARK(ExactSerial)->Apply(Sizes)->Unit(benchmark::kMillisecond);
BENCHMARK(FloatParallel)->Apply(Sizes)->Unit(benchmark::kMicrosecond);
BENCHMARK(FloatSerial)->Apply(Sizes)->Unit(benchmark::kMicrosecond);
BENCHMARK(GeometricParallel)->Apply(GeometricSizes)->Unit(benchmark::kMicrosecond);
BENCHMARK(GeometricSerial)->Apply(GeometricSizes)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();

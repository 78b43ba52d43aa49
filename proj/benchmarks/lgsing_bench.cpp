#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "generators.hpp"
#include "lgsing/reduce.hpp"

using namespace lgsing;

namespace {

void BM_PolyProduct(benchmark::State& state) {
  Ring r = gen::ring(3);
  Poly p = parse_poly("x + y + z + 1", r).pow(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(p * p);
}
BENCHMARK(BM_PolyProduct)->Arg(4)->Arg(8)->Arg(12);

void BM_ScalarRank(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> entry(-9, 9);
  ScalarMatrix m(Field::rationals(), n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = entry(rng);
  }
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_ScalarRank)->Arg(8)->Arg(32)->Arg(64);

void BM_FreeKoszul(benchmark::State& state) {
  Ring r = gen::ring(3);
  gen::Rng rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  FreeComplex e = gen::free_complex(rng, r, 2, true);
  std::vector<Poly> f = gen::potential(rng, r, n);
  for (auto _ : state) benchmark::DoNotOptimize(free_koszul(e, f));
}
BENCHMARK(BM_FreeKoszul)->DenseRange(1, 3);

void BM_ValidateKoszul(benchmark::State& state) {
  gen::Rng rng(2);
  KoszulModule m = gen::koszul_module(rng, gen::ring(3), static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(validate_koszul(m));
}
BENCHMARK(BM_ValidateKoszul)->DenseRange(1, 3);

void BM_FoldWithWitnessM3(benchmark::State& state) {
  KoszulModule m = fixtures::m3();
  auto pts = default_points(m);
  for (auto _ : state) benchmark::DoNotOptimize(fold_with_witness(m, pts));
}
BENCHMARK(BM_FoldWithWitnessM3);

void BM_FoldWithWitnessCounitCone(benchmark::State& state) {
  KoszulModule m = cone_koszul(counit_map(fixtures::m3()));
  auto pts = default_points(m);
  for (auto _ : state) benchmark::DoNotOptimize(fold_with_witness(m, pts));
}
BENCHMARK(BM_FoldWithWitnessCounitCone)->Unit(benchmark::kMillisecond);

void BM_AmplitudeReduceTwoPotentials(benchmark::State& state) {
  KoszulModule m3 = fixtures::m3();
  Ring r = m3.ring();
  KoszulModule m = free_koszul(m3.underlying(), {parse_poly("x", r), parse_poly("y", r)});
  auto pts = default_points(m);
  for (auto _ : state) benchmark::DoNotOptimize(amplitude_reduce(m, pts));
}
BENCHMARK(BM_AmplitudeReduceTwoPotentials)->Unit(benchmark::kMillisecond);

void BM_ResidueHomology(benchmark::State& state) {
  gen::Rng rng(3);
  Ring r = gen::ring(2);
  const gen::Conjugated c = gen::matrix_factorization(rng, r, 3);
  MFObject m = c.target;
  for (int k = 0; k < state.range(0); ++k) m = mf_direct_sum(m, k % 2 == 0 ? c.source : c.target);
  Point origin = Point::origin(r);
  if (evaluate(m.potential(), origin) != 0) {
    state.SkipWithError("origin off the hypersurface");
    return;
  }
  for (auto _ : state) benchmark::DoNotOptimize(residue_homology(m, origin));
}
BENCHMARK(BM_ResidueHomology)->Arg(0)->Arg(4);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <random>

#include "dieudonne/harness.hpp"
#include "dieudonne/random.hpp"
#include "dieudonne/sslocus.hpp"

using namespace dieudonne;

namespace {

DieudonneModule supersingular_sample(int p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RingPtr R = make_witt_ring(p, 4, default_precision(p, 4));
  return random_frame(random_submodule(standard_module(1, 1, 2, R), 2, rng), rng);
}

FamilyPoint family_point(int p, int level) {
  RingPtr R = make_witt_ring(p, 2 * level, default_precision(p, 4));
  return sample_points(superspecial_base(R), level, 1, 7).front();
}

}  // namespace

static void BM_WittMul(benchmark::State& state) {
  RingPtr R = make_witt_ring(3, static_cast<int>(state.range(0)), 40);
  std::mt19937_64 rng(1);
  Elem a = R->random(rng), b = R->random(rng);
  for (auto _ : state) {
    a = R->mul(a, b);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_WittMul)->Arg(1)->Arg(4)->Arg(12);

static void BM_SmithNormalForm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RingPtr R = make_witt_ring(2, 2, 48);
  std::mt19937_64 rng(2);
  PadicMatrix A = random_integral_matrix(R, n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(A));
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(8)->Arg(16);

static void BM_NewtonPolygon(benchmark::State& state) {
  const DieudonneModule M = supersingular_sample(2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(newton_polygon(M));
}
BENCHMARK(BM_NewtonPolygon);

static void BM_IsotypicMixedSlopes(benchmark::State& state) {
  std::mt19937_64 rng(4);
  RingPtr R = make_witt_ring(2, 2, 48);
  NewtonPolygon beta{{{1, 2, 1}, {0, 1, 1}}};
  const DieudonneModule M = random_frame(random_submodule(standard_module(beta, R), 2, rng), rng);
  for (auto _ : state) benchmark::DoNotOptimize(isotypic_decomposition(M));
}
BENCHMARK(BM_IsotypicMixedSlopes);

static void BM_MinimalIsogeny(benchmark::State& state) {
  const DieudonneModule M = supersingular_sample(static_cast<int>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(minimal_isogeny(M));
}
BENCHMARK(BM_MinimalIsogeny)->Arg(2)->Arg(3);

static void BM_SkeletonRoute(benchmark::State& state) {
  const DieudonneModule M = supersingular_sample(2, 5);
  for (auto _ : state) benchmark::DoNotOptimize(minimal_modules_by_skeleton(M));
}
BENCHMARK(BM_SkeletonRoute);

static void BM_EndomorphismRing(benchmark::State& state) {
  const DieudonneModule M = supersingular_sample(static_cast<int>(state.range(0)), 6);
  for (auto _ : state) benchmark::DoNotOptimize(endomorphism_ring(M));
}
BENCHMARK(BM_EndomorphismRing)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_CpProfile(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  const FamilyPoint x = family_point(2, level);
  const SuperspecialBase base = superspecial_base(x.module.ring());
  for (auto _ : state) benchmark::DoNotOptimize(c_p_profile(base, x));
}
BENCHMARK(BM_CpProfile)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_Stratification(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(stratification(static_cast<int>(state.range(0)), 2));
}
BENCHMARK(BM_Stratification)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "torsor/circle.hpp"
#include "torsor/harness.hpp"
#include "torsor/targets.hpp"

using namespace torsor;

namespace {

void BM_primes_in_window(benchmark::State& state) {
  const uint64_t base = 1000000000ULL;
  const uint64_t width = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(arith::primes_in(base, base + width));
  }
}
BENCHMARK(BM_primes_in_window)->Arg(100000)->Arg(1000000);

void BM_is_prime_u64(benchmark::State& state) {
  uint64_t n = 1000000007ULL;
  for (auto _ : state) {
    benchmark::DoNotOptimize(arith::is_prime_u64(n));
    n += 2;
  }
}
BENCHMARK(BM_is_prime_u64);

void BM_singular_series(benchmark::State& state) {
  const uint64_t P = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(circle::singular_series(P));
  }
}
BENCHMARK(BM_singular_series)->Arg(2000)->Arg(100000);

void BM_solve_F1(benchmark::State& state) {
  solvers::ConstraintFamily fam{solvers::FamilyKind::F1, {-1, 1, 1}, 0, 1.0 / 3.0};
  solvers::IntervalFamily iv{{1, 1, 1, 1}, solvers::default_exponents(fam),
                             static_cast<uint64_t>(state.range(0)), 0.1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(solvers::solve_F1(fam, iv));
  }
}
BENCHMARK(BM_solve_F1)->Arg(10000000)->Arg(100000000);

void BM_count_J(benchmark::State& state) {
  solvers::ConstraintFamily fam{solvers::FamilyKind::F1, {-1, 1, 1}, 0, 1.0 / 3.0};
  solvers::IntervalFamily iv{{1, 1, 1, 1}, solvers::default_exponents(fam),
                             static_cast<uint64_t>(state.range(0)), 0.1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(circle::count_J(fam, iv));
  }
}
BENCHMARK(BM_count_J)->Arg(10000000)->Arg(100000000);

void BM_parametrize_eval(benchmark::State& state) {
  std::mt19937_64 rng(5);
  auto a = harness::sample_assignment(surfaces::SurfaceId::X8, rng);
  for (auto _ : state) {
    auto pt = surfaces::parametrize(a);
    benchmark::DoNotOptimize(
        surfaces::eval_form(a.surface, {pt[0].value, pt[1].value, pt[2].value, pt[3].value}));
  }
}
BENCHMARK(BM_parametrize_eval);

void BM_local_density_2x5(benchmark::State& state) {
  auto sys = circle::LinearSystem::two_rows({1, 0, 0, 2, -1}, {0, 1, 1, 2, 0});
  const uint64_t p = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(circle::local_density(sys, p));
  }
}
BENCHMARK(BM_local_density_2x5)->Arg(31)->Arg(97);

void BM_count_M_X1(benchmark::State& state) {
  surfaces::PrimeAssignment a{surfaces::SurfaceId::X1, {1, 1, 1, 1}, {19, 3, 5, 11}};
  auto pt = surfaces::parametrize(a);
  const uint64_t B = static_cast<uint64_t>(state.range(0));
  std::array<double, 4> xi{};
  for (int i = 0; i < 4; ++i) xi[i] = pt[i].value.get_d() / 6859.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(harness::count_M(surfaces::SurfaceId::X1, xi, 0.3, B, 12));
  }
}
BENCHMARK(BM_count_M_X1)->Arg(14047232)->Arg(56188928);

void BM_derive_generic(benchmark::State& state) {
  surfaces::PrimeAssignment a{surfaces::SurfaceId::X2, {1, 1, 1, -1, 1}, {29, 3, 7, 5, 19}};
  auto pt = surfaces::parametrize(a);
  std::array<double, 4> xi{};
  for (int i = 0; i < 4; ++i) xi[i] = pt[i].value.get_d() / 24389.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(targets::derive_generic(surfaces::SurfaceId::X2, xi));
  }
}
BENCHMARK(BM_derive_generic);

}  // namespace

BENCHMARK_MAIN();

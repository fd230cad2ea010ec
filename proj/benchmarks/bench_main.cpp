#include <benchmark/benchmark.h>

#include <cmath>

#include "shiftlab/shift1d.hpp"
#include "shiftlab/shift2d.hpp"
#include "shiftlab/tc_class.hpp"

using namespace shiftlab;

namespace {

Measure1D two_atom(double x) { return Measure1D({{0.0, 1 - x * x}, {1.0, x * x}}, {}, Measure1D::Sign::positive); }

FiveTuple sample_tuple() {
  Measure1D tau1({{0.25, 0.8}, {1.0, 0.2}}, {}, Measure1D::Sign::positive);
  Measure1D tau = *backward_extension(0.4, tau1).measure;
  Measure1D sigma({{0.0, 0.5}, {1.0, 0.25}}, {{0.0, 1.0, {{0.25, 0.0}}}}, Measure1D::Sign::positive);
  return {sigma, tau, 0.3, Measure1D::dirac(1.0), Measure1D::dirac(1.0)};
}

}  // namespace

static void BM_Moment(benchmark::State& state) {
  Measure1D mu({{0.0, 0.2}, {0.7, 0.3}}, {{0.0, 0.5, {{1.0, -0.5}, {2.0, 1.0}}}, {0.5, 1.0, {{0.3, 2.0}}}});
  int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(moment(mu, k));
}
BENCHMARK(BM_Moment)->Arg(1)->Arg(20);

static void BM_PsiPhi(benchmark::State& state) {
  FiveTuple ft = sample_tuple();
  for (auto _ : state) benchmark::DoNotOptimize(psi_phi(ft));
}
BENCHMARK(BM_PsiPhi);

static void BM_VerifyTheorem(benchmark::State& state) {
  FiveTuple ft{two_atom(0.6), two_atom(0.8), 0.7, Measure1D::dirac(1.0), Measure1D::dirac(1.0)};
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_theorem(ft, n, n));
}
BENCHMARK(BM_VerifyTheorem)->Arg(2)->Arg(3);

static void BM_SixPoint(benchmark::State& state) {
  int K = static_cast<int>(state.range(0));
  ShiftGrid g = build_grid(sample_tuple(), {K + 1, K + 1});
  for (auto _ : state) benchmark::DoNotOptimize(six_point_test(g, {K, K}));
}
BENCHMARK(BM_SixPoint)->Arg(10)->Arg(40);

BENCHMARK_MAIN();

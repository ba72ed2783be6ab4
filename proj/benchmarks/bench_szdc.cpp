#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "szdc/analysis.hpp"
#include "szdc/moments.hpp"
#include "szdc/operator.hpp"

namespace {

szdc::OperatorConfig sqrt_cfg(int n) {
  szdc::OperatorConfig cfg;
  cfg.n = n;
  cfg.rule = szdc::BnRule::Sqrt;
  return cfg;
}

void BM_MomentRecurrence(benchmark::State& state) {
  const int p_max = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(szdc::moment_recurrence(64, 8.0, p_max));
  }
}
BENCHMARK(BM_MomentRecurrence)->Arg(8)->Arg(16)->Arg(32);

void BM_MomentDirect(benchmark::State& state) {
  const szdc::Complex z{-2.0, 0.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        szdc::moment_direct(50, std::sqrt(50.0), 10, z, 1e-11));
  }
}
BENCHMARK(BM_MomentDirect);

void BM_Apply(benchmark::State& state) {
  const szdc::TaylorFunction f = szdc::TaylorFunction::cosh_sqrt(0.2);
  const szdc::OperatorConfig cfg = sqrt_cfg(static_cast<int>(state.range(0)));
  (void)szdc::apply(f, cfg, {0.5, 0.5});  // warm the table cache
  const szdc::Complex z{-0.8, 0.6};
  for (auto _ : state) {
    benchmark::DoNotOptimize(szdc::apply(f, cfg, z));
  }
}
BENCHMARK(BM_Apply)->Arg(16)->Arg(512);

void BM_ApplyDirect(benchmark::State& state) {
  const szdc::TaylorFunction f = szdc::TaylorFunction::cosh_sqrt(0.2);
  const szdc::OperatorConfig cfg = sqrt_cfg(25);
  const szdc::Complex z{-1.8, 0.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(szdc::apply_direct(f, cfg, z));
  }
}
BENCHMARK(BM_ApplyDirect);

void BM_DiskSupNorm(benchmark::State& state) {
  const szdc::TaylorFunction f = szdc::TaylorFunction::cosh_sqrt(0.2);
  const szdc::OperatorConfig cfg = sqrt_cfg(64);
  (void)szdc::apply(f, cfg, {0.5, 0.5});
  for (auto _ : state) {
    benchmark::DoNotOptimize(szdc::disk_sup_norm(
        [&](szdc::Complex z) { return szdc::apply(f, cfg, z) - f.eval(z); },
        1.0));
  }
}
BENCHMARK(BM_DiskSupNorm);

void BM_CauchyDerivative(benchmark::State& state) {
  const szdc::TaylorFunction f = szdc::TaylorFunction::cosh_sqrt(0.2);
  const szdc::OperatorConfig cfg = sqrt_cfg(64);
  (void)szdc::apply(f, cfg, {0.5, 0.5});
  const szdc::ContourSpec contour{2.0, {0.0, 0.0}, 256};
  for (auto _ : state) {
    benchmark::DoNotOptimize(szdc::cauchy_derivative(
        [&](szdc::Complex nu) { return szdc::apply(f, cfg, nu); }, 1,
        {0.5, 0.25}, contour));
  }
}
BENCHMARK(BM_CauchyDerivative);

}  // namespace

BENCHMARK_MAIN();

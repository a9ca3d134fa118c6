#include <benchmark/benchmark.h>

#include <cmath>

#include "dimkit/angular.hpp"
#include "dimkit/loop_integrals.hpp"
#include "dimkit/quadrature.hpp"
#include "dimkit/radial.hpp"
#include "dimkit/specfun.hpp"
#include "dimkit/sphere_measure.hpp"

namespace {

// Sweep the argument so the branch mix (reflection vs direct) is realistic.
void BM_rgamma(benchmark::State& state) {
  double x = -8.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dimkit::specfun::rgamma(x));
    x += 0.37;
    if (x > 8.0) x = -8.3;
  }
}
BENCHMARK(BM_rgamma);

void BM_surface(benchmark::State& state) {
  double d = -6.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dimkit::sphere_measure::surface(d));
    d += 0.29;
    if (d > 6.0) d = -6.1;
  }
}
BENCHMARK(BM_surface);

void BM_measure_coefficient(benchmark::State& state) {
  double d = -5.7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dimkit::sphere_measure::measure_coefficient(d));
    d += 0.31;
    if (d > 6.0) d = -5.7;
  }
}
BENCHMARK(BM_measure_coefficient);

void BM_decompose(benchmark::State& state) {
  const double d = static_cast<double>(state.range(0)) / 10.0;
  const int n = dimkit::sphere_measure::max_angles(d);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dimkit::sphere_measure::decompose(d, n));
  }
}
BENCHMARK(BM_decompose)->Arg(65)->Arg(5)->Arg(-33);

void BM_sin_power(benchmark::State& state) {
  double a = -0.9;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dimkit::angular::sin_power(a));
    a += 0.23;
    if (a > 6.0) a = -0.9;
  }
}
BENCHMARK(BM_sin_power);

void BM_quadrature_sin_power(benchmark::State& state) {
  const double e = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) {
    auto r = dimkit::quadrature::integrate_finite(
        [e](double, double da, double db) {
          return std::pow(std::sin(std::min(da, db)), e);
        },
        0.0, 3.14159265358979323846, 1e-11);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_quadrature_sin_power)->Arg(50)->Arg(-95);

void BM_radial_extraction(benchmark::State& state) {
  dimkit::radial::RadialIntegrandSpec spec{
      dimkit::radial::RadialIntegrandKind::kPowerOverOnePlus, 0.5, 1.0};
  const auto dg = dimkit::radial::default_delta_grid(1.0);
  const auto kg = dimkit::radial::default_K_grid(1.0);
  for (auto _ : state) {
    auto r = dimkit::radial::extract_finite_part(spec, dg, kg);
    benchmark::DoNotOptimize(r.finite_part);
  }
}
BENCHMARK(BM_radial_extraction)->Unit(benchmark::kMillisecond);

void BM_vacuum_bubble_closed(benchmark::State& state) {
  double d = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dimkit::loop_integrals::vacuum_bubble(d, 1.0));
    d += 0.17;
    if (d > 1.8) d = 0.3;
  }
}
BENCHMARK(BM_vacuum_bubble_closed);

}  // namespace

BENCHMARK_MAIN();

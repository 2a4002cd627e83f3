#include <complex>
#include <random>

#include <benchmark/benchmark.h>

#include "subrayleigh/correlation.hpp"
#include "subrayleigh/diffraction.hpp"
#include "subrayleigh/permanent.hpp"
#include "subrayleigh/scan.hpp"

namespace {

using namespace subrayleigh;

AmplitudeMatrix random_matrix(std::size_t n) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> normal;
  AmplitudeMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = {normal(rng), normal(rng)};
    }
  }
  return m;
}

void BM_PermanentEnumeration(benchmark::State& state) {
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(permanent_by_enumeration(m));
  }
}
BENCHMARK(BM_PermanentEnumeration)->DenseRange(2, 8);

void BM_PermanentRyser(benchmark::State& state) {
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(permanent_by_ryser(m));
  }
}
BENCHMARK(BM_PermanentRyser)->DenseRange(2, 12, 2);

void BM_FraunhoferField(benchmark::State& state) {
  const Geometry g(500e-9, 0.1, 1.0, 1.0);
  const auto ap = Aperture::rect(20e-6, 20e-6);
  double r = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fraunhofer_field({r, 0.0}, {1e-4, 0.0}, ap, g));
    r += 1e-9;
  }
}
BENCHMARK(BM_FraunhoferField);

void BM_GratingField(benchmark::State& state) {
  const Geometry g(500e-9, 0.1, 1.0, 1.0);
  const auto ap =
      Aperture::grating(20e-6, 20e-6, 60e-6, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(grating_field({1e-3, 0.0}, {1e-4, 0.0}, ap, g));
  }
}
BENCHMARK(BM_GratingField)->Arg(3)->Arg(15);

void BM_FresnelOracle(benchmark::State& state) {
  const Geometry g(500e-9, 0.1, 1.0, 1.0);
  const auto ap = Aperture::rect(20e-6, 20e-6);
  const QuadratureSpec spec{32, static_cast<int>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        fresnel_field_oracle({1e-2, 0.0}, {1e-4, 0.0}, ap, g, spec));
  }
}
BENCHMARK(BM_FresnelOracle)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_RunScan(benchmark::State& state) {
  ScanConfig c;
  c.scenario = static_cast<Scenario>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_scan(c, 1));
  }
}
BENCHMARK(BM_RunScan)
    ->Arg(static_cast<int>(Scenario::G2Mirror))
    ->Arg(static_cast<int>(Scenario::ClassicalRect))
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

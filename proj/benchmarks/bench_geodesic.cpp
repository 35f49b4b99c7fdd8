#include <benchmark/benchmark.h>

#include "rightratio/geodesic.hpp"
#include "rightratio/ratio.hpp"

namespace {

void BM_IntegrateGeodesicTorus(benchmark::State& state) {
    rr::SurfaceSpec torus = rr::SurfaceSpec::torus(2.5, 0.5);
    rr::ChartPoint start{0.3, 0.1};
    auto dir = rr::orthonormal_frame(torus, start, 0.7)[0];
    for (auto _ : state) {
        auto path = rr::integrate_geodesic(torus, start, dir, 1.0);
        benchmark::DoNotOptimize(path.samples.back());
    }
}
BENCHMARK(BM_IntegrateGeodesicTorus);

void BM_ShootingDistanceTorus(benchmark::State& state) {
    rr::SurfaceSpec torus = rr::SurfaceSpec::torus(2.5, 0.5);
    for (auto _ : state) {
        auto r = rr::geodesic_distance(torus, {0.2, 0.1}, {0.8, 0.5});
        benchmark::DoNotOptimize(r.distance);
    }
}
BENCHMARK(BM_ShootingDistanceTorus);

void BM_SphereClosedFormDistance(benchmark::State& state) {
    rr::SurfaceSpec sphere = rr::SurfaceSpec::sphere(1.0);
    for (auto _ : state) {
        auto r = rr::geodesic_distance(sphere, {1.0, 0.2}, {1.4, 1.1});
        benchmark::DoNotOptimize(r.distance);
    }
}
BENCHMARK(BM_SphereClosedFormDistance);

void BM_RightRatioTorus(benchmark::State& state) {
    rr::SurfaceSpec torus = rr::SurfaceSpec::torus(2.5, 0.5);
    for (auto _ : state) {
        auto s = rr::right_ratio(torus, {rr::kPi, 0.0}, 0.0, 0.3);
        benchmark::DoNotOptimize(s.ratio);
    }
}
BENCHMARK(BM_RightRatioTorus);

} // namespace

BENCHMARK_MAIN();

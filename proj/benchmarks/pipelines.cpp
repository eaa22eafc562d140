#include "pdcover/cores/cores.h"
#include "pdcover/geom/arrangement.h"
#include "pdcover/halfspace3d/driver.h"
#include "pdcover/partition/trapezoid.h"
#include "pdcover/separator/separator.h"
#include "pdcover/solvers/qptas.h"
#include "pdcover/solvers/setcover.h"
#include "pdcover_tools/generators.h"

#include <benchmark/benchmark.h>

using namespace pdc;
using tools::WeightLaw;

namespace {

void arrangement(benchmark::State& state) {
    auto regs = tools::disk_polygons(static_cast<int>(state.range(0)), 16, WeightLaw::Unit, 1);
    for (auto _ : state) benchmark::DoNotOptimize(build_arrangement(regs).m);
}
BENCHMARK(arrangement)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void trapezoids(benchmark::State& state) {
    auto curves = tools::segment_curves(tools::random_segments(static_cast<int>(state.range(0)), 5, 25, false, 1));
    BBox box{-1, -1, 101, 101};
    for (auto _ : state) benchmark::DoNotOptimize(trapezoidal_decomposition(curves, box).cells.size());
}
BENCHMARK(trapezoids)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void sampled_partition(benchmark::State& state) {
    CurveSet set;
    set.curves = tools::segment_curves(tools::random_segments(40, 5, 25, false, 2));
    set.weights.assign(40, 1);
    set.solids.assign(40, {});
    for (auto _ : state) benchmark::DoNotOptimize(sample_partition(set, state.range(0), 3).cells.size());
}
BENCHMARK(sampled_partition)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void weighted_separator(benchmark::State& state) {
    auto regs = tools::disjoint_polygons(static_cast<int>(state.range(0)), 8, WeightLaw::Uniform10, 4);
    for (auto _ : state)
        benchmark::DoNotOptimize(weighted_region_separator(regs, Scalar(1, 5)).curve.complexity());
}
BENCHMARK(weighted_separator)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void disjoint_cores(benchmark::State& state) {
    auto regs = tools::disk_polygons(static_cast<int>(state.range(0)), 16, WeightLaw::Uniform10, 5);
    for (auto _ : state)
        benchmark::DoNotOptimize(core_vertex_cost(disjoint_core_decomposition(regs, 6)).cost);
}
BENCHMARK(disjoint_cores)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

SetCoverInstance cover_instance(int n) {
    auto regs = tools::disk_polygons(n, 16, WeightLaw::Uniform10, 7);
    return {regs, tools::clustered_points(regs, 40, 8)};
}

void exact_cover(benchmark::State& state) {
    auto inst = cover_instance(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(exact_set_cover(inst).weight);
}
BENCHMARK(exact_cover)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void cover_driver(benchmark::State& state) {
    auto inst = cover_instance(static_cast<int>(state.range(0)));
    DriverConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(qptas_set_cover(inst, cfg).weight);
}
BENCHMARK(cover_driver)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void halfspace_driver(benchmark::State& state) {
    auto inst = tools::random_halfspaces(static_cast<int>(state.range(0)), 30, 0.0, WeightLaw::Unit, 9);
    DriverConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(qptas_halfspace_cover(inst, cfg).weight);
}
BENCHMARK(halfspace_driver)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

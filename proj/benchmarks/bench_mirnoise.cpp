#include <benchmark/benchmark.h>

#include "mirnoise/acoustic_modes.hpp"
#include "mirnoise/beam_overlap.hpp"
#include "mirnoise/material_geometry.hpp"
#include "mirnoise/susceptibility.hpp"

using namespace mirnoise;

namespace {

const PlanoConvexGeometry& working_point() {
    static const auto g = solve_geometry(20.0, 0.07, Material{});
    return g;
}

void BM_SolveGeometry(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(solve_geometry(20.0, 0.07, Material{}));
}
BENCHMARK(BM_SolveGeometry);

// Closed-form off-axis overlap at transverse order 2p + l = 2 * range(0).
void BM_OverlapOffaxis(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    const auto m = mode_data(working_point(), {1, k / 2, k, Parity::cosine});
    const BeamSpec beam{0.02, 0.04};
    for (auto _ : state) benchmark::DoNotOptimize(overlap_offaxis(m, beam));
}
BENCHMARK(BM_OverlapOffaxis)->Arg(0)->Arg(10)->Arg(50)->Arg(200);

void BM_ChiStaticCentered(benchmark::State& state) {
    const BeamSpec beam{state.range(0) * 1e-3, 0.0};
    for (auto _ : state) benchmark::DoNotOptimize(chi_eff(working_point(), beam, 0.0, LossAngle(0.0)));
}
BENCHMARK(BM_ChiStaticCentered)->Arg(20)->Arg(55)->Unit(benchmark::kMicrosecond);

void BM_ChiStaticOffaxis(benchmark::State& state) {
    const BeamSpec beam{0.02, state.range(0) * 1e-3};
    TruncationPolicy policy;
    policy.epsilon = 1e-2;
    for (auto _ : state) benchmark::DoNotOptimize(chi_eff(working_point(), beam, 0.0, LossAngle(0.0), policy));
}
BENCHMARK(BM_ChiStaticOffaxis)->Arg(20)->Arg(120)->Unit(benchmark::kMillisecond);

void BM_ChiResonant(benchmark::State& state) {
    const double omega = 0.5 * fundamental_frequency(working_point());
    for (auto _ : state) benchmark::DoNotOptimize(chi_eff(working_point(), {0.02, 0.0}, omega, LossAngle(1e-6)));
}
BENCHMARK(BM_ChiResonant)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();

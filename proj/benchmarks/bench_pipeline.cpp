// Copyright Contributors to the edgediff project.
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "edgediff/pipeline.hpp"
#include "edgediff/scenes.hpp"
#include "edgediff/tonemap.hpp"

namespace {

using namespace edgediff;

void BM_Model(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const auto model = static_cast<Model>(state.range(1));
    const bool edge_aware = state.range(2) != 0;
    const auto hdr = synthetic_scene(SceneKind::NightStreet, n, n);
    const auto ref = tonemap_reinhard(hdr, 0.0);
    const auto test = tonemap_reinhard(hdr, 0.5);
    auto cfg = PipelineConfig::preset(model, edge_aware);
    cfg.workers = static_cast<int>(state.range(3));
    for (auto _ : state)
        benchmark::DoNotOptimize(run_model(ref, test, cfg));
}
BENCHMARK(BM_Model)
    ->ArgNames({"size", "model", "edge_aware", "workers"})
    ->Args({256, 0, 0, 1})
    ->Args({256, 0, 1, 1})
    ->Args({256, 1, 0, 1})
    ->Args({256, 1, 1, 1})
    ->Args({256, 2, 0, 1})
    ->Args({256, 2, 1, 1})
    ->Args({512, 2, 1, 1})
    ->Args({512, 2, 1, 8})
    ->Unit(benchmark::kMillisecond);

void BM_Durand(benchmark::State& state)
{
    const auto hdr = synthetic_scene(SceneKind::SunlitInterior, 512, 512);
    for (auto _ : state)
        benchmark::DoNotOptimize(tonemap_durand(hdr, 100.0));
}
BENCHMARK(BM_Durand)->Unit(benchmark::kMillisecond);

}  // namespace

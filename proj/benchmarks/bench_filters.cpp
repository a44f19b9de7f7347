// Copyright Contributors to the edgediff project.
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include <benchmark/benchmark.h>

#include "edgediff/csf.hpp"
#include "edgediff/filtering.hpp"

namespace {

using namespace edgediff;

ChannelPlane random_plane(int n, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ChannelPlane p(n, n);
    for (double& v : p.values())
        v = u(rng);
    return p;
}

void BM_GaussianBlur(benchmark::State& state)
{
    const auto plane = random_plane(static_cast<int>(state.range(0)), 1);
    const double sigma = static_cast<double>(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(gaussian_blur(plane, sigma));
}
BENCHMARK(BM_GaussianBlur)->Args({256, 2})->Args({256, 32})->Args({512, 64})->Unit(benchmark::kMillisecond);

void BM_FrequencyFilter(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const auto plane = random_plane(n, 2);
    const auto raster = build_csf_raster(CsfModel::achromatic(), padded_grid(n, n, 60.0), true);
    for (auto _ : state)
        benchmark::DoNotOptimize(frequency_filter(plane, raster));
}
BENCHMARK(BM_FrequencyFilter)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_FrequencyFilterPaddedFft(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const auto plane = random_plane(n, 2);
    const auto raster = build_csf_raster(CsfModel::achromatic(), padded_grid(n, n, 60.0), true);
    for (auto _ : state)
        benchmark::DoNotOptimize(frequency_filter_fft(plane, raster));
}
BENCHMARK(BM_FrequencyFilterPaddedFft)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_BilateralFast(benchmark::State& state)
{
    const auto plane = random_plane(256, 3);
    BilateralParams p;
    p.sigma_s = 4.0;
    p.sigma_r = 0.1;
    p.bins = static_cast<int>(state.range(0));
    p.workers = static_cast<int>(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(bilateral_fast(plane, plane, p));
}
BENCHMARK(BM_BilateralFast)->Args({16, 1})->Args({32, 1})->Args({32, 4})->Unit(benchmark::kMillisecond);

void BM_BilateralDirect(benchmark::State& state)
{
    const auto plane = random_plane(128, 4);
    BilateralParams p;
    p.sigma_s = 2.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(bilateral_direct(plane, plane, p));
}
BENCHMARK(BM_BilateralDirect)->Unit(benchmark::kMillisecond);

}  // namespace

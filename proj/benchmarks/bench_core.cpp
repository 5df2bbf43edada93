// SPDX-License-Identifier: Apache-2.0
//
// ris-hst: link-level simulator for RIS-assisted high-speed-train MISO downlinks
// Copyright (C) 2026 The ris-hst authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <benchmark/benchmark.h>

#include "rishst/channel.hpp"
#include "rishst/optimizer.hpp"

using namespace rishst;

static void MarcumSeries(benchmark::State &state)
{
    double a = 1.0;
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(marcum_q1(a, 2.0));
        a = a < 5.0 ? a + 0.01 : 1.0;
    }
}
BENCHMARK(MarcumSeries);

static void MarcumQuadrature(benchmark::State &state)
{
    double a = 12.0;
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(marcum_q1(a, 14.0));
        a = a < 16.0 ? a + 0.01 : 12.0;
    }
}
BENCHMARK(MarcumQuadrature);

static void JakesSequence(benchmark::State &state)
{
    JakesProcess proc{1667.8, 3e-5, std::size_t(state.range(0)), 64};
    RngStream rng(1, 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(jakes_sequence(proc, rng));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(JakesSequence)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

static void DrawDrop(benchmark::State &state)
{
    ScenarioParams p;
    p.ris_side = std::size_t(state.range(0));
    RngStream rng(1, 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(draw_drop(p, rng));
    state.SetComplexityN(state.range(0) * state.range(0));
}
BENCHMARK(DrawDrop)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond)->Complexity();

static void BcdOptimize(benchmark::State &state)
{
    ScenarioParams p;
    p.ris_side = std::size_t(state.range(0));
    p.num_slots = 4;
    RngStream rng(1, 0);
    const ChannelDrop drop = draw_drop(p, rng);
    const ChannelRealization ch = realize(drop, p, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(bcd_optimize(2, ch, drop.angles, p.tx_power_w));
    state.SetComplexityN(state.range(0) * state.range(0));
}
BENCHMARK(BcdOptimize)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMicrosecond)->Complexity();

static void RealizeSlot(benchmark::State &state)
{
    ScenarioParams p;
    RngStream rng(1, 0);
    const ChannelDrop drop = draw_drop(p, rng);
    std::size_t k = 1;
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(realize(drop, p, k));
        k = k % p.num_slots + 1;
    }
}
BENCHMARK(RealizeSlot)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();

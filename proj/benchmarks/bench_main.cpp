// SPDX-License-Identifier: Apache-2.0
//
// uavrank: site-specific coverage and MIMO channel-rank analysis for UAV links
// Copyright (C) 2026 The uavrank authors
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

#include <random>

#include "uavrank/channel.hpp"
#include "uavrank/correlation.hpp"
#include "uavrank/covermap.hpp"
#include "uavrank/eval.hpp"
#include "uavrank/kriging.hpp"
#include "uavrank/raytrace.hpp"
#include "uavrank/synth.hpp"

using namespace uavrank;

namespace
{
    Scene block_city(int blocks)
    {
        Scene s;
        s.extent = {600, 600};
        s.towers.push_back({1, {10, 10}, 25.0, {}});
        for (int i = 0; i < blocks; ++i)
        {
            const double x = 40.0 + 90.0 * (i % 6), y = 40.0 + 90.0 * (i / 6);
            s.buildings.push_back({{x, y, 50, 50}, 10.0 + 5.0 * (i % 7), "itu_concrete"});
        }
        return s;
    }

    void trace_order(benchmark::State &state)
    {
        const Scene s = block_city(static_cast<int>(state.range(1)));
        const Tracer tracer(s);
        std::mt19937_64 rng(1);
        std::uniform_real_distribution<double> xy(0, 600), z(20, 120);
        for (auto _ : state)
            benchmark::DoNotOptimize(tracer.trace({10, 10, 25}, {xy(rng), xy(rng), z(rng)}, static_cast<int>(state.range(0))));
    }

    void svd_rank(benchmark::State &state)
    {
        const int n = static_cast<int>(state.range(0));
        std::mt19937_64 rng(2);
        std::normal_distribution<double> g;
        ChannelMatrix h{Eigen::MatrixXcd(n, n), 3.4e9};
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                h.entries(i, j) = {g(rng), g(rng)};
        for (auto _ : state)
            benchmark::DoNotOptimize(analyze_rank(h));
    }

    void rank_grid(benchmark::State &state)
    {
        const Scene s = block_city(12);
        const std::vector<double> alts{30};
        for (auto _ : state)
            benchmark::DoNotOptimize(compute_rank_grid(s, alts));
    }

    void kriging_weights(benchmark::State &state)
    {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> u(-150, 150);
        std::vector<Vec2> pts;
        for (int i = 0; i < state.range(0); ++i)
            pts.push_back({u(rng), u(rng)});
        for (auto _ : state)
            benchmark::DoNotOptimize(solve_weights(pts, {0, 0}, kReferenceCorrelation, 0.5));
    }

    void loo_kriging(benchmark::State &state)
    {
        const SyntheticFieldGenerator gen({20, 20, 30.0, {0, 0}}, kReferenceCorrelation);
        const auto rg = gen.generate(4, {});
        const auto field = RankField::from_grid(rg, 1);
        for (auto _ : state)
            benchmark::DoNotOptimize(loo_estimates(field, 0, Method::kriging, {}, kReferenceCorrelation));
    }

    void correlation_fit(benchmark::State &state)
    {
        const SyntheticFieldGenerator gen({20, 20, 30.0, {0, 0}}, kReferenceCorrelation);
        const auto rg = gen.generate(5, {});
        for (auto _ : state)
            benchmark::DoNotOptimize(fit_correlation_model(rg));
    }
} // namespace

BENCHMARK(trace_order)->ArgsProduct({{0, 1, 2}, {6, 24}});
BENCHMARK(svd_rank)->Arg(4)->Arg(8)->Arg(16);
BENCHMARK(rank_grid)->Unit(benchmark::kMillisecond);
BENCHMARK(kriging_weights)->Arg(5)->Arg(20)->Arg(50);
BENCHMARK(loo_kriging)->Unit(benchmark::kMillisecond);
BENCHMARK(correlation_fit)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();

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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "../support/oracles.hpp"
#include "uavrank/error.hpp"
#include "uavrank/kriging.hpp"
#include "uavrank/synth.hpp"

using namespace uavrank;

namespace
{
    RankField field_of(int nx, int ny, std::size_t alts, const std::function<std::optional<double>(std::size_t, int)> &f)
    {
        RankField rf;
        rf.grid = {nx, ny, 30.0, {0, 0}};
        for (std::size_t a = 0; a < alts; ++a)
            rf.altitudes.push_back(30.0 + 10.0 * static_cast<double>(a));
        rf.values.resize(alts * static_cast<std::size_t>(nx * ny));
        for (std::size_t a = 0; a < alts; ++a)
            for (int c = 0; c < nx * ny; ++c)
                rf.at(a, c) = f(a, c);
        return rf;
    }

    std::vector<double> oracle_weights(const std::vector<Vec2> &pts, Vec2 t, double v2)
    {
        const std::size_t m = pts.size();
        std::vector<std::vector<double>> a(m + 1, std::vector<double>(m + 1, 0.0));
        std::vector<double> b(m + 1, 1.0);
        for (std::size_t i = 0; i < m; ++i)
        {
            for (std::size_t j = 0; j < m; ++j)
                a[i][j] = v2 * (1.0 - kReferenceCorrelation(distance(pts[i], pts[j])));
            a[i][m] = a[m][i] = 1.0;
            b[i] = v2 * (1.0 - kReferenceCorrelation(distance(pts[i], t)));
        }
        auto x = oracle::solve(a, b);
        x.pop_back();
        return x;
    }
} // namespace

TEST(Variance, Examples)
{
    EXPECT_NEAR(rank_variance(std::vector<double>{1, 1, 1, 1, 1, 1, 1, 1, 2}), 0.1111, 1e-4);
    EXPECT_DOUBLE_EQ(rank_variance(std::vector<double>{2, 2, 2}), 0.0);
    EXPECT_DOUBLE_EQ(rank_variance(std::vector<double>{1, 3}), 2.0);
    EXPECT_DOUBLE_EQ(rank_variance(std::vector<double>{4}), 0.0);
}

TEST(Semivariogram, ReferenceValues)
{
    EXPECT_NEAR(semivariogram(kReferenceCorrelation, 1.0, {0, 0}, {0, 0}), 0.0011, 1e-12);
    EXPECT_NEAR(semivariogram(kReferenceCorrelation, 1.0, {0, 0}, {300, 400}), 0.5720, 1e-4);
    EXPECT_NEAR(semivariogram(kReferenceCorrelation, 2.0, {0, 0}, {300, 400}),
                2.0 * semivariogram(kReferenceCorrelation, 1.0, {0, 0}, {300, 400}), 1e-12);
    // Correlation above one would give a negative value; it is clipped.
    EXPECT_DOUBLE_EQ(semivariogram({2.0, 0.0, 0.0, 0.0}, 1.0, {0, 0}, {10, 0}), 0.0);
}

TEST(Weights, SingleSample)
{
    const std::vector<Vec2> pts{{30, 0}};
    const auto sol = solve_weights(pts, {0, 0}, kReferenceCorrelation, 1.0);
    ASSERT_EQ(sol.weights.size(), 1u);
    EXPECT_DOUBLE_EQ(sol.weights[0], 1.0);
    EXPECT_FALSE(sol.fallback);
    EXPECT_NEAR(sol.lagrange,
                semivariogram(kReferenceCorrelation, 1.0, {0, 0}, {30, 0}) - semivariogram(kReferenceCorrelation, 1.0, {0, 0}, {0, 0}),
                1e-12);
    EXPECT_THROW(solve_weights({}, {0, 0}, kReferenceCorrelation, 1.0), InputError);
}

TEST(Weights, MatchOracleAndSumToOne)
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-150, 150);
    for (int trial = 0; trial < 30; ++trial)
    {
        std::vector<Vec2> pts;
        for (int i = 0; i < 3 + trial % 15; ++i)
            pts.push_back({u(rng), u(rng)});
        const Vec2 t{u(rng) / 3, u(rng) / 3};
        const auto sol = solve_weights(pts, t, kReferenceCorrelation, 0.7);
        ASSERT_FALSE(sol.fallback);
        const auto want = oracle_weights(pts, t, 0.7);
        for (std::size_t i = 0; i < pts.size(); ++i)
            EXPECT_NEAR(sol.weights[i], want[i], 1e-8);
        EXPECT_NEAR(std::accumulate(sol.weights.begin(), sol.weights.end(), 0.0), 1.0, 1e-10);
    }
}

TEST(Weights, SymmetricConfigurationGivesEqualWeights)
{
    const std::vector<Vec2> pts{{30, 0}, {-30, 0}, {0, 30}, {0, -30}};
    const auto sol = solve_weights(pts, {0, 0}, kReferenceCorrelation, 1.0);
    for (double w : sol.weights)
        EXPECT_NEAR(w, 0.25, 1e-12);
}

TEST(Weights, ExactAtSample)
{
    const std::vector<Vec2> pts{{30, 0}, {-30, 10}, {0, 60}};
    const auto sol = solve_weights(pts, {-30, 10}, kReferenceCorrelation, 1.0);
    EXPECT_NEAR(sol.weights[0], 0.0, 1e-10);
    EXPECT_NEAR(sol.weights[1], 1.0, 1e-10);
    EXPECT_NEAR(sol.weights[2], 0.0, 1e-10);
}

TEST(Weights, TranslationInvariant)
{
    const std::vector<Vec2> pts{{30, 0}, {-30, 10}, {0, 60}, {45, 45}};
    std::vector<Vec2> moved;
    for (auto p : pts)
        moved.push_back(p + Vec2{1000, -700});
    const auto a = solve_weights(pts, {5, 5}, kReferenceCorrelation, 1.0);
    const auto b = solve_weights(moved, Vec2{5, 5} + Vec2{1000, -700}, kReferenceCorrelation, 1.0);
    for (std::size_t i = 0; i < pts.size(); ++i)
        EXPECT_NEAR(a.weights[i], b.weights[i], 1e-9);
}

TEST(Weights, SingularSystemFallsBackToNearest)
{
    const std::vector<Vec2> pts{{30, 0}, {10, 0}, {50, 0}};
    const auto sol = solve_weights(pts, {0, 0}, kReferenceCorrelation, 0.0);
    EXPECT_TRUE(sol.fallback);
    EXPECT_EQ(sol.weights, (std::vector<double>{0, 1, 0}));
}

TEST(Neighbors, NearestFirstWithinRadius)
{
    const auto f = field_of(11, 11, 1, [](std::size_t, int c) -> std::optional<double> {
        if (c == 61)
            return std::nullopt;
        return 1.0;
    });
    const Vec2 t = f.grid.position(60); // (150, 150)
    const auto n = select_neighbors(f, t, 0, {5, 150}, 60);
    // Distance 30: cells 49, 59, 71 (61 is Z); then 45 degrees at 42.4 m: 48, 50, ...
    ASSERT_EQ(n.size(), 5u);
    EXPECT_EQ(n[0], 49);
    EXPECT_EQ(n[1], 59);
    EXPECT_EQ(n[2], 71);
    EXPECT_EQ(n[3], 48);
    EXPECT_EQ(n[4], 50);
    const auto all = select_neighbors(f, t, 0, {500, 150});
    for (int c : all)
        EXPECT_LE(distance(f.grid.position(c), t), 150.0 + 1e-9);
    EXPECT_EQ(all.front(), 60);
    EXPECT_EQ(all.size(), 80u); // 81 lattice points within 150 m, minus the Z cell
}

TEST(Krige, ConstantFieldIsReproduced)
{
    const auto f = field_of(10, 10, 4, [](std::size_t, int) -> std::optional<double> { return 3.0; });
    for (int c : {0, 13, 55, 99})
    {
        const auto e = krige_rank(f, f.grid.position(c), 2, {}, kReferenceCorrelation, c);
        ASSERT_TRUE(e);
        EXPECT_NEAR(e->value, 3.0, 1e-12);
    }
}

TEST(Krige, NoSamplesInRange)
{
    const auto f = field_of(10, 10, 2, [](std::size_t, int c) -> std::optional<double> {
        if (c == 0)
            return 2.0;
        return std::nullopt;
    });
    EXPECT_FALSE(krige_rank(f, f.grid.position(99), 0, {}, kReferenceCorrelation));
    const auto near = krige_rank(f, f.grid.position(1), 0, {}, kReferenceCorrelation);
    ASSERT_TRUE(near);
    EXPECT_EQ(near->samples, 1);
    EXPECT_DOUBLE_EQ(near->value, 2.0);
}

TEST(Krige, ConfigValidation)
{
    EXPECT_THROW(validated(KrigingConfig{0, 150}), InputError);
    EXPECT_THROW(validated(KrigingConfig{20, 0}), InputError);
    EXPECT_NO_THROW(validated(KrigingConfig{}));
}

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

#include "uavrank/correlation.hpp"
#include "uavrank/error.hpp"
#include "uavrank/synth.hpp"

using namespace uavrank;

namespace
{
    // 3x2 grid at 30 m, nine altitudes and three thresholds, ranks filled from f(a, k, cell).
    template <class F>
    RankGrid make_grid(F f)
    {
        RankGrid rg;
        rg.grid = {3, 2, 30.0, {0, 0}};
        rg.altitudes = {30, 40, 50, 60, 70, 80, 90, 100, 110};
        rg.thresholds = kDefaultThresholds;
        rg.serving.assign(6, 1);
        rg.ranks.resize(rg.altitudes.size() * 3 * 6);
        for (std::size_t a = 0; a < rg.altitudes.size(); ++a)
            for (std::size_t k = 0; k < 3; ++k)
                for (int c = 0; c < 6; ++c)
                    rg.at(a, k, c) = f(a, k, c);
        return rg;
    }

    std::vector<CorrelationBin> bins_from(const BiExponential &m, int n, double step)
    {
        std::vector<CorrelationBin> bins;
        for (int i = 0; i < n; ++i)
            bins.push_back({i * step, m(i * step), 10});
        return bins;
    }

    std::vector<Vec2> positions_of(const RankGrid &rg, const std::vector<RankVector> &v)
    {
        std::vector<Vec2> p;
        for (const auto &x : v)
            p.push_back(rg.grid.position(x.index));
        return p;
    }
} // namespace

TEST(RankVectors, StackedByThresholdThenAltitude)
{
    const auto rg = make_grid([](std::size_t a, std::size_t k, int c) -> std::optional<int> {
        return static_cast<int>(100 * k + 10 * a + static_cast<std::size_t>(c));
    });
    const auto v = build_rank_vectors(rg);
    ASSERT_EQ(v.size(), 6u);
    ASSERT_EQ(v[2].values.size(), 27u);
    EXPECT_EQ(v[2].index, 2);
    EXPECT_EQ(v[2].values[0], 2);
    EXPECT_EQ(v[2].values[1], 12);
    EXPECT_EQ(v[2].values[9], 102);
    EXPECT_EQ(v[2].values[26], 282);
}

TEST(RankVectors, ZPolicies)
{
    const auto rg = make_grid([](std::size_t a, std::size_t, int c) -> std::optional<int> {
        if (c == 4 && a == 8)
            return std::nullopt;
        return 1 + static_cast<int>(a) % 3;
    });
    const auto excluded = build_rank_vectors(rg, ZPolicy::exclude);
    EXPECT_EQ(excluded.size(), 5u);
    for (const auto &v : excluded)
        EXPECT_NE(v.index, 4);
    const auto zero = build_rank_vectors(rg, ZPolicy::rank0);
    ASSERT_EQ(zero.size(), 6u);
    EXPECT_EQ(zero[4].values[8], 0.0);
}

TEST(Pearson, Examples)
{
    const std::vector<double> a{1, 2, 3, 4}, b{2, 4, 6, 8}, c{4, 3, 2, 1}, k{5, 5, 5, 5};
    EXPECT_NEAR(*pearson(a, b), 1.0, 1e-12);
    EXPECT_NEAR(*pearson(a, c), -1.0, 1e-12);
    EXPECT_FALSE(pearson(a, k));
    EXPECT_FALSE(pearson(a, std::vector<double>{1, 2, 3}));
    const std::vector<double> x{1, 2, 3, 4, 5}, y{2, 1, 4, 3, 5};
    EXPECT_NEAR(*pearson(x, y), 0.8, 1e-12);
    EXPECT_NEAR(*pearson(x, y), *pearson(y, x), 1e-15);
}

TEST(Binning, NearestMultipleOfSpacing)
{
    const std::vector<RankVector> v{{0, {1, 2, 3}}, {1, {1, 2, 4}}, {2, {3, 2, 1}}};
    const std::vector<Vec2> p{{0, 0}, {30, 0}, {44, 0}};
    const auto bins = bin_correlations(v, p, 30.0, 60.0);
    ASSERT_EQ(bins.size(), 2u);
    // Self-pairs plus the 14 m pair land in bin 0; the 30 m and 44 m pairs in bin 30.
    const double r01 = *pearson(v[0].values, v[1].values);
    const double r12 = *pearson(v[1].values, v[2].values);
    EXPECT_DOUBLE_EQ(bins[0].distance_m, 0.0);
    EXPECT_EQ(bins[0].pair_count, 4u);
    EXPECT_NEAR(bins[0].mean_correlation, (3.0 + r12) / 4.0, 1e-12);
    EXPECT_DOUBLE_EQ(bins[1].distance_m, 30.0);
    EXPECT_EQ(bins[1].pair_count, 2u);
    EXPECT_NEAR(bins[1].mean_correlation, (r01 - 1.0) / 2.0, 1e-12);
}

TEST(Binning, SymmetricUnderReordering)
{
    const std::vector<RankVector> v{{0, {1, 2, 3, 1}}, {1, {1, 2, 4, 2}}, {2, {3, 2, 1, 2}}, {3, {2, 2, 1, 3}}};
    const std::vector<Vec2> p{{0, 0}, {30, 0}, {0, 30}, {30, 30}};
    const std::vector<RankVector> rv{v[3], v[1], v[2], v[0]};
    const std::vector<Vec2> rp{p[3], p[1], p[2], p[0]};
    const auto a = bin_correlations(v, p, 30.0), b = bin_correlations(rv, rp, 30.0);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        EXPECT_EQ(a[i].pair_count, b[i].pair_count);
        EXPECT_NEAR(a[i].mean_correlation, b[i].mean_correlation, 1e-12);
    }
}

TEST(Binning, DiagonalAboveCapIsDropped)
{
    const std::vector<RankVector> v{{0, {1, 2, 3}}, {1, {1, 3, 2}}};
    const std::vector<Vec2> p{{0, 0}, {360, 360}}; // 509 m, bins to 510
    const auto bins = bin_correlations(v, p, 30.0, 500.0);
    ASSERT_EQ(bins.size(), 1u);
    EXPECT_DOUBLE_EQ(bins[0].distance_m, 0.0);
}

TEST(Binning, SelfCorrelationIsOne)
{
    const auto rg = make_grid([](std::size_t a, std::size_t k, int c) -> std::optional<int> {
        return 1 + static_cast<int>((a * 7 + k * 3 + static_cast<std::size_t>(c) * 5) % 4);
    });
    const auto v = build_rank_vectors(rg);
    const auto bins = bin_correlations(v, positions_of(rg, v), rg.grid.spacing);
    ASSERT_FALSE(bins.empty());
    EXPECT_DOUBLE_EQ(bins[0].distance_m, 0.0);
    EXPECT_NEAR(bins[0].mean_correlation, 1.0, 1e-12);
}

TEST(Fit, RecoversReferenceModel)
{
    const auto bins = bins_from(kReferenceCorrelation, 17, 30.0);
    const auto fit = fit_biexponential(bins);
    EXPECT_LT(fit.rmse, 1e-8);
    for (const auto &b : bins)
        EXPECT_NEAR(fit.model(b.distance_m), b.mean_correlation, 1e-7);
    EXPECT_LE(fit.model.c2, fit.model.c4);
}

TEST(Fit, SingleExponentialIsFitted)
{
    const BiExponential one{1.0, -0.01, 0.0, 0.0};
    const auto bins = bins_from(one, 17, 30.0);
    const auto fit = fit_biexponential(bins);
    EXPECT_LT(fit.rmse, 1e-6);
    for (double d = 0; d <= 480; d += 15)
        EXPECT_NEAR(fit.model(d), one(d), 1e-5);
}

TEST(Fit, NeedsFourBins)
{
    const auto bins = bins_from(kReferenceCorrelation, 3, 30.0);
    EXPECT_THROW(fit_biexponential(bins), InputError);
}

TEST(Fit, ModelEvaluation)
{
    EXPECT_NEAR(kReferenceCorrelation(0.0), 0.9989, 1e-12);
    EXPECT_NEAR(kReferenceCorrelation(500.0), 0.2932 * std::exp(-25.4) + 0.7057 * std::exp(-0.5), 1e-15);
}

TEST(Fit, ConstantGridHasNoValidPairs)
{
    const auto rg = make_grid([](std::size_t, std::size_t, int) -> std::optional<int> { return 2; });
    try
    {
        fit_correlation_model(rg);
        FAIL() << "expected InputError";
    }
    catch (const InputError &e)
    {
        EXPECT_NE(std::string(e.what()).find("no valid correlation pairs"), std::string::npos);
    }
}

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
#include <random>

#include "../support/oracles.hpp"
#include "uavrank/channel.hpp"
#include "uavrank/error.hpp"

using namespace uavrank;

namespace
{
    RayPath path_towards(Vec3 aod, Vec3 aoa, std::complex<double> gain)
    {
        RayPath p;
        p.aod = direction_angles(normalized(aod));
        p.aoa = direction_angles(normalized(aoa));
        p.gain = gain;
        return p;
    }

    ChannelMatrix matrix(Eigen::MatrixXcd m)
    {
        return {std::move(m), 3.4e9};
    }
} // namespace

TEST(Steering, BroadsideIsAllOnes)
{
    const ArrayConfig a{4, 0.5, {0, 1, 0}};
    const auto v = steering_vector(a, {1, 0, 0}, 0.1);
    for (int k = 0; k < 4; ++k)
        EXPECT_NEAR(std::abs(v[k] - 1.0), 0.0, 1e-12);
}

TEST(Steering, EndfireAlternatesAtHalfWavelength)
{
    const ArrayConfig a{4, 0.5, {0, 1, 0}};
    const auto v = steering_vector(a, {0, 1, 0}, 0.1);
    for (int k = 0; k < 4; ++k)
        EXPECT_NEAR(std::abs(v[k] - (k % 2 == 0 ? 1.0 : -1.0)), 0.0, 1e-12);
}

TEST(Channel, EmptyPathsAreOutOfCoverage)
{
    const ArrayConfig a{4, 0.5, {0, 1, 0}};
    EXPECT_FALSE(synthesize_channel({}, a, a, 0.1).has_value());
    EXPECT_FALSE(rss({}, a, a, 10.0, 0.1, RssMode::siso).has_value());
}

TEST(Channel, SinglePathHasRankOne)
{
    const ArrayConfig a{4, 0.5, {0, 1, 0}};
    const std::vector<RayPath> paths{path_towards({1, 0.3, 0.2}, {-1, 0.5, -0.2}, {1e-4, 2e-5})};
    const auto h = synthesize_channel(paths, a, a, 0.0882);
    ASSERT_TRUE(h);
    EXPECT_EQ(h->rows(), 4);
    EXPECT_EQ(h->cols(), 4);
    for (double K : kDefaultThresholds)
        EXPECT_EQ(channel_rank(*h, K), 1);
    const auto s = singular_values(*h);
    EXPECT_NEAR(s[0], 4.0 * std::abs(paths[0].gain), 1e-15);
}

TEST(Channel, OrthogonalEqualPathsHaveEqualSingularValues)
{
    const ArrayConfig a{2, 0.5, {0, 1, 0}};
    // Broadside and endfire are orthogonal for two half-wavelength elements.
    const std::vector<RayPath> paths{path_towards({1, 0, 0}, {1, 0, 0}, 1.0),
                                     path_towards({0, 1, 0}, {0, 1, 0}, 1.0)};
    const auto s = singular_values(*synthesize_channel(paths, a, a, 0.1));
    EXPECT_NEAR(s[0], 2.0, 1e-12);
    EXPECT_NEAR(s[1], 2.0, 1e-12);
}

TEST(Channel, SingularValuesMatchOracle)
{
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial)
    {
        const int r = 1 + trial % 5, c = 1 + (trial * 3) % 6;
        Eigen::MatrixXcd m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                m(i, j) = {n(rng), n(rng)};
        const auto got = singular_values(matrix(m));
        const auto want = oracle::singular_values(m);
        ASSERT_EQ(got.size(), std::size_t(std::min(r, c)));
        for (std::size_t i = 0; i < got.size(); ++i)
            EXPECT_NEAR(got[i], want[i], 1e-9 * want[0]);
        for (std::size_t i = 1; i < got.size(); ++i)
            EXPECT_GE(got[i - 1], got[i]);
    }
}

TEST(Rank, ThresholdsAreStrict)
{
    const std::vector<double> sigma{1.0, 0.5, 0.01, 0.001};
    EXPECT_EQ(rank_from_singular_values(sigma, 10), 2);
    EXPECT_EQ(rank_from_singular_values(sigma, 100), 2); // 0.01 is not strictly above 1/100
    EXPECT_EQ(rank_from_singular_values(sigma, 1000), 3);
    EXPECT_EQ(rank_from_singular_values(sigma, 1e6), 4);
}

TEST(Rank, MonotoneInThreshold)
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial)
    {
        std::vector<double> s{1.0, u(rng), u(rng) * 1e-2, u(rng) * 1e-4};
        std::sort(s.rbegin(), s.rend());
        int prev = 0;
        for (double K : {2.0, 10.0, 100.0, 1000.0, 1e5})
        {
            const int r = rank_from_singular_values(s, K);
            EXPECT_GE(r, prev);
            EXPECT_EQ(r, oracle::rank(s, K));
            prev = r;
        }
    }
}

TEST(Rank, Errors)
{
    EXPECT_THROW(channel_rank(matrix(Eigen::MatrixXcd::Zero(4, 4)), 10), NumericalError);
    EXPECT_THROW(channel_rank(matrix(Eigen::MatrixXcd::Identity(2, 2)), 1.0), InputError);
    EXPECT_THROW(channel_rank(matrix(Eigen::MatrixXcd::Identity(2, 2)), 0.5), InputError);
}

TEST(Rank, AnalyzeReportsEveryThreshold)
{
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
    m(0, 0) = 1.0;
    m(1, 1) = 0.05;
    m(2, 2) = 0.0005;
    const auto r = analyze_rank(matrix(m));
    EXPECT_EQ(r.ranks.at(10.0), 1);
    EXPECT_EQ(r.ranks.at(100.0), 2);
    EXPECT_EQ(r.ranks.at(1000.0), 2);
    EXPECT_NEAR(r.singular_values[2], 0.0005, 1e-15);
}

TEST(Rss, SisoIsCoherentSum)
{
    const ArrayConfig one{1, 0.5, {0, 1, 0}};
    const std::vector<RayPath> paths{path_towards({1, 0, 0}, {-1, 0, 0}, {1e-4, 0}),
                                     path_towards({1, 0, -1}, {-1, 0, -1}, {0, 1e-4})};
    const double expect = 10.0 * std::log10(10.0 * 2e-8 * 1e3);
    EXPECT_NEAR(*rss(paths, one, one, 10.0, 0.1, RssMode::siso), expect, 1e-9);
    for (auto beam : {MimoBeam::uniform, MimoBeam::sum_power, MimoBeam::mrt})
        EXPECT_NEAR(*rss(paths, one, one, 10.0, 0.1, RssMode::mimo, beam), expect, 1e-9);
}

TEST(Rss, PerfectNullIsMinusInfinity)
{
    const ArrayConfig one{1, 0.5, {0, 1, 0}};
    const std::vector<RayPath> paths{path_towards({1, 0, 0}, {-1, 0, 0}, 1e-4),
                                     path_towards({1, 0, 0}, {-1, 0, 0}, -1e-4)};
    const auto v = rss(paths, one, one, 10.0, 0.1, RssMode::siso);
    ASSERT_TRUE(v);
    EXPECT_TRUE(std::isinf(*v) && *v < 0);
}

TEST(Rss, MrtDominatesUniformBeam)
{
    const ArrayConfig tx{4, 0.5, {0, 1, 0}}, rx{1, 0.5, {0, 1, 0}};
    const std::vector<RayPath> paths{path_towards({1, 0.7, 0}, {-1, 0, 0}, 1e-4),
                                     path_towards({1, -0.2, 0.3}, {-1, 0, 0}, {0, 5e-5})};
    const double mrt = *rss(paths, tx, rx, 10.0, 0.1, RssMode::mimo, MimoBeam::mrt);
    const double uni = *rss(paths, tx, rx, 10.0, 0.1, RssMode::mimo, MimoBeam::uniform);
    EXPECT_GE(mrt + 1e-12, uni);
}

TEST(Rss, WattsToDbm)
{
    EXPECT_DOUBLE_EQ(watts_to_dbm(1.0), 30.0);
    EXPECT_NEAR(watts_to_dbm(10.0), 40.0, 1e-12);
}

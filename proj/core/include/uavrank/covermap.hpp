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

#ifndef UAVRANK_COVERMAP_HPP
#define UAVRANK_COVERMAP_HPP

#include <optional>
#include <span>
#include <vector>

#include "uavrank/channel.hpp"
#include "uavrank/scene.hpp"

namespace uavrank
{
    inline constexpr int kJointTower = -1;

    // RSS per grid cell in dBm; nullopt marks an out-of-coverage (Z) cell.
    struct CoverageGrid
    {
        int tower_id = kJointTower;
        double altitude = 0.0;
        RssMode mode = RssMode::siso;
        GridSpec grid;
        std::vector<std::optional<double>> values;
        std::vector<int> serving; // tower id per cell

        double blockage_fraction() const;
    };

    struct CoverageOptions
    {
        RssMode mode = RssMode::siso;
        MimoBeam beam = MimoBeam::uniform;
        int max_reflections = 2;
    };

    // MIMO coverage uses the tower's array against a single receive element.
    CoverageGrid compute_coverage(const Scene &s, const Tower &tower, double altitude,
                                  const CoverageOptions &opt = {});

    // Id of the horizontally nearest tower; ties go to the lowest id.
    int nearest_tower(const Scene &s, Vec2 p);

    // Each cell takes the value of its nearest tower's grid. Throws InputError when the grids
    // disagree on altitude, mode or dimensions, or a tower has no grid.
    CoverageGrid joint_coverage(const Scene &s, std::span<const CoverageGrid> grids);

    struct CdfPoint
    {
        double value_dbm;
        double fraction;
    };

    struct RssCdf
    {
        std::vector<CdfPoint> points; // one step per distinct value, fractions over non-Z cells
        double blockage_fraction = 0.0;
    };

    RssCdf rss_cdf(const CoverageGrid &g);

    // Rank per (altitude, threshold, cell); nullopt marks Z.
    struct RankGrid
    {
        GridSpec grid;
        std::vector<double> altitudes;
        std::vector<double> thresholds;
        std::vector<int> serving;
        std::vector<std::optional<int>> ranks;

        std::size_t offset(std::size_t altitude, std::size_t threshold) const
        {
            return (altitude * thresholds.size() + threshold) * static_cast<std::size_t>(grid.size());
        }
        const std::optional<int> &at(std::size_t altitude, std::size_t threshold, int cell) const
        {
            return ranks[offset(altitude, threshold) + static_cast<std::size_t>(cell)];
        }
        std::optional<int> &at(std::size_t altitude, std::size_t threshold, int cell)
        {
            return ranks[offset(altitude, threshold) + static_cast<std::size_t>(cell)];
        }
        double blockage_fraction(std::size_t altitude) const;
    };

    RankGrid compute_rank_grid(const Scene &s, std::span<const double> altitudes,
                               std::span<const double> thresholds = kDefaultThresholds, int max_reflections = 2);

} // namespace uavrank

#endif

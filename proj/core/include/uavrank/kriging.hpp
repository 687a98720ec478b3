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

#ifndef UAVRANK_KRIGING_HPP
#define UAVRANK_KRIGING_HPP

#include <optional>
#include <span>
#include <vector>

#include "uavrank/correlation.hpp"
#include "uavrank/scene.hpp"

namespace uavrank
{
    struct KrigingConfig
    {
        int m = 20;       // samples per target
        double r0 = 150.0; // sampling radius, m
    };

    KrigingConfig validated(KrigingConfig cfg);

    // Ranks for a single threshold over a grid and a stack of altitudes; nullopt marks Z.
    struct RankField
    {
        GridSpec grid;
        std::vector<double> altitudes;
        std::vector<std::optional<double>> values; // [altitude * grid.size() + cell]

        const std::optional<double> &at(std::size_t altitude, int cell) const
        {
            return values[altitude * static_cast<std::size_t>(grid.size()) + static_cast<std::size_t>(cell)];
        }
        std::optional<double> &at(std::size_t altitude, int cell)
        {
            return values[altitude * static_cast<std::size_t>(grid.size()) + static_cast<std::size_t>(cell)];
        }

        static RankField from_grid(const RankGrid &rg, std::size_t threshold);
    };

    // Unbiased sample variance. Returns 0 for fewer than two values.
    double rank_variance(std::span<const double> ranks);

    // max(0, v2 * (1 - phi(|pi - pj|)))
    double semivariogram(const BiExponential &model, double v2, Vec2 pi, Vec2 pj);

    struct KrigingSolution
    {
        std::vector<double> weights;
        double lagrange = 0.0;
        bool fallback = false; // singular system, nearest sample used instead
    };

    // Solves [[Gamma, 1], [1^T, 0]] [l; L'] = [gamma_0; 1]. A singular system (v2 == 0, repeated
    // points) falls back to weight 1 on the nearest sample. Throws InputError with no samples.
    KrigingSolution solve_weights(std::span<const Vec2> samples, Vec2 target, const BiExponential &model, double v2);

    // The M nearest non-Z cells at `altitude` within r0 of `target`, nearest first; equal
    // distances go to the lower grid index. `withheld` is never selected.
    std::vector<int> select_neighbors(const RankField &field, Vec2 target, std::size_t altitude,
                                      const KrigingConfig &cfg, std::optional<int> withheld = std::nullopt);

    struct KrigingEstimate
    {
        double value = 0.0;
        int samples = 0;
        bool fallback = false;
    };

    // Ordinary Kriging at `target`. v2 is the mean altitude-stack variance of the selected
    // neighbors. nullopt when no sample lies within r0.
    std::optional<KrigingEstimate> krige_rank(const RankField &field, Vec2 target, std::size_t altitude,
                                              const KrigingConfig &cfg, const BiExponential &model,
                                              std::optional<int> withheld = std::nullopt);

} // namespace uavrank

#endif

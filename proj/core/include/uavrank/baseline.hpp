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

#ifndef UAVRANK_BASELINE_HPP
#define UAVRANK_BASELINE_HPP

#include <optional>
#include <vector>

#include "uavrank/kriging.hpp"

namespace uavrank
{
    // Samples keyed by grid location index. Indices strictly increasing.
    struct IndexedSamples
    {
        std::vector<double> indices;
        std::vector<double> values;
    };

    // Natural cubic spline through the samples. Outside the index range the boundary cubic is
    // extended. Throws InputError for fewer than 2 samples or unsorted indices.
    double spline_interp(const IndexedSamples &s, double x0);

    // Modified Akima (makima) piecewise cubic Hermite interpolation, same extrapolation rule.
    double makima_interp(const IndexedSamples &s, double x0);

    enum class BaselineMethod
    {
        spline,
        makima
    };

    // Interpolates the rank at `cell` in 1D index space from the same neighbor set Kriging uses.
    // nullopt with fewer than 2 eligible samples.
    std::optional<double> baseline_rank(const RankField &field, int cell, std::size_t altitude,
                                        const KrigingConfig &cfg, BaselineMethod method,
                                        std::optional<int> withheld = std::nullopt);

} // namespace uavrank

#endif

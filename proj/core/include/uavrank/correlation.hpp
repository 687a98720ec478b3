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

#ifndef UAVRANK_CORRELATION_HPP
#define UAVRANK_CORRELATION_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "uavrank/covermap.hpp"
#include "uavrank/error.hpp"

namespace uavrank
{
    // How out-of-coverage entries enter the rank vectors: drop the whole cell, or count Z as rank 0.
    enum class ZPolicy
    {
        exclude,
        rank0
    };

    // Ranks of one grid location stacked as [K_1: h_1..h_Nh, K_2: h_1..h_Nh, ...].
    struct RankVector
    {
        int index = 0;
        std::vector<double> values;
    };

    std::vector<RankVector> build_rank_vectors(const RankGrid &rg, ZPolicy policy = ZPolicy::exclude);

    // Sample Pearson correlation; nullopt when either vector is constant or lengths differ.
    std::optional<double> pearson(std::span<const double> u, std::span<const double> v);

    struct CorrelationBin
    {
        double distance_m = 0.0;
        double mean_correlation = 0.0;
        std::size_t pair_count = 0;
    };

    inline constexpr double kDefaultMaxDistance = 500.0;

    // Unordered pairs (self-pairs included) binned to the nearest multiple of d_rx. A pair counts when
    // both its distance and its bin distance are <= max_distance. `positions[i]` belongs to
    // `vectors[i]`. Empty bins are omitted.
    std::vector<CorrelationBin> bin_correlations(std::span<const RankVector> vectors, std::span<const Vec2> positions,
                                                 double d_rx, double max_distance = kDefaultMaxDistance);

    // phi(d) = c1 exp(c2 d) + c3 exp(c4 d)
    struct BiExponential
    {
        double c1 = 0.0;
        double c2 = 0.0;
        double c3 = 0.0;
        double c4 = 0.0;

        double operator()(double d) const;
    };

    struct FitResult
    {
        BiExponential model;
        double rmse = 0.0;
        int iterations = 0;
    };

    class FitError : public NumericalError
    {
    public:
        FitError(const std::string &what, FitResult best) : NumericalError(what), best_(best) {}
        const FitResult &best() const { return best_; }

    private:
        FitResult best_;
    };

    // Levenberg-Marquardt least squares over the bins. The returned components are ordered so
    // that c2 <= c4 (fast decay first). Throws InputError for fewer than 4 bins and FitError when
    // the iteration budget runs out.
    FitResult fit_biexponential(std::span<const CorrelationBin> bins);

    struct CorrelationModel
    {
        std::vector<CorrelationBin> bins;
        BiExponential coefficients;
        double rmse = 0.0;
        double max_distance_m = kDefaultMaxDistance;

        double evaluate(double d) const { return coefficients(d); }
    };

    // Rank vectors, binning and fit in one go. Throws InputError when no valid pairs exist.
    CorrelationModel fit_correlation_model(const RankGrid &rg, ZPolicy policy = ZPolicy::exclude,
                                           double max_distance = kDefaultMaxDistance);

} // namespace uavrank

#endif

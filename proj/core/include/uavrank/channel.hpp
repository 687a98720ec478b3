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

#ifndef UAVRANK_CHANNEL_HPP
#define UAVRANK_CHANNEL_HPP

#include <map>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "uavrank/array.hpp"
#include "uavrank/raytrace.hpp"

namespace uavrank
{
    // N_r x N_t narrowband channel matrix.
    struct ChannelMatrix
    {
        Eigen::MatrixXcd entries;
        double frequency_hz = 0.0;

        int rows() const { return static_cast<int>(entries.rows()); }
        int cols() const { return static_cast<int>(entries.cols()); }
    };

    inline const std::vector<double> kDefaultThresholds{10.0, 100.0, 1000.0};

    struct RankResult
    {
        std::vector<double> singular_values; // descending
        std::map<double, int> ranks;         // K -> rank
    };

    // Element k: exp(j 2 pi / lambda * k * spacing * lambda * (axis . direction)).
    Eigen::VectorXcd steering_vector(const ArrayConfig &a, Vec3 direction, double lambda);

    // H = sum_p gain_p * a_rx(aoa_p) * a_tx(aod_p)^H. Returns nullopt for an empty path list
    // (out of coverage), which is kept distinct from a zero matrix.
    std::optional<ChannelMatrix> synthesize_channel(std::span<const RayPath> paths, const ArrayConfig &tx,
                                                    const ArrayConfig &rx, double lambda);

    std::vector<double> singular_values(const ChannelMatrix &h);

    // Number of singular values strictly above sigma_1 / K. Throws NumericalError for a zero
    // matrix and InputError for K <= 1.
    int channel_rank(const ChannelMatrix &h, double K);
    int rank_from_singular_values(std::span<const double> sigma, double K);

    RankResult analyze_rank(const ChannelMatrix &h, std::span<const double> thresholds = kDefaultThresholds);

    enum class RssMode
    {
        siso,
        mimo
    };

    // MIMO power metric. uniform: fixed co-phased transmit beam w = 1/sqrt(N_t), power averaged
    // over receive elements. sum_power: mean |h_ij|^2. mrt: sigma_1^2 / N_r.
    enum class MimoBeam
    {
        uniform,
        sum_power,
        mrt
    };

    // Received power in dBm; nullopt when there are no paths. A perfect null gives -inf.
    std::optional<double> rss(std::span<const RayPath> paths, const ArrayConfig &tx, const ArrayConfig &rx,
                              double tx_power_w, double lambda, RssMode mode, MimoBeam beam = MimoBeam::uniform);

    double watts_to_dbm(double watts);

} // namespace uavrank

#endif

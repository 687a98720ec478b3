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

#include "uavrank/channel.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "uavrank/error.hpp"

namespace uavrank
{
    Eigen::VectorXcd steering_vector(const ArrayConfig &a, Vec3 direction, double lambda)
    {
        const double spacing = a.spacing_wavelengths * lambda;
        const double projected = dot(a.axis, direction);
        Eigen::VectorXcd v(a.elements);
        for (int k = 0; k < a.elements; ++k)
            v(k) = std::polar(1.0, 2.0 * kPi / lambda * k * spacing * projected);
        return v;
    }

    std::optional<ChannelMatrix> synthesize_channel(std::span<const RayPath> paths, const ArrayConfig &tx,
                                                    const ArrayConfig &rx, double lambda)
    {
        if (paths.empty())
            return std::nullopt;
        ChannelMatrix h;
        h.frequency_hz = kSpeedOfLight / lambda;
        h.entries = Eigen::MatrixXcd::Zero(rx.elements, tx.elements);
        for (const auto &p : paths)
        {
            const auto a_rx = steering_vector(rx, unit_from_angles(p.aoa), lambda);
            const auto a_tx = steering_vector(tx, unit_from_angles(p.aod), lambda);
            h.entries.noalias() += p.gain * (a_rx * a_tx.adjoint());
        }
        return h;
    }

    std::vector<double> singular_values(const ChannelMatrix &h)
    {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h.entries);
        const auto &s = svd.singularValues();
        return {s.data(), s.data() + s.size()};
    }

    int rank_from_singular_values(std::span<const double> sigma, double K)
    {
        if (!(K > 1.0))
            throw InputError(fmt::format("threshold ratio K must be > 1 (got {})", K));
        if (sigma.empty() || !(sigma[0] > 0.0))
            throw NumericalError("channel rank undefined for an all-zero matrix");
        const double cutoff = sigma[0] / K;
        int rank = 0;
        for (double s : sigma)
            if (s > cutoff)
                ++rank;
        return rank;
    }

    int channel_rank(const ChannelMatrix &h, double K)
    {
        return rank_from_singular_values(singular_values(h), K);
    }

    RankResult analyze_rank(const ChannelMatrix &h, std::span<const double> thresholds)
    {
        RankResult r;
        r.singular_values = singular_values(h);
        for (double K : thresholds)
            r.ranks[K] = rank_from_singular_values(r.singular_values, K);
        return r;
    }

    double watts_to_dbm(double watts)
    {
        return 10.0 * std::log10(watts * 1e3);
    }

    std::optional<double> rss(std::span<const RayPath> paths, const ArrayConfig &tx, const ArrayConfig &rx,
                              double tx_power_w, double lambda, RssMode mode, MimoBeam beam)
    {
        if (paths.empty())
            return std::nullopt;
        double power_gain = 0.0;
        if (mode == RssMode::siso)
        {
            std::complex<double> sum{0.0, 0.0};
            for (const auto &p : paths)
                sum += p.gain;
            power_gain = std::norm(sum);
        }
        else
        {
            const auto h = synthesize_channel(paths, tx, rx, lambda);
            const auto &m = h->entries;
            const double n_r = static_cast<double>(m.rows());
            switch (beam)
            {
            case MimoBeam::uniform:
            {
                const Eigen::VectorXcd w = Eigen::VectorXcd::Constant(m.cols(), 1.0 / std::sqrt(double(m.cols())));
                power_gain = (m * w).squaredNorm() / n_r;
                break;
            }
            case MimoBeam::sum_power:
                power_gain = m.squaredNorm() / static_cast<double>(m.size());
                break;
            case MimoBeam::mrt:
            {
                const auto sigma = singular_values(*h);
                power_gain = sigma.front() * sigma.front() / n_r;
                break;
            }
            }
        }
        if (power_gain <= 0.0)
            return -std::numeric_limits<double>::infinity();
        return watts_to_dbm(tx_power_w) + 10.0 * std::log10(power_gain);
    }

} // namespace uavrank

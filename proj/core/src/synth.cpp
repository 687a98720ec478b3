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

#include "uavrank/synth.hpp"

#include <cmath>
#include <random>

#include <fmt/format.h>

namespace uavrank
{
    SyntheticFieldGenerator::SyntheticFieldGenerator(const GridSpec &grid, const BiExponential &model) : grid_(grid)
    {
        const int n = grid.size();
        if (n < 1)
            throw InputError("synthetic field: empty grid");
        Eigen::MatrixXd cov(n, n);
        for (int i = 0; i < n; ++i)
        {
            cov(i, i) = 1.0;
            for (int j = 0; j < i; ++j)
                cov(i, j) = cov(j, i) = model(distance(grid.position(i), grid.position(j)));
        }
        Eigen::LLT<Eigen::MatrixXd> llt(cov);
        if (llt.info() != Eigen::Success)
            throw NumericalError("synthetic field: correlation model is not positive definite on this grid");
        factor_ = llt.matrixL();
    }

    RankGrid SyntheticFieldGenerator::generate(std::uint64_t seed, const SynthOptions &opt) const
    {
        if (opt.altitudes.empty() || opt.thresholds.empty())
            throw InputError("synthetic field: need at least one altitude and one threshold");
        if (!(opt.altitude_coupling >= 0.0 && opt.altitude_coupling <= 1.0))
            throw InputError("synthetic field: altitude_coupling must lie in [0, 1]");

        std::mt19937_64 rng(seed);
        std::normal_distribution<double> normal(0.0, 1.0);
        const int n = grid_.size();
        const auto draw = [&] {
            Eigen::VectorXd z(n);
            for (int i = 0; i < n; ++i)
                z(i) = normal(rng);
            return Eigen::VectorXd(factor_.triangularView<Eigen::Lower>() * z);
        };

        RankGrid rg;
        rg.grid = grid_;
        rg.altitudes = opt.altitudes;
        rg.thresholds = opt.thresholds;
        rg.serving.assign(static_cast<std::size_t>(n), 0);
        rg.ranks.assign(opt.altitudes.size() * opt.thresholds.size() * static_cast<std::size_t>(n), std::nullopt);

        const double a = opt.altitude_coupling;
        const double b = std::sqrt(1.0 - a * a);
        const Eigen::VectorXd shared = draw();
        const std::size_t n_h = opt.altitudes.size();
        for (std::size_t s = 0; s < n_h; ++s)
        {
            const double trend = n_h > 1 ? opt.altitude_trend * static_cast<double>(s) / static_cast<double>(n_h - 1) : 0.0;
            const Eigen::VectorXd latent = (a * shared + b * draw()).array() + trend;
            for (std::size_t k = 0; k < opt.thresholds.size(); ++k)
            {
                const double low = 0.8 - 0.5 * static_cast<double>(k);
                const double high = 2.0 - 0.5 * static_cast<double>(k);
                for (int i = 0; i < n; ++i)
                    rg.at(s, k, i) = 1 + (latent(i) > low ? 1 : 0) + (latent(i) > high ? 1 : 0);
            }
        }
        return rg;
    }

} // namespace uavrank

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

#ifndef UAVRANK_SYNTH_HPP
#define UAVRANK_SYNTH_HPP

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "uavrank/correlation.hpp"

namespace uavrank
{
    inline constexpr BiExponential kReferenceCorrelation{0.2932, -0.0508, 0.7057, -0.001};

    struct SynthOptions
    {
        std::vector<double> altitudes{30, 40, 50, 60, 70, 80, 90, 100, 110};
        std::vector<double> thresholds{10.0, 100.0, 1000.0};
        double altitude_coupling = 0.9; // weight of the latent component shared by all altitudes
        double altitude_trend = 0.5;    // latent mean rise from the lowest to the highest altitude
    };

    /// Seeded rank fields whose latent Gaussian has spatial covariance phi(distance).
    ///
    /// Each altitude mixes a shared and a private latent field, both drawn with the same
    /// covariance; ranks 1..3 follow from two cut points that drop as K grows, so ranks are
    /// monotone in K by construction. The Cholesky factor is computed once per grid.
    class SyntheticFieldGenerator
    {
    public:
        SyntheticFieldGenerator(const GridSpec &grid, const BiExponential &model);

        RankGrid generate(std::uint64_t seed, const SynthOptions &opt = {}) const;
        const GridSpec &grid() const { return grid_; }

    private:
        GridSpec grid_;
        Eigen::MatrixXd factor_; // lower triangular
    };

} // namespace uavrank

#endif

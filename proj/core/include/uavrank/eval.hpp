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

#ifndef UAVRANK_EVAL_HPP
#define UAVRANK_EVAL_HPP

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uavrank/baseline.hpp"
#include "uavrank/correlation.hpp"
#include "uavrank/kriging.hpp"

namespace uavrank
{
    // Mean absolute difference over the pairs where both sides are present. Throws InputError on
    // a length mismatch or when nothing is left after exclusion.
    double mae(std::span<const std::optional<double>> truth, std::span<const std::optional<double>> estimate);
    double mae(std::span<const double> truth, std::span<const double> estimate);

    enum class Method
    {
        kriging,
        spline,
        makima
    };

    std::string_view method_name(Method m);
    Method parse_method(std::string_view name);

    struct LooOptions
    {
        KrigingConfig kriging;
        bool round = false; // round estimates to the nearest integer rank before scoring
    };

    // Leave-one-out prediction of every non-Z cell for one (altitude, threshold) slice. Z cells and
    // cells without eligible neighbors stay nullopt.
    std::vector<std::optional<double>> loo_estimates(const RankField &field, std::size_t altitude, Method method,
                                                     const LooOptions &opt, const BiExponential &model);

    struct MaeEntry
    {
        Method method = Method::kriging;
        double altitude_m = 0.0;
        double K = 0.0;
        double mae = 0.0; // NaN when no cell could be evaluated
        int cells = 0;    // evaluated cells
        int skipped = 0;  // non-Z cells without eligible neighbors
    };

    struct MaeReport
    {
        std::vector<MaeEntry> entries; // method-major, then altitude, then threshold
    };

    MaeReport loo_evaluate(const RankGrid &rg, std::span<const Method> methods, const LooOptions &opt,
                           const BiExponential &model);

    struct TraceSample
    {
        double t = 0.0;
        Vec3 position;
        double value = 0.0; // dBm or rank
    };

    struct Trace
    {
        std::string quantity = "rss_dbm"; // or "rank"
        std::vector<TraceSample> samples;
    };

    // Columns t_s,x_m,y_m,z_m followed by rss_dbm or rank. Times must be non-decreasing.
    Trace parse_trace_csv(std::string_view text);
    Trace load_trace_file(const std::string &path);
    std::string trace_to_csv(const Trace &t);

    inline constexpr double kJoinWindow = 0.05;

    struct Calibration
    {
        double offset_db = 0.0;
        double rmse_db = 0.0; // after applying the offset
        int pairs = 0;
    };

    // Offset c in {-50.0, -49.9, ..., 50.0} minimizing RMSE(measured, simulated + c), measured
    // samples joined to the nearest simulated sample within 50 ms. Ties go to the smaller |c|.
    // Throws InputError when no samples overlap.
    Calibration calibrate_offset(const Trace &measured, const Trace &simulated);

    struct RankHistogram
    {
        std::map<int, double> fractions;
        double z_fraction = 0.0;
    };

    RankHistogram rank_histogram(const RankGrid &rg, std::size_t altitude, std::size_t threshold);

} // namespace uavrank

#endif

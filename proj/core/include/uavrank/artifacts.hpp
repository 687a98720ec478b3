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

#ifndef UAVRANK_ARTIFACTS_HPP
#define UAVRANK_ARTIFACTS_HPP

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uavrank/correlation.hpp"
#include "uavrank/covermap.hpp"
#include "uavrank/eval.hpp"

namespace uavrank
{
    // Text formats shared by the command-line tools. Numbers are written with fixed precision so
    // that identical inputs produce identical bytes. Out-of-coverage cells are written as "Z".

    // `x_m,y_m,value` per cell in grid order.
    std::string grid_csv(const GridSpec &g, std::span<const std::optional<double>> values, int precision = 6);

    struct PgmRange
    {
        double lo_dbm = -120.0;
        double hi_dbm = -30.0;
    };

    // 8-bit binary PGM, north row first. Values map linearly onto 1..255 over the range; Z is 0.
    std::string coverage_pgm(const CoverageGrid &g, PgmRange range = {});

    // `value_dbm,fraction`
    std::string cdf_csv(const RssCdf &cdf);

    // `rank,fraction` with the Z share as the last row.
    std::string histogram_csv(const RankHistogram &h);

    // `distance_m,mean_correlation,pair_count`
    std::string bins_csv(std::span<const CorrelationBin> bins);
    std::vector<CorrelationBin> parse_bins_csv(const std::string &text);

    // {"c1", "c2", "c3", "c4", "rmse", "max_distance_m"}
    std::string model_json(const CorrelationModel &m);
    CorrelationModel parse_model_json(const std::string &text);

    // `method,altitude_m,K,mae,cells`
    std::string mae_csv(const MaeReport &r);

    // Short decimal form used in artifact file names (30, 1000, 2.5).
    std::string number_tag(double v);

    struct NamedText
    {
        std::string name;
        std::string content;
    };

    // rank_grid.json plus rank_h{h}_K{K}.csv per slice and serving.csv.
    std::vector<NamedText> rank_grid_files(const RankGrid &rg);
    void write_rank_grid(const std::filesystem::path &dir, const RankGrid &rg);
    RankGrid read_rank_grid(const std::filesystem::path &dir);

    std::string read_text_file(const std::filesystem::path &p);
    void write_text_file(const std::filesystem::path &p, const std::string &content);

} // namespace uavrank

#endif

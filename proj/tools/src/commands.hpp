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

#ifndef UAVRANK_TOOLS_COMMANDS_HPP
#define UAVRANK_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace uavrank::cli
{
    inline constexpr int kExitOk = 0;
    inline constexpr int kExitInput = 2;
    inline constexpr int kExitNumerical = 3;

    struct RunConfig
    {
        std::string command;
        std::filesystem::path scene;
        std::filesystem::path out = ".";
        std::vector<double> altitudes;
        std::vector<double> thresholds{10.0, 100.0, 1000.0};
        std::string mode = "siso";
        std::string beam = "uniform";
        int m = 20;
        double r0 = 150.0;
        double max_dist = 500.0;
        bool round = false;
        std::string z_policy = "exclude";
        std::uint64_t seed = 1;
        int max_reflections = 2;

        // coverage
        bool joint = false;
        std::optional<int> tower;
        std::vector<double> pgm_range{-120.0, -30.0};

        // fit / interpolate
        std::filesystem::path rank_dir;
        std::filesystem::path model;
        std::string method = "all";
        bool export_estimates = false;

        // calibrate
        std::vector<std::string> measured;
        std::vector<std::string> simulated;

        // synth
        int nx = 36;
        int ny = 71;
        double spacing = 30.0;
        double coupling = 0.9;

        // trace
        std::vector<double> tx;
        std::vector<double> rx;
    };

    // Files are staged in memory and written only after every input has been validated.
    struct Output
    {
        std::filesystem::path name;
        std::string content;
    };

    std::vector<Output> cmd_coverage(const RunConfig &cfg);
    std::vector<Output> cmd_rank(const RunConfig &cfg);
    std::vector<Output> cmd_fit(const RunConfig &cfg);
    std::vector<Output> cmd_interpolate(const RunConfig &cfg);
    std::vector<Output> cmd_calibrate(const RunConfig &cfg);
    std::vector<Output> cmd_synth(const RunConfig &cfg);
    std::vector<Output> cmd_trace(const RunConfig &cfg);

    // Parses argv, runs the command and maps errors to exit codes (2 input, 3 numerical).
    int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace uavrank::cli

#endif

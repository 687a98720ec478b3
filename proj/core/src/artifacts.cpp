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

#include "uavrank/artifacts.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"

namespace uavrank
{
    using nlohmann::json;

    namespace
    {
        std::vector<std::string> split_lines(const std::string &text)
        {
            std::vector<std::string> lines;
            std::istringstream in(text);
            std::string line;
            while (std::getline(in, line))
            {
                if (!line.empty() && line.back() == '\r')
                    line.pop_back();
                if (!line.empty())
                    lines.push_back(line);
            }
            return lines;
        }

        std::vector<std::string> split_fields(const std::string &line)
        {
            std::vector<std::string> out;
            std::string field;
            std::istringstream in(line);
            while (std::getline(in, field, ','))
                out.push_back(field);
            if (!line.empty() && line.back() == ',')
                out.emplace_back();
            return out;
        }

        double to_double(const std::string &s, const std::string &where)
        {
            try
            {
                std::size_t used = 0;
                const double v = std::stod(s, &used);
                if (used != s.size())
                    throw std::invalid_argument(s);
                return v;
            }
            catch (const std::exception &)
            {
                throw InputError(fmt::format("{}: '{}' is not a number", where, s));
            }
        }

        std::string rank_file(double h, double K)
        {
            return fmt::format("rank_h{}_K{}.csv", number_tag(h), number_tag(K));
        }

        // Reads an `x_m,y_m,value` grid file, checking that it covers `g` in order.
        std::vector<std::string> read_grid_values(const std::filesystem::path &p, const GridSpec &g)
        {
            const auto lines = split_lines(read_text_file(p));
            if (lines.empty() || lines.front() != "x_m,y_m,value")
                throw InputError(fmt::format("{}: expected header x_m,y_m,value", p.string()));
            if (lines.size() != static_cast<std::size_t>(g.size()) + 1)
                throw InputError(fmt::format("{}: expected {} rows, found {}", p.string(), g.size(), lines.size() - 1));
            std::vector<std::string> values;
            values.reserve(static_cast<std::size_t>(g.size()));
            for (int i = 0; i < g.size(); ++i)
            {
                const auto where = fmt::format("{} line {}", p.string(), i + 2);
                const auto f = split_fields(lines[static_cast<std::size_t>(i) + 1]);
                if (f.size() != 3)
                    throw InputError(fmt::format("{}: expected 3 columns", where));
                const Vec2 expect = g.position(i);
                if (std::abs(to_double(f[0], where) - expect.x) > 1e-3 || std::abs(to_double(f[1], where) - expect.y) > 1e-3)
                    throw InputError(fmt::format("{}: position does not match the grid", where));
                values.push_back(f[2]);
            }
            return values;
        }
    } // namespace

    std::string grid_csv(const GridSpec &g, std::span<const std::optional<double>> values, int precision)
    {
        std::string out = "x_m,y_m,value\n";
        for (int i = 0; i < g.size(); ++i)
        {
            const Vec2 p = g.position(i);
            const auto &v = values[static_cast<std::size_t>(i)];
            if (v)
                out += fmt::format("{:.3f},{:.3f},{:.{}f}\n", p.x, p.y, *v, precision);
            else
                out += fmt::format("{:.3f},{:.3f},Z\n", p.x, p.y);
        }
        return out;
    }

    std::string coverage_pgm(const CoverageGrid &g, PgmRange range)
    {
        if (!(range.hi_dbm > range.lo_dbm))
            throw InputError("heatmap range must have hi > lo");
        std::string out = fmt::format("P5\n{} {}\n255\n", g.grid.nx, g.grid.ny);
        for (int row = g.grid.ny - 1; row >= 0; --row)
        {
            for (int col = 0; col < g.grid.nx; ++col)
            {
                const auto &v = g.values[static_cast<std::size_t>(row * g.grid.nx + col)];
                unsigned char byte = 0;
                if (v)
                {
                    const double t = std::clamp((*v - range.lo_dbm) / (range.hi_dbm - range.lo_dbm), 0.0, 1.0);
                    byte = static_cast<unsigned char>(1 + std::lround(t * 254.0));
                }
                out.push_back(static_cast<char>(byte));
            }
        }
        return out;
    }

    std::string cdf_csv(const RssCdf &cdf)
    {
        std::string out = "value_dbm,fraction\n";
        for (const auto &p : cdf.points)
            out += fmt::format("{:.6f},{:.6f}\n", p.value_dbm, p.fraction);
        return out;
    }

    std::string histogram_csv(const RankHistogram &h)
    {
        std::string out = "rank,fraction\n";
        for (const auto &[rank, f] : h.fractions)
            out += fmt::format("{},{:.6f}\n", rank, f);
        out += fmt::format("Z,{:.6f}\n", h.z_fraction);
        return out;
    }

    std::string bins_csv(std::span<const CorrelationBin> bins)
    {
        std::string out = "distance_m,mean_correlation,pair_count\n";
        for (const auto &b : bins)
            out += fmt::format("{:.3f},{:.12f},{}\n", b.distance_m, b.mean_correlation, b.pair_count);
        return out;
    }

    std::vector<CorrelationBin> parse_bins_csv(const std::string &text)
    {
        const auto lines = split_lines(text);
        if (lines.empty() || lines.front() != "distance_m,mean_correlation,pair_count")
            throw InputError("correlation bins: expected header distance_m,mean_correlation,pair_count");
        std::vector<CorrelationBin> bins;
        for (std::size_t i = 1; i < lines.size(); ++i)
        {
            const auto where = fmt::format("correlation bins line {}", i + 1);
            const auto f = split_fields(lines[i]);
            if (f.size() != 3)
                throw InputError(fmt::format("{}: expected 3 columns", where));
            bins.push_back({to_double(f[0], where), to_double(f[1], where),
                            static_cast<std::size_t>(to_double(f[2], where))});
        }
        return bins;
    }

    std::string model_json(const CorrelationModel &m)
    {
        // Written by hand so that every coefficient keeps a fixed, round-trippable precision.
        return fmt::format("{{\n  \"c1\": {:.17g},\n  \"c2\": {:.17g},\n  \"c3\": {:.17g},\n  \"c4\": {:.17g},\n"
                           "  \"rmse\": {:.17g},\n  \"max_distance_m\": {:.17g}\n}}\n",
                           m.coefficients.c1, m.coefficients.c2, m.coefficients.c3, m.coefficients.c4, m.rmse,
                           m.max_distance_m);
    }

    CorrelationModel parse_model_json(const std::string &text)
    {
        json j;
        try
        {
            j = json::parse(text);
        }
        catch (const json::parse_error &e)
        {
            throw InputError(fmt::format("correlation model: {}", e.what()));
        }
        CorrelationModel m;
        const auto get = [&](const char *key) {
            if (!j.contains(key) || !j[key].is_number())
                throw InputError(fmt::format("correlation model: missing numeric field '{}'", key));
            return j[key].get<double>();
        };
        m.coefficients = {get("c1"), get("c2"), get("c3"), get("c4")};
        m.rmse = get("rmse");
        m.max_distance_m = get("max_distance_m");
        return m;
    }

    std::string mae_csv(const MaeReport &r)
    {
        std::string out = "method,altitude_m,K,mae,cells\n";
        for (const auto &e : r.entries)
        {
            const std::string mae = std::isnan(e.mae) ? "nan" : fmt::format("{:.6f}", e.mae);
            out += fmt::format("{},{},{},{},{}\n", method_name(e.method), number_tag(e.altitude_m), number_tag(e.K), mae,
                               e.cells);
        }
        return out;
    }

    std::string number_tag(double v)
    {
        return fmt::format("{}", v);
    }

    std::vector<NamedText> rank_grid_files(const RankGrid &rg)
    {
        std::vector<NamedText> out;
        json manifest;
        manifest["grid"] = {{"nx", rg.grid.nx},
                            {"ny", rg.grid.ny},
                            {"spacing_m", rg.grid.spacing},
                            {"origin_x_m", rg.grid.origin.x},
                            {"origin_y_m", rg.grid.origin.y}};
        manifest["altitudes_m"] = rg.altitudes;
        manifest["thresholds"] = rg.thresholds;
        json files = json::array();
        for (std::size_t a = 0; a < rg.altitudes.size(); ++a)
        {
            for (std::size_t k = 0; k < rg.thresholds.size(); ++k)
            {
                std::vector<std::optional<double>> v(static_cast<std::size_t>(rg.grid.size()));
                for (int i = 0; i < rg.grid.size(); ++i)
                    if (const auto &r = rg.at(a, k, i))
                        v[static_cast<std::size_t>(i)] = *r;
                const auto name = rank_file(rg.altitudes[a], rg.thresholds[k]);
                out.push_back({name, grid_csv(rg.grid, v, 0)});
                files.push_back(name);
            }
        }
        manifest["files"] = files;
        manifest["serving"] = "serving.csv";
        std::vector<std::optional<double>> serving(rg.serving.begin(), rg.serving.end());
        out.push_back({"serving.csv", grid_csv(rg.grid, serving, 0)});
        out.push_back({"rank_grid.json", manifest.dump(2) + "\n"});
        return out;
    }

    void write_rank_grid(const std::filesystem::path &dir, const RankGrid &rg)
    {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec)
            throw InputError(fmt::format("cannot create '{}': {}", dir.string(), ec.message()));
        for (const auto &f : rank_grid_files(rg))
            write_text_file(dir / f.name, f.content);
    }

    RankGrid read_rank_grid(const std::filesystem::path &dir)
    {
        const auto path = dir / "rank_grid.json";
        json j;
        try
        {
            j = json::parse(read_text_file(path));
        }
        catch (const json::parse_error &e)
        {
            throw InputError(fmt::format("{}: {}", path.string(), e.what()));
        }
        RankGrid rg;
        try
        {
            const auto &g = j.at("grid");
            rg.grid.nx = g.at("nx").get<int>();
            rg.grid.ny = g.at("ny").get<int>();
            rg.grid.spacing = g.at("spacing_m").get<double>();
            rg.grid.origin = {g.at("origin_x_m").get<double>(), g.at("origin_y_m").get<double>()};
            rg.altitudes = j.at("altitudes_m").get<std::vector<double>>();
            rg.thresholds = j.at("thresholds").get<std::vector<double>>();
        }
        catch (const json::exception &e)
        {
            throw InputError(fmt::format("{}: {}", path.string(), e.what()));
        }
        if (rg.grid.nx < 1 || rg.grid.ny < 1 || !(rg.grid.spacing > 0.0))
            throw InputError(fmt::format("{}: invalid grid", path.string()));

        const auto n = static_cast<std::size_t>(rg.grid.size());
        rg.ranks.assign(rg.altitudes.size() * rg.thresholds.size() * n, std::nullopt);
        for (std::size_t a = 0; a < rg.altitudes.size(); ++a)
        {
            for (std::size_t k = 0; k < rg.thresholds.size(); ++k)
            {
                const auto file = dir / rank_file(rg.altitudes[a], rg.thresholds[k]);
                const auto values = read_grid_values(file, rg.grid);
                for (int i = 0; i < rg.grid.size(); ++i)
                {
                    const auto &s = values[static_cast<std::size_t>(i)];
                    if (s != "Z")
                        rg.at(a, k, i) = static_cast<int>(to_double(s, file.string()));
                }
            }
        }
        const auto serving = read_grid_values(dir / "serving.csv", rg.grid);
        rg.serving.reserve(n);
        for (const auto &s : serving)
            rg.serving.push_back(static_cast<int>(to_double(s, "serving.csv")));
        return rg;
    }

    std::string read_text_file(const std::filesystem::path &p)
    {
        std::ifstream in(p, std::ios::binary);
        if (!in)
            throw InputError(fmt::format("cannot read '{}'", p.string()));
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    void write_text_file(const std::filesystem::path &p, const std::string &content)
    {
        std::ofstream out(p, std::ios::binary | std::ios::trunc);
        if (!out)
            throw InputError(fmt::format("cannot write '{}'", p.string()));
        out << content;
        if (!out)
            throw InputError(fmt::format("write failed for '{}'", p.string()));
    }

} // namespace uavrank

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

#include "uavrank/eval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <fmt/format.h>

#include "uavrank/parallel.hpp"

namespace uavrank
{
    double mae(std::span<const std::optional<double>> truth, std::span<const std::optional<double>> estimate)
    {
        if (truth.size() != estimate.size())
            throw InputError(fmt::format("mae: lengths differ ({} vs {})", truth.size(), estimate.size()));
        double sum = 0.0;
        std::size_t n = 0;
        for (std::size_t i = 0; i < truth.size(); ++i)
        {
            if (!truth[i] || !estimate[i])
                continue;
            sum += std::abs(*truth[i] - *estimate[i]);
            ++n;
        }
        if (n == 0)
            throw InputError("mae: no pairs left after excluding Z entries");
        return sum / static_cast<double>(n);
    }

    double mae(std::span<const double> truth, std::span<const double> estimate)
    {
        std::vector<std::optional<double>> a(truth.begin(), truth.end()), b(estimate.begin(), estimate.end());
        return mae(a, b);
    }

    std::string_view method_name(Method m)
    {
        switch (m)
        {
        case Method::kriging:
            return "kriging";
        case Method::spline:
            return "spline";
        case Method::makima:
            return "makima";
        }
        return "?";
    }

    Method parse_method(std::string_view name)
    {
        for (Method m : {Method::kriging, Method::spline, Method::makima})
            if (method_name(m) == name)
                return m;
        throw InputError(fmt::format("unknown method '{}' (expected kriging, spline or makima)", name));
    }

    std::vector<std::optional<double>> loo_estimates(const RankField &field, std::size_t altitude, Method method,
                                                     const LooOptions &opt, const BiExponential &model)
    {
        const KrigingConfig cfg = validated(opt.kriging);
        std::vector<std::optional<double>> out(static_cast<std::size_t>(field.grid.size()));
        parallel_for(field.grid.size(), [&](int cell) {
            if (!field.at(altitude, cell))
                return;
            std::optional<double> e;
            if (method == Method::kriging)
            {
                if (const auto k = krige_rank(field, field.grid.position(cell), altitude, cfg, model, cell))
                    e = k->value;
            }
            else
            {
                e = baseline_rank(field, cell, altitude, cfg,
                                  method == Method::spline ? BaselineMethod::spline : BaselineMethod::makima, cell);
            }
            if (e && opt.round)
                e = std::round(*e);
            out[static_cast<std::size_t>(cell)] = e;
        });
        return out;
    }

    MaeReport loo_evaluate(const RankGrid &rg, std::span<const Method> methods, const LooOptions &opt,
                           const BiExponential &model)
    {
        MaeReport report;
        std::vector<RankField> fields;
        for (std::size_t k = 0; k < rg.thresholds.size(); ++k)
            fields.push_back(RankField::from_grid(rg, k));
        for (Method m : methods)
        {
            for (std::size_t a = 0; a < rg.altitudes.size(); ++a)
            {
                for (std::size_t k = 0; k < rg.thresholds.size(); ++k)
                {
                    const auto &field = fields[k];
                    const auto est = loo_estimates(field, a, m, opt, model);
                    MaeEntry e;
                    e.method = m;
                    e.altitude_m = rg.altitudes[a];
                    e.K = rg.thresholds[k];
                    double sum = 0.0;
                    for (int i = 0; i < field.grid.size(); ++i)
                    {
                        const auto &truth = field.at(a, i);
                        if (!truth)
                            continue;
                        if (const auto &x = est[static_cast<std::size_t>(i)])
                        {
                            sum += std::abs(*x - *truth);
                            ++e.cells;
                        }
                        else
                        {
                            ++e.skipped;
                        }
                    }
                    e.mae = e.cells > 0 ? sum / e.cells : std::numeric_limits<double>::quiet_NaN();
                    report.entries.push_back(e);
                }
            }
        }
        return report;
    }

    namespace
    {
        std::vector<std::string_view> split(std::string_view line, char sep)
        {
            std::vector<std::string_view> out;
            std::size_t start = 0;
            while (true)
            {
                const auto p = line.find(sep, start);
                out.push_back(line.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start));
                if (p == std::string_view::npos)
                    break;
                start = p + 1;
            }
            return out;
        }

        std::string_view trim(std::string_view s)
        {
            while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
                s.remove_prefix(1);
            while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
                s.remove_suffix(1);
            return s;
        }

        double parse_number(std::string_view s, int line)
        {
            s = trim(s);
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
                throw InputError(fmt::format("trace line {}: '{}' is not a finite number", line, s));
            return v;
        }
    } // namespace

    Trace parse_trace_csv(std::string_view text)
    {
        Trace t;
        int line_no = 0;
        bool header_seen = false;
        std::size_t pos = 0;
        while (pos < text.size())
        {
            const auto end = text.find('\n', pos);
            const auto line = trim(text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
            pos = end == std::string_view::npos ? text.size() : end + 1;
            ++line_no;
            if (line.empty())
                continue;
            const auto fields = split(line, ',');
            if (!header_seen)
            {
                if (fields.size() != 5 || trim(fields[0]) != "t_s" || trim(fields[1]) != "x_m" ||
                    trim(fields[2]) != "y_m" || trim(fields[3]) != "z_m" ||
                    (trim(fields[4]) != "rss_dbm" && trim(fields[4]) != "rank"))
                    throw InputError(fmt::format("trace line {}: expected header t_s,x_m,y_m,z_m,rss_dbm|rank", line_no));
                t.quantity = std::string(trim(fields[4]));
                header_seen = true;
                continue;
            }
            if (fields.size() != 5)
                throw InputError(fmt::format("trace line {}: expected 5 columns, got {}", line_no, fields.size()));
            TraceSample s;
            s.t = parse_number(fields[0], line_no);
            s.position = {parse_number(fields[1], line_no), parse_number(fields[2], line_no),
                          parse_number(fields[3], line_no)};
            s.value = parse_number(fields[4], line_no);
            if (!t.samples.empty() && s.t < t.samples.back().t)
                throw InputError(fmt::format("trace line {}: time decreases", line_no));
            t.samples.push_back(s);
        }
        if (!header_seen)
            throw InputError("trace: empty file");
        return t;
    }

    Trace load_trace_file(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw InputError(fmt::format("cannot open trace '{}'", path));
        std::ostringstream ss;
        ss << in.rdbuf();
        try
        {
            return parse_trace_csv(ss.str());
        }
        catch (const InputError &e)
        {
            throw InputError(fmt::format("{}: {}", path, e.what()));
        }
    }

    std::string trace_to_csv(const Trace &t)
    {
        std::string out = fmt::format("t_s,x_m,y_m,z_m,{}\n", t.quantity);
        for (const auto &s : t.samples)
            out += fmt::format("{:.3f},{:.3f},{:.3f},{:.3f},{:.6f}\n", s.t, s.position.x, s.position.y, s.position.z,
                               s.value);
        return out;
    }

    Calibration calibrate_offset(const Trace &measured, const Trace &simulated)
    {
        std::vector<std::pair<double, double>> pairs; // (measured, simulated)
        const auto &sim = simulated.samples;
        for (const auto &m : measured.samples)
        {
            const auto it = std::lower_bound(sim.begin(), sim.end(), m.t,
                                             [](const TraceSample &s, double t) { return s.t < t; });
            const TraceSample *best = nullptr;
            if (it != sim.end())
                best = &*it;
            if (it != sim.begin())
            {
                const auto &prev = *std::prev(it);
                if (!best || m.t - prev.t <= best->t - m.t)
                    best = &prev;
            }
            if (best && std::abs(best->t - m.t) <= kJoinWindow + 1e-9)
                pairs.emplace_back(m.value, best->value);
        }
        if (pairs.empty())
            throw InputError("calibration: measured and simulated traces have no samples within 50 ms");

        const auto rmse = [&](double c) {
            double ss = 0.0;
            for (const auto &[m, s] : pairs)
                ss += (m - s - c) * (m - s - c);
            return std::sqrt(ss / static_cast<double>(pairs.size()));
        };
        // Visit offsets by increasing magnitude so that only a strictly better RMSE displaces the incumbent.
        Calibration best{0.0, rmse(0.0), static_cast<int>(pairs.size())};
        for (int k = 1; k <= 500; ++k)
        {
            for (int sign : {-1, 1})
            {
                const double c = sign * k / 10.0;
                const double e = rmse(c);
                if (e < best.rmse_db)
                {
                    best.offset_db = c;
                    best.rmse_db = e;
                }
            }
        }
        return best;
    }

    RankHistogram rank_histogram(const RankGrid &rg, std::size_t altitude, std::size_t threshold)
    {
        RankHistogram h;
        const int n = rg.grid.size();
        if (n == 0)
            return h;
        std::map<int, int> counts;
        int z = 0;
        for (int i = 0; i < n; ++i)
        {
            if (const auto &r = rg.at(altitude, threshold, i))
                ++counts[*r];
            else
                ++z;
        }
        for (const auto &[rank, c] : counts)
            h.fractions[rank] = static_cast<double>(c) / n;
        h.z_fraction = static_cast<double>(z) / n;
        return h;
    }

} // namespace uavrank

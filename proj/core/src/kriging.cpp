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

#include "uavrank/kriging.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include <Eigen/Dense>
#include <fmt/format.h>

namespace uavrank
{
    KrigingConfig validated(KrigingConfig cfg)
    {
        if (cfg.m < 1)
            throw InputError(fmt::format("kriging: M must be >= 1 (got {})", cfg.m));
        if (!(cfg.r0 > 0.0))
            throw InputError(fmt::format("kriging: r0 must be > 0 (got {})", cfg.r0));
        return cfg;
    }

    RankField RankField::from_grid(const RankGrid &rg, std::size_t threshold)
    {
        if (threshold >= rg.thresholds.size())
            throw InputError(fmt::format("threshold index {} out of range", threshold));
        RankField f;
        f.grid = rg.grid;
        f.altitudes = rg.altitudes;
        f.values.resize(rg.altitudes.size() * static_cast<std::size_t>(rg.grid.size()));
        for (std::size_t a = 0; a < rg.altitudes.size(); ++a)
            for (int i = 0; i < rg.grid.size(); ++i)
                if (const auto &r = rg.at(a, threshold, i))
                    f.at(a, i) = static_cast<double>(*r);
        return f;
    }

    double rank_variance(std::span<const double> ranks)
    {
        if (ranks.size() < 2)
            return 0.0;
        double mean = 0.0;
        for (double r : ranks)
            mean += r;
        mean /= static_cast<double>(ranks.size());
        double ss = 0.0;
        for (double r : ranks)
            ss += (r - mean) * (r - mean);
        return ss / static_cast<double>(ranks.size() - 1);
    }

    double semivariogram(const BiExponential &model, double v2, Vec2 pi, Vec2 pj)
    {
        return std::max(0.0, v2 * (1.0 - model(distance(pi, pj))));
    }

    namespace
    {
        KrigingSolution nearest_only(std::span<const Vec2> samples, Vec2 target)
        {
            KrigingSolution s;
            s.fallback = true;
            s.weights.assign(samples.size(), 0.0);
            std::size_t best = 0;
            for (std::size_t i = 1; i < samples.size(); ++i)
                if (distance(samples[i], target) < distance(samples[best], target))
                    best = i;
            s.weights[best] = 1.0;
            return s;
        }
    } // namespace

    KrigingSolution solve_weights(std::span<const Vec2> samples, Vec2 target, const BiExponential &model, double v2)
    {
        if (samples.empty())
            throw InputError("kriging needs at least one sample");
        const auto m = static_cast<Eigen::Index>(samples.size());
        if (m == 1)
            return {{1.0}, semivariogram(model, v2, samples[0], target) - semivariogram(model, v2, samples[0], samples[0]), false};
        if (!(v2 > 0.0))
            return nearest_only(samples, target);

        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m + 1, m + 1);
        Eigen::VectorXd b(m + 1);
        for (Eigen::Index i = 0; i < m; ++i)
        {
            for (Eigen::Index j = 0; j < m; ++j)
                A(i, j) = semivariogram(model, v2, samples[static_cast<std::size_t>(i)],
                                        samples[static_cast<std::size_t>(j)]);
            A(i, m) = 1.0;
            A(m, i) = 1.0;
            b(i) = semivariogram(model, v2, samples[static_cast<std::size_t>(i)], target);
        }
        b(m) = 1.0;

        const Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
        if (!(lu.rcond() > 1e-13))
            return nearest_only(samples, target);
        const Eigen::VectorXd x = lu.solve(b);
        if (!x.allFinite())
            return nearest_only(samples, target);

        KrigingSolution s;
        s.weights.assign(x.data(), x.data() + m);
        s.lagrange = x(m);
        return s;
    }

    std::vector<int> select_neighbors(const RankField &field, Vec2 target, std::size_t altitude,
                                      const KrigingConfig &cfg, std::optional<int> withheld)
    {
        const GridSpec &g = field.grid;
        const double r0 = cfg.r0 + 1e-9;
        const auto clamp_col = [&](double x) { return std::clamp(static_cast<int>(std::floor(x)), 0, g.nx - 1); };
        const auto clamp_row = [&](double y) { return std::clamp(static_cast<int>(std::floor(y)), 0, g.ny - 1); };
        const int c0 = clamp_col((target.x - r0 - g.origin.x) / g.spacing);
        const int c1 = clamp_col((target.x + r0 - g.origin.x) / g.spacing + 1.0);
        const int r_lo = clamp_row((target.y - r0 - g.origin.y) / g.spacing);
        const int r_hi = clamp_row((target.y + r0 - g.origin.y) / g.spacing + 1.0);

        std::vector<std::pair<double, int>> cand;
        for (int row = r_lo; row <= r_hi; ++row)
        {
            for (int col = c0; col <= c1; ++col)
            {
                const int idx = row * g.nx + col;
                if (withheld && *withheld == idx)
                    continue;
                if (!field.at(altitude, idx))
                    continue;
                const double d = distance(g.position(idx), target);
                if (d <= r0)
                    cand.emplace_back(d, idx);
            }
        }
        std::sort(cand.begin(), cand.end());
        if (cand.size() > static_cast<std::size_t>(cfg.m))
            cand.resize(static_cast<std::size_t>(cfg.m));
        std::vector<int> out;
        out.reserve(cand.size());
        for (const auto &c : cand)
            out.push_back(c.second);
        return out;
    }

    std::optional<KrigingEstimate> krige_rank(const RankField &field, Vec2 target, std::size_t altitude,
                                              const KrigingConfig &cfg, const BiExponential &model,
                                              std::optional<int> withheld)
    {
        const auto neighbors = select_neighbors(field, target, altitude, cfg, withheld);
        if (neighbors.empty())
            return std::nullopt;

        // Mean of the per-location altitude variance over the neighbors that have enough data.
        double v2 = 0.0;
        int v2_count = 0;
        std::vector<double> stack;
        for (int idx : neighbors)
        {
            stack.clear();
            for (std::size_t a = 0; a < field.altitudes.size(); ++a)
                if (const auto &r = field.at(a, idx))
                    stack.push_back(*r);
            if (stack.size() >= 2)
            {
                v2 += rank_variance(stack);
                ++v2_count;
            }
        }
        if (v2_count > 0)
            v2 /= v2_count;

        std::vector<Vec2> points;
        points.reserve(neighbors.size());
        for (int idx : neighbors)
            points.push_back(field.grid.position(idx));
        const auto sol = solve_weights(points, target, model, v2);

        KrigingEstimate e;
        e.samples = static_cast<int>(neighbors.size());
        e.fallback = sol.fallback;
        for (std::size_t i = 0; i < neighbors.size(); ++i)
            e.value += sol.weights[i] * *field.at(altitude, neighbors[i]);
        return e;
    }

} // namespace uavrank

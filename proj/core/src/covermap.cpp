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

#include "uavrank/covermap.hpp"

#include <algorithm>
#include <map>

#include <fmt/format.h>

#include "uavrank/error.hpp"
#include "uavrank/parallel.hpp"

namespace uavrank
{
    namespace
    {
        void check_altitude(double altitude)
        {
            if (!(altitude > 0.0))
                throw InputError(fmt::format("altitude must be > 0 (got {})", altitude));
        }

        double z_fraction(std::size_t z, std::size_t total)
        {
            return total == 0 ? 0.0 : static_cast<double>(z) / static_cast<double>(total);
        }
    } // namespace

    double CoverageGrid::blockage_fraction() const
    {
        const auto z = std::count_if(values.begin(), values.end(), [](const auto &v) { return !v; });
        return z_fraction(static_cast<std::size_t>(z), values.size());
    }

    CoverageGrid compute_coverage(const Scene &s, const Tower &tower, double altitude, const CoverageOptions &opt)
    {
        check_altitude(altitude);
        CoverageGrid g;
        g.tower_id = tower.id;
        g.altitude = altitude;
        g.mode = opt.mode;
        g.grid = grid_spec(s);
        g.values.assign(static_cast<std::size_t>(g.grid.size()), std::nullopt);
        g.serving.assign(static_cast<std::size_t>(g.grid.size()), tower.id);

        const Tracer tracer(s);
        const Vec3 tx = at_height(tower.position, tower.height);
        const ArrayConfig single{1, 0.5, {0.0, 1.0, 0.0}};
        const double lambda = s.wavelength();
        parallel_for(g.grid.size(), [&](int i) {
            const auto paths = tracer.trace(tx, at_height(g.grid.position(i), altitude), opt.max_reflections);
            g.values[static_cast<std::size_t>(i)] =
                rss(paths, tower.array, single, s.tx_power_w, lambda, opt.mode, opt.beam);
        });
        return g;
    }

    int nearest_tower(const Scene &s, Vec2 p)
    {
        if (s.towers.empty())
            throw InputError("scene has no towers");
        const Tower *best = nullptr;
        double best_d = 0.0;
        for (const auto &t : s.towers)
        {
            const double d = distance(p, t.position);
            if (!best || d < best_d || (d == best_d && t.id < best->id))
            {
                best = &t;
                best_d = d;
            }
        }
        return best->id;
    }

    CoverageGrid joint_coverage(const Scene &s, std::span<const CoverageGrid> grids)
    {
        if (grids.empty())
            throw InputError("joint coverage needs at least one grid");
        std::map<int, const CoverageGrid *> by_tower;
        for (const auto &g : grids)
        {
            if (g.altitude != grids[0].altitude || g.mode != grids[0].mode || !(g.grid == grids[0].grid) ||
                g.values.size() != grids[0].values.size())
                throw InputError("joint coverage grids differ in altitude, mode or dimensions");
            by_tower[g.tower_id] = &g;
        }
        CoverageGrid joint;
        joint.tower_id = kJointTower;
        joint.altitude = grids[0].altitude;
        joint.mode = grids[0].mode;
        joint.grid = grids[0].grid;
        joint.values.resize(grids[0].values.size());
        joint.serving.resize(grids[0].values.size());
        for (int i = 0; i < joint.grid.size(); ++i)
        {
            const int id = nearest_tower(s, joint.grid.position(i));
            const auto it = by_tower.find(id);
            if (it == by_tower.end())
                throw InputError(fmt::format("no coverage grid for tower {}", id));
            joint.values[static_cast<std::size_t>(i)] = it->second->values[static_cast<std::size_t>(i)];
            joint.serving[static_cast<std::size_t>(i)] = id;
        }
        return joint;
    }

    RssCdf rss_cdf(const CoverageGrid &g)
    {
        std::vector<double> v;
        for (const auto &x : g.values)
            if (x)
                v.push_back(*x);
        std::sort(v.begin(), v.end());
        RssCdf cdf;
        cdf.blockage_fraction = g.blockage_fraction();
        for (std::size_t i = 0; i < v.size(); ++i)
        {
            if (i + 1 < v.size() && v[i + 1] == v[i])
                continue;
            cdf.points.push_back({v[i], static_cast<double>(i + 1) / static_cast<double>(v.size())});
        }
        return cdf;
    }

    double RankGrid::blockage_fraction(std::size_t altitude) const
    {
        if (thresholds.empty())
            return 0.0;
        std::size_t z = 0;
        for (int i = 0; i < grid.size(); ++i)
            if (!at(altitude, 0, i))
                ++z;
        return z_fraction(z, static_cast<std::size_t>(grid.size()));
    }

    RankGrid compute_rank_grid(const Scene &s, std::span<const double> altitudes, std::span<const double> thresholds,
                               int max_reflections)
    {
        if (s.towers.empty())
            throw InputError("scene has no towers");
        for (double a : altitudes)
            check_altitude(a);
        for (double K : thresholds)
            if (!(K > 1.0))
                throw InputError(fmt::format("threshold ratio K must be > 1 (got {})", K));

        RankGrid r;
        r.grid = grid_spec(s);
        r.altitudes.assign(altitudes.begin(), altitudes.end());
        r.thresholds.assign(thresholds.begin(), thresholds.end());
        const int n = r.grid.size();
        r.serving.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            r.serving[static_cast<std::size_t>(i)] = nearest_tower(s, r.grid.position(i));
        r.ranks.assign(r.altitudes.size() * r.thresholds.size() * static_cast<std::size_t>(n), std::nullopt);

        const Tracer tracer(s);
        const double lambda = s.wavelength();
        const int jobs = n * static_cast<int>(r.altitudes.size());
        parallel_for(jobs, [&](int job) {
            const int cell = job % n;
            const auto a = static_cast<std::size_t>(job / n);
            const Tower &t = s.tower(r.serving[static_cast<std::size_t>(cell)]);
            const auto paths = tracer.trace(at_height(t.position, t.height), at_height(r.grid.position(cell), r.altitudes[a]),
                                            max_reflections);
            const auto h = synthesize_channel(paths, t.array, s.rx_array, lambda);
            if (!h)
                return;
            const auto sigma = singular_values(*h);
            for (std::size_t k = 0; k < r.thresholds.size(); ++k)
                r.at(a, k, cell) = rank_from_singular_values(sigma, r.thresholds[k]);
        });
        return r;
    }

} // namespace uavrank

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

#include "uavrank/baseline.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace uavrank
{
    namespace
    {
        void check(const IndexedSamples &s)
        {
            if (s.indices.size() != s.values.size())
                throw InputError("interpolation: indices and values differ in length");
            if (s.indices.size() < 2)
                throw InputError(fmt::format("interpolation needs at least 2 samples (got {})", s.indices.size()));
            for (std::size_t i = 1; i < s.indices.size(); ++i)
                if (!(s.indices[i] > s.indices[i - 1]))
                    throw InputError("interpolation: indices must be strictly increasing");
        }

        // Segment used for x0; the first/last segment when x0 lies outside the range.
        std::size_t segment(const std::vector<double> &x, double x0)
        {
            const auto it = std::upper_bound(x.begin(), x.end(), x0);
            const auto k = static_cast<std::size_t>(std::distance(x.begin(), it));
            return std::clamp<std::size_t>(k, 1, x.size() - 1) - 1;
        }

        double hermite(double x0, double xa, double xb, double ya, double yb, double da, double db)
        {
            const double h = xb - xa;
            const double t = (x0 - xa) / h;
            const double t2 = t * t, t3 = t2 * t;
            return (2 * t3 - 3 * t2 + 1) * ya + (t3 - 2 * t2 + t) * h * da + (-2 * t3 + 3 * t2) * yb +
                   (t3 - t2) * h * db;
        }
    } // namespace

    double spline_interp(const IndexedSamples &s, double x0)
    {
        check(s);
        const auto &x = s.indices;
        const auto &y = s.values;
        const std::size_t n = x.size();

        // Second derivatives M with M_0 = M_{n-1} = 0, tridiagonal system solved by the Thomas algorithm.
        std::vector<double> m(n, 0.0);
        if (n > 2)
        {
            const std::size_t k = n - 2;
            std::vector<double> diag(k), upper(k), rhs(k);
            for (std::size_t i = 0; i < k; ++i)
            {
                const double h0 = x[i + 1] - x[i], h1 = x[i + 2] - x[i + 1];
                diag[i] = 2.0 * (h0 + h1);
                upper[i] = h1;
                rhs[i] = 6.0 * ((y[i + 2] - y[i + 1]) / h1 - (y[i + 1] - y[i]) / h0);
            }
            for (std::size_t i = 1; i < k; ++i)
            {
                const double lower = x[i + 1] - x[i];
                const double w = lower / diag[i - 1];
                diag[i] -= w * upper[i - 1];
                rhs[i] -= w * rhs[i - 1];
            }
            m[k] = rhs[k - 1] / diag[k - 1];
            for (std::size_t i = k - 1; i-- > 0;)
                m[i + 1] = (rhs[i] - upper[i] * m[i + 2]) / diag[i];
        }

        const std::size_t i = segment(x, x0);
        const double h = x[i + 1] - x[i];
        const double a = (x[i + 1] - x0) / h;
        const double b = (x0 - x[i]) / h;
        return a * y[i] + b * y[i + 1] + ((a * a * a - a) * m[i] + (b * b * b - b) * m[i + 1]) * h * h / 6.0;
    }

    double makima_interp(const IndexedSamples &s, double x0)
    {
        check(s);
        const auto &x = s.indices;
        const auto &y = s.values;
        const std::size_t n = x.size();
        if (n == 2)
        {
            const double t = (x0 - x[0]) / (x[1] - x[0]);
            return y[0] + t * (y[1] - y[0]);
        }

        // Secants padded with two extrapolated values on each side: delta[j + 2] is the slope of segment j.
        std::vector<double> delta(n + 3);
        for (std::size_t j = 0; j + 1 < n; ++j)
            delta[j + 2] = (y[j + 1] - y[j]) / (x[j + 1] - x[j]);
        delta[1] = 2.0 * delta[2] - delta[3];
        delta[0] = 2.0 * delta[1] - delta[2];
        delta[n + 1] = 2.0 * delta[n] - delta[n - 1];
        delta[n + 2] = 2.0 * delta[n + 1] - delta[n];

        std::vector<double> d(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            // Knot i sits between delta[i + 1] (left) and delta[i + 2] (right).
            const double dm2 = delta[i], dm1 = delta[i + 1], d0 = delta[i + 2], d1 = delta[i + 3];
            const double w1 = std::abs(d1 - d0) + std::abs(d1 + d0) / 2.0;
            const double w2 = std::abs(dm1 - dm2) + std::abs(dm1 + dm2) / 2.0;
            d[i] = (w1 + w2) == 0.0 ? 0.0 : (w1 * dm1 + w2 * d0) / (w1 + w2);
        }

        const std::size_t i = segment(x, x0);
        return hermite(x0, x[i], x[i + 1], y[i], y[i + 1], d[i], d[i + 1]);
    }

    std::optional<double> baseline_rank(const RankField &field, int cell, std::size_t altitude,
                                        const KrigingConfig &cfg, BaselineMethod method, std::optional<int> withheld)
    {
        auto neighbors = select_neighbors(field, field.grid.position(cell), altitude, cfg, withheld);
        if (neighbors.size() < 2)
            return std::nullopt;
        std::sort(neighbors.begin(), neighbors.end());
        IndexedSamples s;
        for (int idx : neighbors)
        {
            s.indices.push_back(static_cast<double>(idx));
            s.values.push_back(*field.at(altitude, idx));
        }
        const double x0 = static_cast<double>(cell);
        return method == BaselineMethod::spline ? spline_interp(s, x0) : makima_interp(s, x0);
    }

} // namespace uavrank

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

#include "uavrank/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <Eigen/Dense>
#include <fmt/format.h>

namespace uavrank
{
    std::vector<RankVector> build_rank_vectors(const RankGrid &rg, ZPolicy policy)
    {
        std::vector<RankVector> out;
        const std::size_t n_h = rg.altitudes.size(), n_k = rg.thresholds.size();
        for (int cell = 0; cell < rg.grid.size(); ++cell)
        {
            RankVector v;
            v.index = cell;
            v.values.reserve(n_h * n_k);
            bool has_z = false;
            for (std::size_t k = 0; k < n_k; ++k)
            {
                for (std::size_t a = 0; a < n_h; ++a)
                {
                    const auto &r = rg.at(a, k, cell);
                    has_z = has_z || !r;
                    v.values.push_back(r ? static_cast<double>(*r) : 0.0);
                }
            }
            if (has_z && policy == ZPolicy::exclude)
                continue;
            out.push_back(std::move(v));
        }
        return out;
    }

    namespace
    {
        // Centered and scaled to unit norm, so that Pearson reduces to a dot product.
        std::optional<std::vector<double>> standardized(std::span<const double> u)
        {
            if (u.size() < 2)
                return std::nullopt;
            double mean = 0.0;
            for (double x : u)
                mean += x;
            mean /= static_cast<double>(u.size());
            std::vector<double> c(u.size());
            double ss = 0.0;
            for (std::size_t i = 0; i < u.size(); ++i)
            {
                c[i] = u[i] - mean;
                ss += c[i] * c[i];
            }
            if (!(ss > 0.0))
                return std::nullopt;
            const double s = 1.0 / std::sqrt(ss);
            for (double &x : c)
                x *= s;
            return c;
        }

        double unit_dot(const std::vector<double> &a, const std::vector<double> &b)
        {
            double r = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i)
                r += a[i] * b[i];
            return std::clamp(r, -1.0, 1.0);
        }
    } // namespace

    std::optional<double> pearson(std::span<const double> u, std::span<const double> v)
    {
        if (u.size() != v.size())
            return std::nullopt;
        const auto a = standardized(u);
        const auto b = standardized(v);
        if (!a || !b)
            return std::nullopt;
        return unit_dot(*a, *b);
    }

    std::vector<CorrelationBin> bin_correlations(std::span<const RankVector> vectors, std::span<const Vec2> positions,
                                                 double d_rx, double max_distance)
    {
        if (vectors.size() != positions.size())
            throw InputError("bin_correlations: vectors and positions differ in length");
        if (!(d_rx > 0.0))
            throw InputError("bin_correlations: grid spacing must be > 0");

        std::vector<std::optional<std::vector<double>>> z;
        z.reserve(vectors.size());
        for (const auto &v : vectors)
            z.push_back(standardized(v.values));

        std::map<long, std::pair<double, std::size_t>> acc;
        for (std::size_t i = 0; i < vectors.size(); ++i)
        {
            if (!z[i])
                continue;
            for (std::size_t j = i; j < vectors.size(); ++j)
            {
                if (!z[j] || z[j]->size() != z[i]->size())
                    continue;
                const double d = distance(positions[i], positions[j]);
                const long bin = std::lround(d / d_rx);
                if (d > max_distance || static_cast<double>(bin) * d_rx > max_distance + 1e-9)
                    continue;
                auto &slot = acc[bin];
                slot.first += unit_dot(*z[i], *z[j]);
                ++slot.second;
            }
        }
        std::vector<CorrelationBin> bins;
        for (const auto &[n, s] : acc)
            bins.push_back({static_cast<double>(n) * d_rx, s.first / static_cast<double>(s.second), s.second});
        return bins;
    }

    double BiExponential::operator()(double d) const
    {
        return c1 * std::exp(c2 * d) + c3 * std::exp(c4 * d);
    }

    namespace
    {
        using Params = Eigen::Vector4d;

        BiExponential to_model(const Params &p) { return {p(0), p(1), p(2), p(3)}; }

        double cost(const Params &p, std::span<const CorrelationBin> bins)
        {
            const auto m = to_model(p);
            double c = 0.0;
            for (const auto &b : bins)
            {
                const double r = b.mean_correlation - m(b.distance_m);
                c += r * r;
            }
            return c;
        }

        FitResult finish(const Params &p, double c, std::size_t n, int iterations)
        {
            BiExponential m = to_model(p);
            if (m.c2 > m.c4)
                m = {m.c3, m.c4, m.c1, m.c2};
            return {m, std::sqrt(c / static_cast<double>(n)), iterations};
        }
    } // namespace

    FitResult fit_biexponential(std::span<const CorrelationBin> bins)
    {
        if (bins.size() < 4)
            throw InputError(fmt::format("bi-exponential fit needs at least 4 bins (got {})", bins.size()));

        constexpr int kMaxIterations = 500;
        constexpr double kRelativeTolerance = 1e-10;

        double phi0 = bins.front().mean_correlation;
        for (const auto &b : bins)
            if (b.distance_m == 0.0)
                phi0 = b.mean_correlation;
        Params p(0.5 * phi0, -0.05, 0.5 * phi0, -0.001);
        double c = cost(p, bins);
        double lambda = 1e-3;

        const auto n = static_cast<Eigen::Index>(bins.size());
        Eigen::MatrixXd J(n, 4);
        Eigen::VectorXd r(n);
        for (int it = 1; it <= kMaxIterations; ++it)
        {
            for (Eigen::Index i = 0; i < n; ++i)
            {
                const double d = bins[static_cast<std::size_t>(i)].distance_m;
                const double e2 = std::exp(p(1) * d), e4 = std::exp(p(3) * d);
                J(i, 0) = e2;
                J(i, 1) = p(0) * d * e2;
                J(i, 2) = e4;
                J(i, 3) = p(2) * d * e4;
                r(i) = bins[static_cast<std::size_t>(i)].mean_correlation - (p(0) * e2 + p(2) * e4);
            }
            const Eigen::Matrix4d JtJ = J.transpose() * J;
            const Eigen::Vector4d g = J.transpose() * r;

            // Damp until a step lowers the cost or the damping saturates.
            bool accepted = false;
            double next_cost = c;
            Params next = p;
            while (!accepted && lambda < 1e16)
            {
                Eigen::Matrix4d A = JtJ;
                for (int k = 0; k < 4; ++k)
                    A(k, k) += lambda * std::max(JtJ(k, k), 1e-12);
                const Eigen::Vector4d step = A.ldlt().solve(g);
                next = p + step;
                next_cost = cost(next, bins);
                if (std::isfinite(next_cost) && next_cost < c)
                    accepted = true;
                else
                    lambda *= 10.0;
            }
            if (!accepted)
                return finish(p, c, bins.size(), it); // no descent direction left: at a minimum
            const double change = (c - next_cost) / std::max(c, std::numeric_limits<double>::min());
            p = next;
            c = next_cost;
            lambda = std::max(lambda / 10.0, 1e-12);
            if (change < kRelativeTolerance || c < 1e-30)
                return finish(p, c, bins.size(), it);
        }
        throw FitError(fmt::format("bi-exponential fit did not converge in {} iterations", kMaxIterations),
                       finish(p, c, bins.size(), kMaxIterations));
    }

    CorrelationModel fit_correlation_model(const RankGrid &rg, ZPolicy policy, double max_distance)
    {
        const auto vectors = build_rank_vectors(rg, policy);
        std::vector<Vec2> positions;
        positions.reserve(vectors.size());
        for (const auto &v : vectors)
            positions.push_back(rg.grid.position(v.index));
        CorrelationModel m;
        m.max_distance_m = max_distance;
        m.bins = bin_correlations(vectors, positions, rg.grid.spacing, max_distance);
        if (m.bins.empty())
            throw InputError("no valid correlation pairs");
        const auto fit = fit_biexponential(m.bins);
        m.coefficients = fit.model;
        m.rmse = fit.rmse;
        return m;
    }

} // namespace uavrank

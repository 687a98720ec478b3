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

#ifndef UAVRANK_TESTS_ORACLES_HPP
#define UAVRANK_TESTS_ORACLES_HPP

// Reference computations written independently of the library. They favour transparency over
// speed: plain loops, textbook formulas, no shared helpers with the code under test.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle
{
    inline constexpr double pi = 3.14159265358979323846;
    inline constexpr double c0 = 299792458.0;
    inline constexpr double eps0 = 8.8541878128e-12;

    // Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations, ascending.
    inline std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a)
    {
        const std::size_t n = a.size();
        for (int sweep = 0; sweep < 100; ++sweep)
        {
            double off = 0.0, total = 0.0;
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = 0; q < n; ++q)
                {
                    total += a[p][q] * a[p][q];
                    if (p != q)
                        off += a[p][q] * a[p][q];
                }
            if (off <= 1e-30 * total)
                break;
            for (std::size_t p = 0; p + 1 < n; ++p)
            {
                for (std::size_t q = p + 1; q < n; ++q)
                {
                    if (a[p][q] == 0.0)
                        continue;
                    const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                    const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                    for (std::size_t k = 0; k < n; ++k)
                    {
                        const double akp = a[k][p], akq = a[k][q];
                        a[k][p] = c * akp - s * akq;
                        a[k][q] = s * akp + c * akq;
                    }
                    for (std::size_t k = 0; k < n; ++k)
                    {
                        const double apk = a[p][k], aqk = a[q][k];
                        a[p][k] = c * apk - s * aqk;
                        a[q][k] = s * apk + c * aqk;
                    }
                }
            }
        }
        std::vector<double> ev(n);
        for (std::size_t i = 0; i < n; ++i)
            ev[i] = a[i][i];
        std::sort(ev.begin(), ev.end());
        return ev;
    }

    // Singular values of H (descending) as square roots of the eigenvalues of H^H H. The Hermitian
    // matrix G = A + jB is embedded as the real symmetric [[A, -B], [B, A]], whose spectrum is that
    // of G with every eigenvalue doubled.
    inline std::vector<double> singular_values(const Eigen::MatrixXcd &h)
    {
        const auto rows = static_cast<std::size_t>(h.rows()), n = static_cast<std::size_t>(h.cols());
        std::vector<std::vector<std::complex<double>>> g(n, std::vector<std::complex<double>>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < rows; ++k)
                    g[i][j] += std::conj(h(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i))) *
                               h(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j));
        std::vector<std::vector<double>> r(2 * n, std::vector<double>(2 * n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
            {
                r[i][j] = r[i + n][j + n] = g[i][j].real();
                r[i][j + n] = -g[i][j].imag();
                r[i + n][j] = g[i][j].imag();
            }
        const auto ev = jacobi_eigenvalues(r);
        std::vector<double> sigma;
        for (std::size_t i = 0; i < ev.size(); i += 2)
            sigma.push_back(std::sqrt(std::max(0.0, 0.5 * (ev[i] + ev[i + 1]))));
        std::sort(sigma.rbegin(), sigma.rend());
        const std::size_t keep = std::min(rows, n);
        sigma.resize(keep);
        return sigma;
    }

    inline int rank(const std::vector<double> &sigma, double K)
    {
        int r = 0;
        for (double s : sigma)
            if (s > sigma.front() / K)
                ++r;
        return r;
    }

    // Gaussian elimination with partial pivoting.
    inline std::vector<double> solve(std::vector<std::vector<double>> a, std::vector<double> b)
    {
        const std::size_t n = b.size();
        for (std::size_t col = 0; col < n; ++col)
        {
            std::size_t piv = col;
            for (std::size_t r = col + 1; r < n; ++r)
                if (std::abs(a[r][col]) > std::abs(a[piv][col]))
                    piv = r;
            std::swap(a[col], a[piv]);
            std::swap(b[col], b[piv]);
            for (std::size_t r = col + 1; r < n; ++r)
            {
                const double f = a[r][col] / a[col][col];
                for (std::size_t k = col; k < n; ++k)
                    a[r][k] -= f * a[col][k];
                b[r] -= f * b[col];
            }
        }
        std::vector<double> x(n);
        for (std::size_t i = n; i-- > 0;)
        {
            double s = b[i];
            for (std::size_t k = i + 1; k < n; ++k)
                s -= a[i][k] * x[k];
            x[i] = s / a[i][i];
        }
        return x;
    }

    // Free-space received power in dBm.
    inline double friis_dbm(double distance_m, double frequency_hz, double power_w)
    {
        const double lambda = c0 / frequency_hz;
        return 10.0 * std::log10(power_w * 1000.0) + 20.0 * std::log10(lambda / (4.0 * pi * distance_m));
    }

    // eps' - j eps'' from the P.2040 fit parameters.
    inline std::complex<double> itu_permittivity(double a, double b, double c, double d, double f_hz)
    {
        const double g = f_hz / 1e9;
        return {a * std::pow(g, b), -(c * std::pow(g, d)) / (2.0 * pi * eps0 * f_hz)};
    }

    // Reflection off a half space for the field component lying in the plane of incidence,
    // written with the sign that reduces to (1 - sqrt(eps)) / (1 + sqrt(eps)) at normal incidence.
    inline std::complex<double> gamma_parallel(std::complex<double> eps, double theta)
    {
        const std::complex<double> root = std::sqrt(eps - std::sin(theta) * std::sin(theta));
        return (root - eps * std::cos(theta)) / (root + eps * std::cos(theta));
    }

    inline std::complex<double> gamma_perpendicular(std::complex<double> eps, double theta)
    {
        const std::complex<double> root = std::sqrt(eps - std::sin(theta) * std::sin(theta));
        return (std::cos(theta) - root) / (std::cos(theta) + root);
    }

    struct P3
    {
        double x, y, z;
    };

    inline P3 unit(P3 a, P3 b)
    {
        const double dx = b.x - a.x, dy = b.y - a.y, dz = b.z - a.z;
        const double n = std::sqrt(dx * dx + dy * dy + dz * dz);
        return {dx / n, dy / n, dz / n};
    }

    inline double dist(P3 a, P3 b)
    {
        return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) + (a.z - b.z) * (a.z - b.z));
    }

    // LoS plus ground bounce over a flat half space, vertical element field, uniform linear
    // arrays along `axis` with half-wavelength spacing. Built from closed-form geometry.
    inline Eigen::MatrixXcd two_ray_channel(P3 tx, P3 rx, int n_tx, int n_rx, P3 axis, std::complex<double> ground_eps,
                                            double f_hz)
    {
        const double lambda = c0 / f_hz;
        const double k = 2.0 * pi / lambda;
        const auto steer = [&](int n, P3 dir) {
            Eigen::VectorXcd v(n);
            const double proj = axis.x * dir.x + axis.y * dir.y + axis.z * dir.z;
            for (int e = 0; e < n; ++e)
                v(e) = std::polar(1.0, k * e * 0.5 * lambda * proj);
            return v;
        };
        Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n_rx, n_tx);

        const double d1 = dist(tx, rx);
        h += (lambda / (4 * pi * d1)) * std::polar(1.0, -k * d1) * steer(n_rx, unit(rx, tx)) *
             steer(n_tx, unit(tx, rx)).adjoint();

        // Specular point on z = 0 from similar triangles.
        const double s = tx.z / (tx.z + rx.z);
        const P3 p{tx.x + s * (rx.x - tx.x), tx.y + s * (rx.y - tx.y), 0.0};
        const double d2 = dist(tx, p) + dist(p, rx);
        const double theta = std::acos((tx.z + rx.z) / d2); // from the surface normal
        const std::complex<double> g = gamma_parallel(ground_eps, theta) * (lambda / (4 * pi * d2)) * std::polar(1.0, -k * d2);
        h += g * steer(n_rx, unit(rx, p)) * steer(n_tx, unit(tx, p)).adjoint();
        return h;
    }

} // namespace oracle

#endif

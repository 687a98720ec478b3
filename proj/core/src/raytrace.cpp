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

#include "uavrank/raytrace.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "uavrank/error.hpp"

namespace uavrank
{
    std::complex<double> fresnel_reflection(std::complex<double> eps_r, double incidence_angle,
                                            FresnelPolarization pol)
    {
        const double c = std::cos(incidence_angle);
        const double s = std::sin(incidence_angle);
        const std::complex<double> root = std::sqrt(eps_r - s * s);
        if (pol == FresnelPolarization::te)
            return (c - root) / (c + root);
        return (root - eps_r * c) / (root + eps_r * c);
    }

    namespace
    {
        inline double coord(Vec3 p, int axis) { return axis == 0 ? p.x : (axis == 1 ? p.y : p.z); }
        inline void set_coord(Vec3 &p, int axis, double v) { (axis == 0 ? p.x : (axis == 1 ? p.y : p.z)) = v; }

        // Parameter intervals of the segment where a quadratic q(t) <= 0 and lo <= z(t) <= hi,
        // returned as total length fraction. Works for any convex region bounded by q and the slab.
        template <typename Inside>
        double inside_fraction(double t_lo, double t_hi, double qa, double qb, double qc, Inside inside)
        {
            if (!(t_hi > t_lo))
                return 0.0;
            std::array<double, 4> cand{t_lo, t_hi, t_lo, t_lo};
            std::size_t n = 2;
            if (std::abs(qa) > 1e-14)
            {
                const double disc = qb * qb - 4.0 * qa * qc;
                if (disc >= 0.0)
                {
                    const double r = std::sqrt(disc);
                    cand[n++] = (-qb - r) / (2.0 * qa);
                    cand[n++] = (-qb + r) / (2.0 * qa);
                }
            }
            else if (std::abs(qb) > 1e-14)
            {
                cand[n++] = -qc / qb;
            }
            for (std::size_t i = 0; i < n; ++i)
                cand[i] = std::clamp(cand[i], t_lo, t_hi);
            std::sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(n));
            double total = 0.0;
            for (std::size_t i = 0; i + 1 < n; ++i)
            {
                const double span = cand[i + 1] - cand[i];
                if (span > 0.0 && inside(0.5 * (cand[i] + cand[i + 1])))
                    total += span;
            }
            return total;
        }

        // Clip [0, 1] to the parameter range where z(t) lies in [z_lo, z_hi].
        bool clip_to_slab(const Segment &s, double z_lo, double z_hi, double &t_lo, double &t_hi)
        {
            t_lo = 0.0;
            t_hi = 1.0;
            const double dz = s.b.z - s.a.z;
            if (std::abs(dz) < 1e-15)
                return s.a.z >= z_lo && s.a.z <= z_hi;
            double t0 = (z_lo - s.a.z) / dz;
            double t1 = (z_hi - s.a.z) / dz;
            if (t0 > t1)
                std::swap(t0, t1);
            t_lo = std::max(t_lo, t0);
            t_hi = std::min(t_hi, t1);
            return t_hi > t_lo;
        }

        bool near_in_plan(const Segment &s, Vec2 centre, double radius)
        {
            const double x0 = std::min(s.a.x, s.b.x), x1 = std::max(s.a.x, s.b.x);
            const double y0 = std::min(s.a.y, s.b.y), y1 = std::max(s.a.y, s.b.y);
            return centre.x + radius >= x0 && centre.x - radius <= x1 && centre.y + radius >= y0 &&
                   centre.y - radius <= y1;
        }
    } // namespace

    double canopy_chord(const Segment &s, const Tree &tree)
    {
        const double z_base = tree.trunk_height;
        const double z_apex = tree.total_height();
        if (std::min(s.a.z, s.b.z) > z_apex || std::max(s.a.z, s.b.z) < z_base)
            return 0.0;
        if (!near_in_plan(s, tree.position, tree.canopy_base_radius))
            return 0.0;
        double t_lo = 0.0, t_hi = 1.0;
        if (!clip_to_slab(s, z_base, z_apex, t_lo, t_hi))
            return 0.0;

        const double k = tree.canopy_base_radius / tree.canopy_height;
        const Vec3 d = s.b - s.a;
        const double px = s.a.x - tree.position.x, py = s.a.y - tree.position.y;
        const double w0 = z_apex - s.a.z;
        const double qa = d.x * d.x + d.y * d.y - k * k * d.z * d.z;
        const double qb = 2.0 * (px * d.x + py * d.y) + 2.0 * k * k * w0 * d.z;
        const double qc = px * px + py * py - k * k * w0 * w0;
        const auto inside = [&](double t) {
            const double x = px + t * d.x, y = py + t * d.y, w = w0 - t * d.z;
            return w >= 0.0 && x * x + y * y <= k * k * w * w;
        };
        return inside_fraction(t_lo, t_hi, qa, qb, qc, inside) * norm(d);
    }

    bool hits_trunk(const Segment &s, const Tree &tree)
    {
        if (std::min(s.a.z, s.b.z) > tree.trunk_height)
            return false;
        if (!near_in_plan(s, tree.position, tree.trunk_radius))
            return false;
        double t_lo = 0.0, t_hi = 1.0;
        if (!clip_to_slab(s, 0.0, tree.trunk_height, t_lo, t_hi))
            return false;
        const Vec3 d = s.b - s.a;
        const double px = s.a.x - tree.position.x, py = s.a.y - tree.position.y;
        const double r = tree.trunk_radius;
        const double qa = d.x * d.x + d.y * d.y;
        const double qb = 2.0 * (px * d.x + py * d.y);
        const double qc = px * px + py * py - r * r;
        const auto inside = [&](double t) {
            const double x = px + t * d.x, y = py + t * d.y;
            return x * x + y * y <= r * r;
        };
        return inside_fraction(t_lo, t_hi, qa, qb, qc, inside) * norm(d) > kOcclusionTolerance;
    }

    double foliage_loss(const Segment &segment, std::span<const Tree> trees)
    {
        double db = 0.0;
        for (const auto &tree : trees)
        {
            if (hits_trunk(segment, tree))
                return std::numeric_limits<double>::infinity();
            db += canopy_chord(segment, tree) * tree.attenuation_db_per_m;
        }
        return db;
    }

    std::complex<double> path_gain(const RayPath &p, const Scene &s)
    {
        const double lambda = s.wavelength();
        const double spreading = lambda / (4.0 * kPi * p.length);
        const double foliage = std::pow(10.0, -p.foliage_db / 20.0);
        const std::complex<double> phase = std::polar(1.0, -2.0 * kPi * p.length / lambda);
        return spreading * foliage * p.reflection_product * phase;
    }

    Tracer::Tracer(const Scene &scene) : scene_(scene), lambda_(scene.wavelength())
    {
        const bool vertical = scene.polarization == Polarization::vertical;
        const FresnelPolarization on_horizontal = vertical ? FresnelPolarization::tm : FresnelPolarization::te;
        const FresnelPolarization on_wall = vertical ? FresnelPolarization::te : FresnelPolarization::tm;

        Facet ground;
        ground.axis = 2;
        ground.offset = 0.0;
        ground.side = 1.0;
        ground.bounded = false;
        ground.eps = permittivity(scene.material(scene.ground_material), scene.frequency_hz);
        ground.pol = on_horizontal;
        facets_.push_back(ground);

        for (const auto &b : scene.buildings)
        {
            const auto eps = permittivity(scene.material(b.material), scene.frequency_hz);
            const double x0 = b.footprint.x, x1 = b.footprint.x + b.footprint.w;
            const double y0 = b.footprint.y, y1 = b.footprint.y + b.footprint.h;
            const auto wall = [&](int axis, double offset, double side, double lo0, double hi0) {
                Facet f;
                f.axis = axis;
                f.offset = offset;
                f.side = side;
                // remaining axes in order: for axis 0 -> (y, z), for axis 1 -> (x, z)
                f.lo[0] = lo0;
                f.hi[0] = hi0;
                f.lo[1] = 0.0;
                f.hi[1] = b.height;
                f.eps = eps;
                f.pol = on_wall;
                facets_.push_back(f);
            };
            wall(0, x0, -1.0, y0, y1);
            wall(0, x1, 1.0, y0, y1);
            wall(1, y0, -1.0, x0, x1);
            wall(1, y1, 1.0, x0, x1);
            Facet roof;
            roof.axis = 2;
            roof.offset = b.height;
            roof.side = 1.0;
            roof.lo[0] = x0;
            roof.hi[0] = x1;
            roof.lo[1] = y0;
            roof.hi[1] = y1;
            roof.eps = eps;
            roof.pol = on_horizontal;
            facets_.push_back(roof);
        }
    }

    Vec3 Tracer::mirror(Vec3 p, const Facet &f) const
    {
        set_coord(p, f.axis, 2.0 * f.offset - coord(p, f.axis));
        return p;
    }

    double Tracer::signed_distance(Vec3 p, const Facet &f) const
    {
        return f.side * (coord(p, f.axis) - f.offset);
    }

    bool Tracer::reflection_point(Vec3 image, Vec3 target, const Facet &f, Vec3 &out) const
    {
        const double ci = coord(image, f.axis), ct = coord(target, f.axis);
        if (std::abs(ct - ci) < 1e-12)
            return false;
        const double t = (f.offset - ci) / (ct - ci);
        if (!(t > 0.0 && t < 1.0))
            return false;
        out = image + t * (target - image);
        set_coord(out, f.axis, f.offset);
        if (!f.bounded)
            return true;
        int k = 0;
        for (int axis = 0; axis < 3; ++axis)
        {
            if (axis == f.axis)
                continue;
            const double c = coord(out, axis);
            if (c < f.lo[k] - 1e-9 || c > f.hi[k] + 1e-9)
                return false;
            ++k;
        }
        return true;
    }

    bool Tracer::segment_blocked(const Segment &s, double &foliage_db) const
    {
        const Vec3 d = s.b - s.a;
        for (const auto &b : scene_.buildings)
        {
            const double eps = kOcclusionTolerance;
            const double lo[3] = {b.footprint.x + eps, b.footprint.y + eps, eps};
            const double hi[3] = {b.footprint.x + b.footprint.w - eps, b.footprint.y + b.footprint.h - eps,
                                  b.height - eps};
            const double origin[3] = {s.a.x, s.a.y, s.a.z};
            const double dir[3] = {d.x, d.y, d.z};
            double t_enter = 0.0, t_exit = 1.0;
            bool miss = false;
            for (int axis = 0; axis < 3 && !miss; ++axis)
            {
                if (std::abs(dir[axis]) < 1e-15)
                {
                    if (origin[axis] <= lo[axis] || origin[axis] >= hi[axis])
                        miss = true;
                    continue;
                }
                double t0 = (lo[axis] - origin[axis]) / dir[axis];
                double t1 = (hi[axis] - origin[axis]) / dir[axis];
                if (t0 > t1)
                    std::swap(t0, t1);
                t_enter = std::max(t_enter, t0);
                t_exit = std::min(t_exit, t1);
                if (!(t_exit > t_enter))
                    miss = true;
            }
            if (!miss)
                return true;
        }
        const double loss = foliage_loss(s, scene_.trees);
        if (!std::isfinite(loss))
            return true;
        foliage_db += loss;
        return false;
    }

    bool Tracer::finish_path(std::vector<Vec3> vertices, std::vector<const Facet *> facets, RayPath &out) const
    {
        // Each reflection needs both neighbours strictly in front of its facet.
        for (std::size_t k = 0; k < facets.size(); ++k)
        {
            if (signed_distance(vertices[k], *facets[k]) <= 1e-9 || signed_distance(vertices[k + 2], *facets[k]) <= 1e-9)
                return false;
        }
        double foliage_db = 0.0;
        double length = 0.0;
        for (std::size_t k = 0; k + 1 < vertices.size(); ++k)
        {
            const Segment seg{vertices[k], vertices[k + 1]};
            const double len = distance(seg.a, seg.b);
            if (!(len > 0.0))
                return false;
            if (segment_blocked(seg, foliage_db))
                return false;
            length += len;
        }
        std::complex<double> product{1.0, 0.0};
        for (std::size_t k = 0; k < facets.size(); ++k)
        {
            const Vec3 incoming = normalized(vertices[k] - vertices[k + 1]);
            Vec3 normal{};
            set_coord(normal, facets[k]->axis, facets[k]->side);
            const double cos_theta = std::clamp(dot(incoming, normal), 0.0, 1.0);
            product *= fresnel_reflection(facets[k]->eps, std::acos(cos_theta), facets[k]->pol);
        }

        out.kind = facets.empty() ? PathKind::los : PathKind::reflected;
        out.order = static_cast<int>(facets.size());
        out.length = length;
        out.delay = length / kSpeedOfLight;
        out.aod = direction_angles(normalized(vertices[1] - vertices[0]));
        out.aoa = direction_angles(normalized(vertices[vertices.size() - 2] - vertices.back()));
        out.reflection_product = product;
        out.foliage_db = foliage_db;
        out.vertices = std::move(vertices);
        out.gain = path_gain(out, scene_);
        return true;
    }

    std::vector<RayPath> Tracer::trace(Vec3 tx, Vec3 rx, int max_reflections) const
    {
        if (max_reflections < 0 || max_reflections > 2)
            throw InputError(fmt::format("max_reflections must be 0, 1 or 2 (got {})", max_reflections));
        rx.z = std::max(rx.z, kMinReceiverHeight);
        if (tx == rx)
            throw InputError("transmitter and receiver coincide");

        std::vector<RayPath> paths;
        RayPath path;
        if (finish_path({tx, rx}, {}, path))
            paths.push_back(std::move(path));
        if (max_reflections < 1)
            return paths;

        for (const auto &f : facets_)
        {
            Vec3 p;
            if (!reflection_point(mirror(tx, f), rx, f, p))
                continue;
            RayPath r;
            if (finish_path({tx, p, rx}, {&f}, r))
                paths.push_back(std::move(r));
        }
        if (max_reflections < 2)
            return paths;

        for (const auto &f1 : facets_)
        {
            const Vec3 image1 = mirror(tx, f1);
            for (const auto &f2 : facets_)
            {
                if (&f1 == &f2)
                    continue;
                const Vec3 image2 = mirror(image1, f2);
                Vec3 p2, p1;
                if (!reflection_point(image2, rx, f2, p2))
                    continue;
                if (!reflection_point(image1, p2, f1, p1))
                    continue;
                RayPath r;
                if (finish_path({tx, p1, p2, rx}, {&f1, &f2}, r))
                    paths.push_back(std::move(r));
            }
        }
        return paths;
    }

    std::vector<RayPath> trace_paths(const Scene &s, Vec3 tx, Vec3 rx, int max_reflections)
    {
        return Tracer(s).trace(tx, rx, max_reflections);
    }

    std::string paths_to_csv(std::span<const RayPath> paths)
    {
        std::string out = "kind,order,length_m,delay_s,aod_az,aod_el,aoa_az,aoa_el,gain_re,gain_im\n";
        for (const auto &p : paths)
        {
            out += fmt::format("{},{},{:.9f},{:.12e},{:.9f},{:.9f},{:.9f},{:.9f},{:.12e},{:.12e}\n",
                               p.kind == PathKind::los ? "los" : "reflected", p.order, p.length, p.delay,
                               p.aod.azimuth, p.aod.elevation, p.aoa.azimuth, p.aoa.elevation, p.gain.real(),
                               p.gain.imag());
        }
        return out;
    }

} // namespace uavrank

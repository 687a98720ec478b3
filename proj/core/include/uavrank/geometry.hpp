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

#ifndef UAVRANK_GEOMETRY_HPP
#define UAVRANK_GEOMETRY_HPP

#include <cmath>

namespace uavrank
{
    // Local ENU frame in meters, origin at the scene extent's southwest corner.
    struct Vec2
    {
        double x = 0.0;
        double y = 0.0;

        friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
        friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
        friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
        friend constexpr bool operator==(Vec2, Vec2) = default;
    };

    struct Vec3
    {
        double x = 0.0;
        double y = 0.0;
        double z = 0.0;

        friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
        friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
        friend constexpr Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
        friend constexpr Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
        friend constexpr bool operator==(Vec3, Vec3) = default;
    };

    constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
    constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
    constexpr Vec3 cross(Vec3 a, Vec3 b)
    {
        return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
    }
    inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
    inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
    inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }
    inline double distance(Vec3 a, Vec3 b) { return norm(a - b); }
    inline Vec3 normalized(Vec3 a) { return (1.0 / norm(a)) * a; }
    constexpr Vec2 horizontal(Vec3 a) { return {a.x, a.y}; }
    constexpr Vec3 at_height(Vec2 p, double z) { return {p.x, p.y, z}; }

    // Azimuth from +x towards +y and elevation above the horizontal plane, radians.
    struct Angles
    {
        double azimuth = 0.0;
        double elevation = 0.0;
        friend constexpr bool operator==(Angles, Angles) = default;
    };

    inline Angles direction_angles(Vec3 unit)
    {
        return {std::atan2(unit.y, unit.x), std::atan2(unit.z, std::hypot(unit.x, unit.y))};
    }

    inline Vec3 unit_from_angles(Angles a)
    {
        const double c = std::cos(a.elevation);
        return {c * std::cos(a.azimuth), c * std::sin(a.azimuth), std::sin(a.elevation)};
    }

    inline constexpr double kPi = 3.14159265358979323846;
    inline constexpr double kSpeedOfLight = 299792458.0;
    inline constexpr double kVacuumPermittivity = 8.8541878128e-12;

} // namespace uavrank

#endif

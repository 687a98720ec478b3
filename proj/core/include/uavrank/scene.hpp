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

#ifndef UAVRANK_SCENE_HPP
#define UAVRANK_SCENE_HPP

#include <complex>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "uavrank/array.hpp"
#include "uavrank/geometry.hpp"

namespace uavrank
{
    // ITU-R P.2040 style material: eps' = a * f_GHz^b, sigma = c * f_GHz^d [S/m].
    struct Material
    {
        std::string name;
        double a = 1.0;
        double b = 0.0;
        double c = 0.0;
        double d = 0.0;

        friend bool operator==(const Material &, const Material &) = default;
    };

    // Constants transcribed from ITU-R P.2040 Table 3. Names follow the usual "itu_" presets.
    const std::vector<Material> &builtin_materials();

    // Complex relative permittivity eps' - j eps'' at frequency f (Hz). Requires f > 0.
    std::complex<double> permittivity(const Material &m, double frequency_hz);

    // Axis-aligned rectangle given by its southwest corner and size.
    struct Rect
    {
        double x = 0.0;
        double y = 0.0;
        double w = 0.0;
        double h = 0.0;

        constexpr bool contains(Vec2 p) const { return p.x >= x && p.x <= x + w && p.y >= y && p.y <= y + h; }
        friend bool operator==(const Rect &, const Rect &) = default;
    };

    struct Building
    {
        Rect footprint;
        double height = 0.0;
        std::string material;

        friend bool operator==(const Building &, const Building &) = default;
    };

    // Vertical trunk cylinder with a cone canopy on top. Defaults give a 20 m tall tree, 10 m across.
    struct Tree
    {
        Vec2 position;
        double trunk_height = 5.0;
        double trunk_radius = 0.5;
        double canopy_height = 15.0;
        double canopy_base_radius = 5.0;
        double attenuation_db_per_m = 1.0;
        std::string trunk_material = "itu_wood";

        double total_height() const { return trunk_height + canopy_height; }
        friend bool operator==(const Tree &, const Tree &) = default;
    };

    struct Tower
    {
        int id = 0;
        Vec2 position;
        double height = 10.0;
        ArrayConfig array;

        friend bool operator==(const Tower &, const Tower &) = default;
    };

    // Orientation of the (scalar) element field. Vertical elements see TM on horizontal facets
    // and TE on walls; horizontal elements the reverse.
    enum class Polarization
    {
        vertical,
        horizontal
    };

    struct Scene
    {
        double frequency_hz = 3.4e9;
        Vec2 extent{1080.0, 2130.0};
        double grid_spacing_m = 30.0;
        std::vector<double> altitudes_m{30, 40, 50, 60, 70, 80, 90, 100, 110};
        double tx_power_w = 10.0;
        std::vector<Material> materials; // declared in the document; builtins are looked up as a fallback
        std::string ground_material = "itu_medium_dry_ground";
        std::vector<Building> buildings;
        std::vector<Tree> trees;
        std::vector<Tower> towers;
        ArrayConfig rx_array{4, 0.5, {0.0, 1.0, 0.0}};
        Polarization polarization = Polarization::vertical;

        double wavelength() const { return kSpeedOfLight / frequency_hz; }

        // Declared materials shadow builtins. Throws InputError for unknown names.
        const Material &material(std::string_view name) const;
        const Tower &tower(int id) const;

        friend bool operator==(const Scene &, const Scene &) = default;
    };

    // Parses and validates a JSON scene document. Throws InputError naming the line or field at fault.
    Scene load_scene(std::string_view text);
    Scene load_scene_file(const std::filesystem::path &path);

    // Inverse of load_scene: serialize_scene(load_scene(t)) parses back to an equal Scene.
    std::string serialize_scene(const Scene &s);

    // Throws InputError on any invariant violation.
    void validate(const Scene &s);

    // Uniform receiver grid. Cell index runs west to east along x, then one row north.
    struct GridSpec
    {
        int nx = 0;
        int ny = 0;
        double spacing = 1.0;
        Vec2 origin;

        int size() const { return nx * ny; }
        Vec2 position(int index) const
        {
            return {origin.x + spacing * (index % nx), origin.y + spacing * (index / nx)};
        }
        int column(int index) const { return index % nx; }
        int row(int index) const { return index / nx; }
        friend bool operator==(const GridSpec &, const GridSpec &) = default;
    };

    // floor(extent / spacing) points per axis, first point at the southwest corner.
    // Throws InputError when the extent is smaller than one grid cell.
    GridSpec grid_spec(const Scene &s);
    std::vector<Vec2> grid_positions(const Scene &s);

} // namespace uavrank

#endif

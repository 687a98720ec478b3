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

#include "uavrank/scene.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"
#include "uavrank/error.hpp"

namespace uavrank
{
    using nlohmann::json;

    ArrayConfig validated(ArrayConfig a)
    {
        if (a.elements < 1)
            throw InputError(fmt::format("array: elements must be >= 1 (got {})", a.elements));
        if (!(a.spacing_wavelengths > 0.0))
            throw InputError("array: spacing_wavelengths must be > 0");
        const double n = norm(a.axis);
        if (!(n > 0.0) || !std::isfinite(n))
            throw InputError("array: axis must be a non-zero finite vector");
        a.axis = (1.0 / n) * a.axis;
        return a;
    }

    const std::vector<Material> &builtin_materials()
    {
        static const std::vector<Material> table{
            {"itu_concrete", 5.24, 0.0, 0.0462, 0.7822},
            {"itu_brick", 3.91, 0.0, 0.0238, 0.16},
            {"itu_wood", 1.99, 0.0, 0.0047, 1.0718},
            {"itu_glass", 6.31, 0.0, 0.0036, 1.3394},
            {"itu_very_dry_ground", 3.0, 0.0, 0.00015, 2.52},
            {"itu_medium_dry_ground", 15.0, -0.1, 0.035, 1.63},
            {"itu_wet_ground", 30.0, -0.4, 0.15, 1.30},
        };
        return table;
    }

    std::complex<double> permittivity(const Material &m, double frequency_hz)
    {
        const double f_ghz = frequency_hz / 1e9;
        const double real = m.a * std::pow(f_ghz, m.b);
        const double conductivity = m.c * std::pow(f_ghz, m.d);
        const double imag = conductivity / (2.0 * kPi * kVacuumPermittivity * frequency_hz);
        return {real, -imag};
    }

    const Material &Scene::material(std::string_view name) const
    {
        for (const auto &m : materials)
            if (m.name == name)
                return m;
        for (const auto &m : builtin_materials())
            if (m.name == name)
                return m;
        throw InputError(fmt::format("unknown material reference '{}'", name));
    }

    const Tower &Scene::tower(int id) const
    {
        for (const auto &t : towers)
            if (t.id == id)
                return t;
        throw InputError(fmt::format("unknown tower id {}", id));
    }

    namespace
    {
        std::size_t line_of(std::string_view text, std::size_t byte)
        {
            byte = std::min(byte, text.size());
            return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
        }

        // Field accessors that report the dotted path of the offending field.
        class Reader
        {
        public:
            Reader(const json &node, std::string path) : node_(node), path_(std::move(path)) {}

            bool has(const char *key) const { return node_.contains(key); }

            double number(const char *key) const
            {
                const json &v = at(key);
                if (!v.is_number())
                    throw InputError(fmt::format("field '{}': expected a number", field(key)));
                return v.get<double>();
            }
            double number(const char *key, double fallback) const { return has(key) ? number(key) : fallback; }

            int integer(const char *key) const
            {
                const json &v = at(key);
                if (!v.is_number_integer())
                    throw InputError(fmt::format("field '{}': expected an integer", field(key)));
                return v.get<int>();
            }
            int integer(const char *key, int fallback) const { return has(key) ? integer(key) : fallback; }

            std::string string(const char *key) const
            {
                const json &v = at(key);
                if (!v.is_string())
                    throw InputError(fmt::format("field '{}': expected a string", field(key)));
                return v.get<std::string>();
            }
            std::string string(const char *key, const std::string &fallback) const { return has(key) ? string(key) : fallback; }

            const json &array(const char *key) const
            {
                const json &v = at(key);
                if (!v.is_array())
                    throw InputError(fmt::format("field '{}': expected an array", field(key)));
                return v;
            }

            std::vector<double> numbers(const char *key) const
            {
                std::vector<double> out;
                const json &arr = array(key);
                for (std::size_t i = 0; i < arr.size(); ++i)
                {
                    if (!arr[i].is_number())
                        throw InputError(fmt::format("field '{}[{}]': expected a number", field(key), i));
                    out.push_back(arr[i].get<double>());
                }
                return out;
            }

            Reader child(const char *key) const
            {
                const json &v = at(key);
                if (!v.is_object())
                    throw InputError(fmt::format("field '{}': expected an object", field(key)));
                return Reader(v, field(key));
            }

            std::string field(const char *key) const { return path_.empty() ? std::string(key) : path_ + "." + key; }

        private:
            const json &at(const char *key) const
            {
                if (!node_.contains(key))
                    throw InputError(fmt::format("field '{}': missing", field(key)));
                return node_.at(key);
            }

            const json &node_;
            std::string path_;
        };

        ArrayConfig read_array(const Reader &r, const std::string &where)
        {
            ArrayConfig a;
            a.elements = r.integer("elements", a.elements);
            a.spacing_wavelengths = r.number("spacing_wavelengths", a.spacing_wavelengths);
            if (r.has("axis"))
            {
                const auto axis = r.numbers("axis");
                if (axis.size() != 3)
                    throw InputError(fmt::format("field '{}': expected 3 components", r.field("axis")));
                a.axis = {axis[0], axis[1], axis[2]};
            }
            try
            {
                return validated(a);
            }
            catch (const InputError &e)
            {
                throw InputError(fmt::format("{}: {}", where, e.what()));
            }
        }

        json write_array(const ArrayConfig &a)
        {
            return {{"elements", a.elements},
                    {"spacing_wavelengths", a.spacing_wavelengths},
                    {"axis", {a.axis.x, a.axis.y, a.axis.z}}};
        }

        void require(bool ok, const std::string &message)
        {
            if (!ok)
                throw InputError(message);
        }
    } // namespace

    void validate(const Scene &s)
    {
        require(s.frequency_hz > 0.0, "frequency_hz: must be > 0");
        require(s.extent.x > 0.0 && s.extent.y > 0.0, "extent_m: both sides must be > 0");
        require(s.grid_spacing_m > 0.0, "grid_spacing_m: must be > 0");
        require(s.tx_power_w > 0.0, "tx_power_w: must be > 0");
        require(!s.altitudes_m.empty(), "altitudes_m: at least one altitude required");
        for (std::size_t i = 0; i < s.altitudes_m.size(); ++i)
        {
            require(s.altitudes_m[i] > 0.0, fmt::format("altitudes_m[{}]: must be > 0", i));
            if (i > 0)
                require(s.altitudes_m[i] > s.altitudes_m[i - 1], "altitudes_m: must be strictly increasing");
        }

        std::set<std::string> names;
        for (std::size_t i = 0; i < s.materials.size(); ++i)
        {
            const auto &m = s.materials[i];
            require(!m.name.empty(), fmt::format("materials[{}].name: must not be empty", i));
            require(names.insert(m.name).second, fmt::format("materials[{}].name: duplicate material '{}'", i, m.name));
            require(m.a > 0.0, fmt::format("materials[{}].a: must be > 0", i));
            require(m.d >= 0.0, fmt::format("materials[{}].d: must be >= 0", i));
        }
        (void)s.material(s.ground_material);

        for (std::size_t i = 0; i < s.buildings.size(); ++i)
        {
            const auto &b = s.buildings[i];
            require(b.footprint.w > 0.0 && b.footprint.h > 0.0, fmt::format("buildings[{}]: footprint must have positive area", i));
            require(b.height > 0.0, fmt::format("buildings[{}].height: must be > 0", i));
            (void)s.material(b.material);
        }
        for (std::size_t i = 0; i < s.trees.size(); ++i)
        {
            const auto &t = s.trees[i];
            require(t.trunk_height > 0.0 && t.trunk_radius > 0.0 && t.canopy_height > 0.0 &&
                        t.canopy_base_radius > 0.0,
                    fmt::format("trees[{}]: all dimensions must be > 0", i));
            require(t.attenuation_db_per_m >= 0.0, fmt::format("trees[{}].attenuation_db_per_m: must be >= 0", i));
        }
        std::set<int> ids;
        const Rect extent{0.0, 0.0, s.extent.x, s.extent.y};
        for (std::size_t i = 0; i < s.towers.size(); ++i)
        {
            const auto &t = s.towers[i];
            require(ids.insert(t.id).second, fmt::format("towers[{}].id: duplicate tower id {}", i, t.id));
            require(t.height > 0.0, fmt::format("towers[{}].height: must be > 0", i));
            require(extent.contains(t.position), fmt::format("towers[{}]: tower outside extent", i));
            (void)validated(t.array);
        }
        (void)validated(s.rx_array);
    }

    Scene load_scene(std::string_view text)
    {
        json doc;
        try
        {
            doc = json::parse(text.begin(), text.end());
        }
        catch (const json::parse_error &e)
        {
            throw InputError(fmt::format("parse error at line {}: {}", line_of(text, e.byte), e.what()));
        }
        if (!doc.is_object())
            throw InputError("parse error at line 1: scene document must be a JSON object");

        const Reader r(doc, "");
        Scene s;
        s.frequency_hz = r.number("frequency_hz", s.frequency_hz);
        if (r.has("extent_m"))
        {
            const auto e = r.numbers("extent_m");
            if (e.size() != 2)
                throw InputError("field 'extent_m': expected [width, height]");
            s.extent = {e[0], e[1]};
        }
        s.grid_spacing_m = r.number("grid_spacing_m", s.grid_spacing_m);
        if (r.has("altitudes_m"))
            s.altitudes_m = r.numbers("altitudes_m");
        s.tx_power_w = r.number("tx_power_w", s.tx_power_w);

        if (r.has("materials"))
        {
            const json &arr = r.array("materials");
            for (std::size_t i = 0; i < arr.size(); ++i)
            {
                const Reader m(arr[i], fmt::format("materials[{}]", i));
                s.materials.push_back({m.string("name"), m.number("a"), m.number("b"), m.number("c"), m.number("d")});
            }
        }
        s.ground_material = r.string("ground_material", s.ground_material);

        if (r.has("buildings"))
        {
            const json &arr = r.array("buildings");
            for (std::size_t i = 0; i < arr.size(); ++i)
            {
                const Reader b(arr[i], fmt::format("buildings[{}]", i));
                s.buildings.push_back({{b.number("x"), b.number("y"), b.number("w"), b.number("h")},
                                       b.number("height"),
                                       b.string("material", "itu_concrete")});
            }
        }
        if (r.has("trees"))
        {
            const json &arr = r.array("trees");
            for (std::size_t i = 0; i < arr.size(); ++i)
            {
                const Reader t(arr[i], fmt::format("trees[{}]", i));
                Tree tree;
                tree.position = {t.number("x"), t.number("y")};
                tree.trunk_height = t.number("trunk_height", tree.trunk_height);
                tree.trunk_radius = t.number("trunk_radius", tree.trunk_radius);
                tree.canopy_height = t.number("canopy_height", tree.canopy_height);
                tree.canopy_base_radius = t.number("canopy_base_radius", tree.canopy_base_radius);
                tree.attenuation_db_per_m = t.number("attenuation_db_per_m", tree.attenuation_db_per_m);
                tree.trunk_material = t.string("trunk_material", tree.trunk_material);
                s.trees.push_back(tree);
            }
        }
        if (r.has("towers"))
        {
            const json &arr = r.array("towers");
            for (std::size_t i = 0; i < arr.size(); ++i)
            {
                const std::string where = fmt::format("towers[{}]", i);
                const Reader t(arr[i], where);
                Tower tower;
                tower.id = t.integer("id");
                tower.position = {t.number("x"), t.number("y")};
                tower.height = t.number("height", tower.height);
                if (t.has("array"))
                    tower.array = read_array(t.child("array"), where + ".array");
                s.towers.push_back(tower);
            }
        }
        if (r.has("rx_array"))
            s.rx_array = read_array(r.child("rx_array"), "rx_array");
        if (r.has("polarization"))
        {
            const std::string p = r.string("polarization");
            if (p == "vertical")
                s.polarization = Polarization::vertical;
            else if (p == "horizontal")
                s.polarization = Polarization::horizontal;
            else
                throw InputError("field 'polarization': expected \"vertical\" or \"horizontal\"");
        }

        validate(s);
        return s;
    }

    Scene load_scene_file(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw InputError(fmt::format("cannot open scene file '{}'", path.string()));
        std::ostringstream buf;
        buf << in.rdbuf();
        return load_scene(buf.str());
    }

    std::string serialize_scene(const Scene &s)
    {
        json doc;
        doc["frequency_hz"] = s.frequency_hz;
        doc["extent_m"] = {s.extent.x, s.extent.y};
        doc["grid_spacing_m"] = s.grid_spacing_m;
        doc["altitudes_m"] = s.altitudes_m;
        doc["tx_power_w"] = s.tx_power_w;
        doc["materials"] = json::array();
        for (const auto &m : s.materials)
            doc["materials"].push_back({{"name", m.name}, {"a", m.a}, {"b", m.b}, {"c", m.c}, {"d", m.d}});
        doc["ground_material"] = s.ground_material;
        doc["buildings"] = json::array();
        for (const auto &b : s.buildings)
            doc["buildings"].push_back({{"x", b.footprint.x},
                                        {"y", b.footprint.y},
                                        {"w", b.footprint.w},
                                        {"h", b.footprint.h},
                                        {"height", b.height},
                                        {"material", b.material}});
        doc["trees"] = json::array();
        for (const auto &t : s.trees)
            doc["trees"].push_back({{"x", t.position.x},
                                    {"y", t.position.y},
                                    {"trunk_height", t.trunk_height},
                                    {"trunk_radius", t.trunk_radius},
                                    {"canopy_height", t.canopy_height},
                                    {"canopy_base_radius", t.canopy_base_radius},
                                    {"attenuation_db_per_m", t.attenuation_db_per_m},
                                    {"trunk_material", t.trunk_material}});
        doc["towers"] = json::array();
        for (const auto &t : s.towers)
            doc["towers"].push_back({{"id", t.id},
                                     {"x", t.position.x},
                                     {"y", t.position.y},
                                     {"height", t.height},
                                     {"array", write_array(t.array)}});
        doc["rx_array"] = write_array(s.rx_array);
        doc["polarization"] = s.polarization == Polarization::vertical ? "vertical" : "horizontal";
        return doc.dump(2) + "\n";
    }

    GridSpec grid_spec(const Scene &s)
    {
        // The small slack keeps exact multiples (1080 / 30) from losing a point to rounding.
        const int nx = static_cast<int>(std::floor(s.extent.x / s.grid_spacing_m + 1e-9));
        const int ny = static_cast<int>(std::floor(s.extent.y / s.grid_spacing_m + 1e-9));
        if (nx < 1 || ny < 1)
            throw InputError(fmt::format("extent {}x{} m is smaller than one grid cell of {} m", s.extent.x,
                                         s.extent.y, s.grid_spacing_m));
        return {nx, ny, s.grid_spacing_m, {0.0, 0.0}};
    }

    std::vector<Vec2> grid_positions(const Scene &s)
    {
        const GridSpec g = grid_spec(s);
        std::vector<Vec2> out;
        out.reserve(static_cast<std::size_t>(g.size()));
        for (int i = 0; i < g.size(); ++i)
            out.push_back(g.position(i));
        return out;
    }

} // namespace uavrank

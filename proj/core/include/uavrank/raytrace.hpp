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

#ifndef UAVRANK_RAYTRACE_HPP
#define UAVRANK_RAYTRACE_HPP

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "uavrank/geometry.hpp"
#include "uavrank/scene.hpp"

namespace uavrank
{
    enum class PathKind
    {
        los,
        reflected
    };

    /// One specular propagation path from transmitter to receiver.
    ///
    /// `vertices` holds tx, the reflection points in order, then rx. `gain` is the complex
    /// narrowband amplitude: free-space spreading, the product of Fresnel coefficients,
    /// foliage attenuation and the propagation phase.
    struct RayPath
    {
        PathKind kind = PathKind::los;
        int order = 0;
        std::vector<Vec3> vertices;
        double length = 0.0;
        double delay = 0.0;
        Angles aod; // departure direction at tx
        Angles aoa; // direction from rx back towards the last vertex
        std::complex<double> reflection_product{1.0, 0.0};
        double foliage_db = 0.0;
        std::complex<double> gain{0.0, 0.0};
    };

    enum class FresnelPolarization
    {
        te,
        tm
    };

    // Fresnel coefficient of a half-space with relative permittivity eps_r. Both polarizations
    // share the sign convention that gives (1 - sqrt(eps)) / (1 + sqrt(eps)) at normal incidence.
    std::complex<double> fresnel_reflection(std::complex<double> eps_r, double incidence_angle,
                                            FresnelPolarization pol);

    struct Segment
    {
        Vec3 a;
        Vec3 b;
    };

    // Canopy chord length times attenuation, summed over trees. A trunk hit returns +inf.
    double foliage_loss(const Segment &segment, std::span<const Tree> trees);

    // Length of `segment` inside the tree's canopy cone, in meters.
    double canopy_chord(const Segment &segment, const Tree &tree);
    bool hits_trunk(const Segment &segment, const Tree &tree);

    // lambda / (4 pi L) * prod(Gamma) * 10^(-foliage/20) * exp(-j 2 pi L / lambda)
    std::complex<double> path_gain(const RayPath &p, const Scene &s);

    // Receivers below this height are lifted to it before tracing.
    inline constexpr double kMinReceiverHeight = 0.5;
    // Segments that only graze a surface within this distance are not blocked.
    inline constexpr double kOcclusionTolerance = 1e-6;

    /// Image-method tracer over the planar facets of a scene (ground, building walls and roofs).
    ///
    /// Construction precomputes facets and material permittivities; trace() is const and
    /// safe to call concurrently.
    class Tracer
    {
    public:
        explicit Tracer(const Scene &scene);

        // Every unblocked specular path with at most `max_reflections` bounces (0, 1 or 2).
        // An empty result means the receiver is out of coverage.
        std::vector<RayPath> trace(Vec3 tx, Vec3 rx, int max_reflections) const;

        std::size_t facet_count() const { return facets_.size(); }

    private:
        struct Facet
        {
            int axis = 2;       // plane is coordinate[axis] == offset
            double offset = 0.0;
            double side = 1.0;  // outward normal is +side along axis
            double lo[2]{};     // bounds on the two remaining axes, in axis order
            double hi[2]{};
            bool bounded = true;
            std::complex<double> eps;
            FresnelPolarization pol = FresnelPolarization::te;
        };

        Vec3 mirror(Vec3 p, const Facet &f) const;
        double signed_distance(Vec3 p, const Facet &f) const;
        bool reflection_point(Vec3 image, Vec3 target, const Facet &f, Vec3 &out) const;
        bool segment_blocked(const Segment &s, double &foliage_db) const;
        bool finish_path(std::vector<Vec3> vertices, std::vector<const Facet *> facets, RayPath &out) const;

        const Scene &scene_;
        double lambda_;
        std::vector<Facet> facets_;
    };

    std::vector<RayPath> trace_paths(const Scene &s, Vec3 tx, Vec3 rx, int max_reflections);

    // CSV with columns kind,order,length_m,delay_s,aod_az,aod_el,aoa_az,aoa_el,gain_re,gain_im.
    std::string paths_to_csv(std::span<const RayPath> paths);

} // namespace uavrank

#endif

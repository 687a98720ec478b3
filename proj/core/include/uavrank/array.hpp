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

#ifndef UAVRANK_ARRAY_HPP
#define UAVRANK_ARRAY_HPP

#include "uavrank/geometry.hpp"

namespace uavrank
{
    // Uniform linear array of isotropic elements. Element k sits at k * spacing * lambda along `axis`.
    struct ArrayConfig
    {
        int elements = 4;
        double spacing_wavelengths = 0.5;
        Vec3 axis{0.0, 1.0, 0.0}; // unit vector

        friend bool operator==(const ArrayConfig &, const ArrayConfig &) = default;
    };

    // Throws InputError unless elements >= 1, spacing > 0 and axis is non-zero; returns a copy with unit axis.
    ArrayConfig validated(ArrayConfig a);

} // namespace uavrank

#endif

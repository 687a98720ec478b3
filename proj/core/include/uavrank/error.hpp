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

#ifndef UAVRANK_ERROR_HPP
#define UAVRANK_ERROR_HPP

#include <stdexcept>
#include <string>

namespace uavrank
{
    // Malformed or invalid user input (scene documents, traces, artifacts, flags).
    class InputError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // A numerical routine could not produce a result (non-convergence, undefined rank).
    class NumericalError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

} // namespace uavrank

#endif

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

#ifndef UAVRANK_PARALLEL_HPP
#define UAVRANK_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace uavrank
{
    // Runs fn(i) for i in [0, n) on up to hardware_concurrency threads. Each index must write
    // only its own output slot. The first exception thrown by any worker is rethrown.
    template <typename Fn>
    void parallel_for(int n, Fn &&fn)
    {
        const int workers = std::min<int>(n, std::max(1u, std::thread::hardware_concurrency()));
        if (workers <= 1)
        {
            for (int i = 0; i < n; ++i)
                fn(i);
            return;
        }
        std::atomic<int> next{0};
        std::exception_ptr error;
        std::mutex error_lock;
        auto work = [&] {
            for (int i = next++; i < n; i = next++)
            {
                try
                {
                    fn(i);
                }
                catch (...)
                {
                    std::lock_guard lock(error_lock);
                    if (!error)
                        error = std::current_exception();
                    next = n;
                }
            }
        };
        std::vector<std::thread> pool;
        for (int t = 1; t < workers; ++t)
            pool.emplace_back(work);
        work();
        for (auto &t : pool)
            t.join();
        if (error)
            std::rethrow_exception(error);
    }

} // namespace uavrank

#endif

// SPDX-License-Identifier: Apache-2.0
//
// dpma: dual-polarized movable-antenna AirComp optimization library
// Copyright (C) 2026 The dpma authors
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

#ifndef DPMA_DETAIL_PARALLEL_HPP
#define DPMA_DETAIL_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace dpma
{
    template <class F>
    void parallel_for(int n, int workers, F &&f)
    {
        const int threads = std::max(1, std::min(workers, n));
        if (threads == 1)
        {
            for (int i = 0; i < n; ++i)
                f(i);
            return;
        }
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t)
            pool.emplace_back(
                [&]
                {
                    for (int i = next++; i < n; i = next++)
                        f(i);
                });
        for (auto &th : pool)
            th.join();
    }
} // namespace dpma

#endif

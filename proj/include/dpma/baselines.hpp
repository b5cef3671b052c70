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

#ifndef DPMA_BASELINES_HPP
#define DPMA_BASELINES_HPP

#include "dpma/orchestrator.hpp"

#include <cstdint>
#include <utility>

namespace dpma
{
    // Dual-polarized array with antennas frozen on the initial grid.
    SolveReport solve_fpa(const Drop &drop, const SystemConfig &cfg, AoOptions opts = {});

    // Movable single-polarized array: polarization factor fixed to one.
    SolveReport solve_ma(const Drop &drop, const SystemConfig &cfg, AoOptions opts = {});

    // Full movable dual-polarized scheme (alias of alternating_optimize).
    SolveReport solve_dpma(const Drop &drop, const SystemConfig &cfg, AoOptions opts = {});

    // One BS at the centroid of all users serving every user of the
    // multi-cell drop. Angles and gains of the new links come from a
    // dedicated sub-stream keyed by (drop_index, realization).
    std::pair<Drop, SystemConfig> single_cell_scenario(const Drop &multi, const SystemConfig &cfg,
                                                       std::uint64_t drop_index = 0, std::uint64_t realization = 0);
} // namespace dpma

#endif

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

#include "dpma/baselines.hpp"

namespace dpma
{
    SolveReport solve_fpa(const Drop &drop, const SystemConfig &cfg, AoOptions opts)
    {
        opts.optimize_positions = false;
        opts.mode = PolarizationMode::Dual;
        return alternating_optimize(drop, cfg, opts);
    }

    SolveReport solve_ma(const Drop &drop, const SystemConfig &cfg, AoOptions opts)
    {
        opts.optimize_positions = true;
        opts.mode = PolarizationMode::Single;
        return alternating_optimize(drop, cfg, opts);
    }

    SolveReport solve_dpma(const Drop &drop, const SystemConfig &cfg, AoOptions opts)
    {
        opts.optimize_positions = true;
        opts.mode = PolarizationMode::Dual;
        return alternating_optimize(drop, cfg, opts);
    }

    std::pair<Drop, SystemConfig> single_cell_scenario(const Drop &multi, const SystemConfig &cfg,
                                                       std::uint64_t drop_index, std::uint64_t realization)
    {
        if (multi.B == 1)
            return {multi, cfg};
        SystemConfig single = cfg;
        single.B = 1;
        single.K = multi.B * multi.K;

        Drop d;
        d.B = 1;
        d.K = single.K;
        d.L = multi.L;
        Point2 c;
        for (const Point2 &p : multi.user_positions)
        {
            c.x += p.x;
            c.y += p.y;
        }
        c.x /= static_cast<double>(multi.user_positions.size());
        c.y /= static_cast<double>(multi.user_positions.size());
        d.bs_positions = {c};
        d.user_positions = multi.user_positions;
        d.bs_tx_angles.resize(1);
        d.bs_rx_angles.resize(1);
        d.bs_gain_diag.resize(1);

        RngStream rng(cfg.rng_seed, Stream::SingleCell, drop_index, realization);
        d.user_angles.resize(d.user_positions.size());
        for (auto &a : d.user_angles)
            a = sample_path_angles(rng, d.L);
        d.user_gains.resize(d.user_positions.size());
        for (size_t u = 0; u < d.user_positions.size(); ++u)
        {
            const double pl = cfg.path_gain(distance(c, d.user_positions[u]));
            CVector g(d.L);
            for (int l = 0; l < d.L; ++l)
                g(l) = rng.complex_normal(pl / d.L);
            d.user_gains[u] = g;
        }
        return {d, single};
    }
} // namespace dpma

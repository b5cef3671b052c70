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

#include "dpma/orchestrator.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace dpma
{
    namespace
    {
        double seconds_since(std::chrono::steady_clock::time_point t0)
        {
            return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }

        void check_step(double before, double after, double slack, const char *block, int iter)
        {
            if (!std::isfinite(after))
                throw SolverError(std::string("non-finite MSE after ") + block, iter);
            if (after > before + slack)
            {
                std::ostringstream os;
                os.precision(17);
                os << block << " increased the MSE from " << before << " to " << after;
                throw SolverError(os.str(), iter);
            }
        }
    } // namespace

    SolveReport alternating_optimize(const Drop &drop, const SystemConfig &cfg, const AoOptions &opts)
    {
        return alternating_optimize(drop, cfg, opts, DecisionVars::initial(cfg));
    }

    SolveReport alternating_optimize(const Drop &drop, const SystemConfig &cfg, const AoOptions &opts,
                                     DecisionVars vars)
    {
        const auto t0 = std::chrono::steady_clock::now();
        const bool dual = opts.mode == PolarizationMode::Dual;
        SolveReport rep;
        RngStream rng(cfg.rng_seed, Stream::Randomization, opts.randomization_key);
        ChannelSet ch = build_channels(drop, vars.layout, vars.pol, cfg, opts.mode);
        double mse = mse_closed_form(vars, ch, cfg);
        rep.mse_trace.push_back(mse);
        rep.inner_trace.push_back(0);

        for (rep.iters = 1; rep.iters <= opts.t_max; ++rep.iters)
        {
            const int it = rep.iters;
            const double start = mse;
            try
            {
                int sweeps = 0;
                double next = optimize_transceivers(vars, ch, cfg, opts.wa_tol, opts.wa_sweeps, &sweeps);
                check_step(mse, next, opts.monotone_slack, "combiner and transmit coefficient update", it);
                rep.inner_iters += sweeps;
                mse = next;

                if (dual)
                {
                    IterationInfo info;
                    vars.pol.m = sca_update_m(vars, ch, cfg, opts.m_tol, opts.m_t_max, &info);
                    rep.inner_iters += info.iters;
                    refresh_effective(ch, vars.pol);
                    next = mse_closed_form(vars, ch, cfg);
                    check_step(mse, next, opts.monotone_slack, "user polarization update", it);
                    mse = next;

                    vars.pol.varpi = update_varpi(vars, ch, cfg, opts.varpi, rng, &info);
                    rep.inner_iters += info.iters;
                    next = mse_closed_form(vars, ch, cfg);
                    check_step(mse, next, opts.monotone_slack, "BS polarization update", it);
                    mse = next;
                }

                if (opts.optimize_positions)
                {
                    PositionResult pr;
                    switch (opts.position_coupling)
                    {
                    case PositionCoupling::Transceiver:
                    {
                        const TransceiverProfileObjective obj(vars, drop, cfg, opts.mode, opts.wa_tol, opts.wa_sweeps);
                        pr = update_positions(obj, vars.layout, cfg, opts.positions);
                        const DecisionVars tr = obj.transceivers(pr.layout);
                        vars.W = tr.W;
                        vars.a = tr.a;
                        break;
                    }
                    case PositionCoupling::Combiner:
                    {
                        const CombinerProfileObjective obj(vars, drop, cfg, opts.mode);
                        pr = update_positions(obj, vars.layout, cfg, opts.positions);
                        vars.W = obj.combiners(pr.layout);
                        break;
                    }
                    case PositionCoupling::None:
                    {
                        const DropPositionObjective obj(vars, drop, cfg, opts.mode);
                        pr = update_positions(obj, vars.layout, cfg, opts.positions);
                        break;
                    }
                    }
                    rep.inner_iters += pr.iters;
                    vars.layout = pr.layout;
                    ch = build_channels(drop, vars.layout, vars.pol, cfg, opts.mode);
                    next = mse_closed_form(vars, ch, cfg);
                    check_step(mse, next, opts.monotone_slack, "position update", it);
                    mse = next;
                }
            }
            catch (const NumericsError &e)
            {
                throw SolverError(e.what(), it);
            }

            rep.mse_trace.push_back(mse);
            rep.inner_trace.push_back(rep.inner_iters);
            if (std::abs(start - mse) <= opts.eps * std::max(mse, 1e-300))
            {
                rep.converged = true;
                break;
            }
        }
        rep.iters = std::min(rep.iters, opts.t_max);
        rep.final_vars = std::move(vars);
        rep.wall_time = seconds_since(t0);
        return rep;
    }

    double mean_mse(const DecisionVars &vars, const std::vector<Drop> &drops, const SystemConfig &cfg,
                    PolarizationMode mode)
    {
        const SampleAveragePositionObjective obj(vars, drops, cfg, mode);
        return obj.value(vars.layout);
    }

    SolveReport two_timescale_optimize(const std::vector<Drop> &drops, const SystemConfig &cfg,
                                       const TwoTimescaleOptions &opts)
    {
        if (drops.empty())
            throw std::invalid_argument("two_timescale_optimize: at least one channel sample is required");
        const auto t0 = std::chrono::steady_clock::now();
        AoOptions inner = opts.inner;
        inner.optimize_positions = false;
        SolveReport rep = alternating_optimize(drops.front(), cfg, inner);

        const SampleAveragePositionObjective obj(rep.final_vars, drops, cfg, inner.mode);
        Layout layout = rep.final_vars.layout;
        double f = obj.value(layout);
        rep.outer_trace.push_back(f);
        for (rep.outer_iters = 1; rep.outer_iters <= opts.t_out; ++rep.outer_iters)
        {
            const PositionResult pr = update_positions(obj, layout, cfg, opts.inner.positions);
            rep.inner_iters += pr.iters;
            const double next = pr.trace.back();
            if (next > f + inner.monotone_slack)
                throw SolverError("sample-average position update increased the objective", rep.outer_iters);
            layout = pr.layout;
            const double delta = f - next;
            f = next;
            rep.outer_trace.push_back(f);
            if (delta <= opts.eps_out * std::max(f, 1e-300))
            {
                rep.outer_converged = true;
                break;
            }
        }
        rep.outer_iters = std::min(rep.outer_iters, opts.t_out);
        rep.final_vars.layout = layout;
        rep.wall_time = seconds_since(t0);
        return rep;
    }
} // namespace dpma

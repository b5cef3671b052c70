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

#ifndef DPMA_ORCHESTRATOR_HPP
#define DPMA_ORCHESTRATOR_HPP

#include "dpma/subsolvers.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpma
{
    // Hard failure inside an optimization round.
    class SolverError : public std::runtime_error
    {
    public:
        SolverError(const std::string &what, int iteration)
            : std::runtime_error(what + " (outer iteration " + std::to_string(iteration) + ")"), iteration_(iteration) {}
        int iteration() const { return iteration_; }

    private:
        int iteration_;
    };

    // What is re-optimized along the position line search.
    enum class PositionCoupling
    {
        None,        // W and a held fixed
        Combiner,    // W re-solved at every trial layout
        Transceiver, // W and a re-solved jointly at every trial layout
    };

    struct AoOptions
    {
        double eps = 1e-5; // relative change of the MSE between rounds
        int t_max = 50;
        PolarizationMode mode = PolarizationMode::Dual;
        bool optimize_positions = true;
        PositionCoupling position_coupling = PositionCoupling::Transceiver;
        // W and a are alternated until their joint relative change drops
        // below wa_tol (at most wa_sweeps times) inside every round.
        int wa_sweeps = 2000;
        double wa_tol = 1e-8;
        double m_tol = 1e-6;
        int m_t_max = 200;
        VarpiOptions varpi;
        PositionOptions positions;
        // Sub-stream index for Gaussian randomization draws.
        std::uint64_t randomization_key = 0;
        // Throw when a block update raises the MSE by more than this.
        double monotone_slack = 1e-9;
    };

    struct TwoTimescaleOptions
    {
        AoOptions inner;        // eps, t_max used as the Stage I tolerance and cap
        double eps_out = 1e-4;
        int t_out = 100;
    };

    struct SolveReport
    {
        std::vector<double> mse_trace; // entry 0 is the initial point
        bool converged = false;
        int iters = 0;
        int inner_iters = 0; // cumulative subsolver iterations
        std::vector<int> inner_trace; // cumulative inner iterations, aligned with mse_trace
        double wall_time = 0.0;
        DecisionVars final_vars;
        // Stage II sample-average trace of the two-timescale solver.
        std::vector<double> outer_trace;
        int outer_iters = 0;
        bool outer_converged = false;
    };

    // Alternates W, a, m, varpi and positions starting from the standard
    // initial point (grid layout, full-power a, all-ones phases).
    SolveReport alternating_optimize(const Drop &drop, const SystemConfig &cfg, const AoOptions &opts = {});

    // Same loop starting from explicit variables.
    SolveReport alternating_optimize(const Drop &drop, const SystemConfig &cfg, const AoOptions &opts,
                                     DecisionVars start);

    // Stage I on drops[0] at the initial layout, then positions against the
    // sample-average MSE of all drops with the other blocks frozen.
    SolveReport two_timescale_optimize(const std::vector<Drop> &drops, const SystemConfig &cfg,
                                       const TwoTimescaleOptions &opts = {});

    // Sample-average MSE of fixed variables over a set of drops.
    double mean_mse(const DecisionVars &vars, const std::vector<Drop> &drops, const SystemConfig &cfg,
                    PolarizationMode mode = PolarizationMode::Dual);
} // namespace dpma

#endif

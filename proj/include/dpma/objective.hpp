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

#ifndef DPMA_OBJECTIVE_HPP
#define DPMA_OBJECTIVE_HPP

#include "dpma/channel.hpp"
#include "dpma/rng.hpp"
#include "dpma/scene.hpp"

#include <stdexcept>

namespace dpma
{
    class DimensionError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // The five optimization blocks.
    struct DecisionVars
    {
        CMatrix W;      // M x B, column i is w_i
        CVector a;      // B*K, index i*K + k
        Layout layout;  // 2*B*M
        PolarizationState pol;

        static DecisionVars initial(const SystemConfig &cfg);
    };

    // |a_{i,k}|^2 <= P, unit-modulus polarization, feasible layout.
    bool is_feasible(const DecisionVars &vars, const SystemConfig &cfg, double power_tol = 1e-12);

    // Effective combining gain c_{i,j,k} = w_i^H H_{i,j}^H h_{j,k}.
    cd combining_gain(const DecisionVars &vars, const ChannelSet &ch, int i, int j, int k);

    // Sum over BSs of the aggregation MSE. Noise enters as B sigma^2 ||w_i||^2
    // per BS (noise forwarded between BSs with identical statistics).
    double mse_closed_form(const DecisionVars &vars, const ChannelSet &ch, const SystemConfig &cfg);

    enum class SymbolAlphabet
    {
        Gaussian,
        Bpsk,
    };

    struct MonteCarloEstimate
    {
        double mean = 0.0;
        double std_error = 0.0;
    };

    // Simulates symbols and noise and averages sum_i |target - w_i^H y_i|^2.
    // The forwarded noise from BS j reaches BS i without the inter-BS channel,
    // matching the noise model of the closed form.
    MonteCarloEstimate mse_monte_carlo(const DecisionVars &vars, const ChannelSet &ch, const SystemConfig &cfg,
                                       long n_draws, RngStream &rng,
                                       SymbolAlphabet alphabet = SymbolAlphabet::Gaussian);

    // Analytic gradient of mse_closed_form w.r.t. the 2BM antenna coordinates,
    // all other blocks held fixed.
    RVector mse_grad_positions(const DecisionVars &vars, const Drop &drop, const SystemConfig &cfg,
                               PolarizationMode mode = PolarizationMode::Dual);
} // namespace dpma

#endif

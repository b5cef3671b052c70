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

#ifndef DPMA_DISTRIBUTED_DEMO_HPP
#define DPMA_DISTRIBUTED_DEMO_HPP

#include "dpma/objective.hpp"

#include <stdexcept>
#include <vector>

namespace dpma
{
    // Distributed least squares: user (i, k) holds 0.5 ||A x - b||^2 and the
    // global objective is the average over all B*K users.
    struct DemoProblem
    {
        int B = 1;
        int K = 1;
        int dim = 1;
        std::vector<Eigen::MatrixXd> A; // index i*K + k
        std::vector<RVector> b;
        double step = 0.1;
        double tol = 1e-10;
        int max_rounds = 1000;

        static DemoProblem random(int B, int K, int dim, int rows, RngStream &rng);

        double global_objective(const RVector &x) const;
        RVector local_gradient(int user, const RVector &x) const;
        RVector mean_gradient(const RVector &x) const;
        // Minimizer of the global objective (normal equations).
        RVector centralized_optimum() const;
    };

    class DivergenceError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    struct DemoResult
    {
        int rounds = 0;
        bool met_tolerance = false;
        double consensus_error = 0.0;    // max pairwise ||x_i - x_j||
        double distance_to_optimum = 0.0; // relative, BS-average iterate
        std::vector<std::vector<RVector>> trajectory; // [round][bs], round 0 = start
        std::vector<double> step_norms;               // sum_i ||x_i^+ - x_i||^2 per round
    };

    // Gradient descent where every coordinate of the averaged gradient is
    // computed over the air with the given combiners and transmit scalars.
    DemoResult distributed_demo(const DemoProblem &demo, const DecisionVars &vars, const ChannelSet &ch,
                                const SystemConfig &cfg, RngStream &rng, const RVector &x0 = RVector());
} // namespace dpma

#endif

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

#include "dpma/distributed_demo.hpp"

#include <cmath>

namespace dpma
{
    DemoProblem DemoProblem::random(int B, int K, int dim, int rows, RngStream &rng)
    {
        DemoProblem p;
        p.B = B;
        p.K = K;
        p.dim = dim;
        for (int u = 0; u < B * K; ++u)
        {
            Eigen::MatrixXd A(rows, dim);
            RVector b(rows);
            for (int r = 0; r < rows; ++r)
            {
                for (int c = 0; c < dim; ++c)
                    A(r, c) = rng.normal() / std::sqrt(static_cast<double>(rows));
                b(r) = rng.normal();
            }
            p.A.push_back(std::move(A));
            p.b.push_back(std::move(b));
        }
        return p;
    }

    double DemoProblem::global_objective(const RVector &x) const
    {
        double s = 0.0;
        for (size_t u = 0; u < A.size(); ++u)
            s += 0.5 * (A[u] * x - b[u]).squaredNorm();
        return s / static_cast<double>(A.size());
    }

    RVector DemoProblem::local_gradient(int user, const RVector &x) const
    {
        return A[user].transpose() * (A[user] * x - b[user]);
    }

    RVector DemoProblem::mean_gradient(const RVector &x) const
    {
        RVector g = RVector::Zero(dim);
        for (int u = 0; u < B * K; ++u)
            g += local_gradient(u, x);
        return g / static_cast<double>(B * K);
    }

    RVector DemoProblem::centralized_optimum() const
    {
        Eigen::MatrixXd N = Eigen::MatrixXd::Zero(dim, dim);
        RVector r = RVector::Zero(dim);
        for (size_t u = 0; u < A.size(); ++u)
        {
            N += A[u].transpose() * A[u];
            r += A[u].transpose() * b[u];
        }
        return N.ldlt().solve(r);
    }

    DemoResult distributed_demo(const DemoProblem &demo, const DecisionVars &vars, const ChannelSet &ch,
                                const SystemConfig &cfg, RngStream &rng, const RVector &x0)
    {
        const int B = ch.B, K = ch.K, M = ch.M;
        if (demo.B != B || demo.K != K)
            throw std::invalid_argument("distributed_demo: problem and channel dimensions differ");
        const int n = demo.dim;
        const RVector start = x0.size() == n ? x0 : RVector(RVector::Zero(n));

        // effective gain of user (j, k) at BS i
        CMatrix gain(B, B * K);
        for (int i = 0; i < B; ++i)
            for (int j = 0; j < B; ++j)
                for (int k = 0; k < K; ++k)
                    gain(i, j * K + k) = combining_gain(vars, ch, i, j, k) * vars.a(j * K + k);
        const double sigma = std::sqrt(cfg.sigma2());

        DemoResult res;
        std::vector<RVector> x(B, start);
        res.trajectory.push_back(x);
        const double f0 = std::max(demo.global_objective(start), 1e-300);
        double normalizer = 0.0;
        std::vector<RVector> grads(static_cast<size_t>(B) * K);
        CVector noise_sum(M);

        for (res.rounds = 1; res.rounds <= demo.max_rounds; ++res.rounds)
        {
            for (int j = 0; j < B; ++j)
                for (int k = 0; k < K; ++k)
                {
                    grads[j * K + k] = demo.local_gradient(j * K + k, x[j]);
                    normalizer = std::max(normalizer, grads[j * K + k].cwiseAbs().maxCoeff());
                }
            const double scale = normalizer > 0.0 ? normalizer : 1.0;

            std::vector<RVector> next = x;
            for (int c = 0; c < n; ++c)
            {
                noise_sum.setZero();
                if (sigma > 0.0)
                    for (int j = 0; j < B; ++j)
                        for (int m = 0; m < M; ++m)
                            noise_sum(m) += rng.complex_normal(cfg.sigma2());
                for (int i = 0; i < B; ++i)
                {
                    cd est = vars.W.col(i).dot(noise_sum);
                    for (int u = 0; u < B * K; ++u)
                        est += gain(i, u) * (grads[u](c) / scale);
                    next[i](c) -= demo.step * scale * est.real();
                }
            }

            double moved = 0.0;
            for (int i = 0; i < B; ++i)
                moved += (next[i] - x[i]).squaredNorm();
            x = std::move(next);
            res.trajectory.push_back(x);
            res.step_norms.push_back(moved);

            RVector mean = RVector::Zero(n);
            for (const auto &xi : x)
                mean += xi;
            if (!mean.allFinite() || demo.global_objective(mean / B) > 1e3 * f0)
                throw DivergenceError("distributed_demo: iterates diverged at round " + std::to_string(res.rounds));
            if (moved <= demo.tol)
            {
                res.met_tolerance = true;
                break;
            }
        }
        res.rounds = std::min(res.rounds, demo.max_rounds);

        RVector mean = RVector::Zero(n);
        for (const auto &xi : x)
            mean += xi;
        mean /= B;
        for (int i = 0; i < B; ++i)
            for (int j = i + 1; j < B; ++j)
                res.consensus_error = std::max(res.consensus_error, (x[i] - x[j]).norm());
        const RVector opt = demo.centralized_optimum();
        res.distance_to_optimum = (mean - opt).norm() / std::max(opt.norm(), 1e-300);
        return res;
    }
} // namespace dpma

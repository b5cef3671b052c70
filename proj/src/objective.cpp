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

#include "dpma/objective.hpp"

#include <cmath>

namespace dpma
{
    namespace
    {
        void check_dims(const DecisionVars &vars, const ChannelSet &ch)
        {
            const Eigen::Index B = ch.B, K = ch.K, M = ch.M;
            if (vars.W.rows() != M || vars.W.cols() != B)
                throw DimensionError("W must be M x B");
            if (vars.a.size() != B * K)
                throw DimensionError("a must have B*K entries");
            if (ch.h.size() != static_cast<size_t>(B * K) || ch.H.size() != static_cast<size_t>(B * B))
                throw DimensionError("channel set is incomplete");
        }
    } // namespace

    DecisionVars DecisionVars::initial(const SystemConfig &cfg)
    {
        DecisionVars v;
        v.W = CMatrix::Zero(cfg.M, cfg.B);
        v.a = CVector::Constant(cfg.B * cfg.K, cd(std::sqrt(cfg.P), 0.0));
        v.layout = initial_layout(cfg);
        v.pol = PolarizationState::ones(cfg.B, cfg.K);
        return v;
    }

    bool is_feasible(const DecisionVars &vars, const SystemConfig &cfg, double power_tol)
    {
        for (Eigen::Index n = 0; n < vars.a.size(); ++n)
            if (std::norm(vars.a(n)) > cfg.P + power_tol * std::max(1.0, cfg.P))
                return false;
        return vars.pol.unit_modulus(1e-9) && check_layout_feasible(vars.layout, cfg);
    }

    cd combining_gain(const DecisionVars &vars, const ChannelSet &ch, int i, int j, int k)
    {
        // w_i^H H_ij^H h_jk = (H_ij w_i)^H h_jk
        if (i == j)
            return vars.W.col(i).dot(ch.h_at(j, k));
        return (ch.H_at(i, j) * vars.W.col(i)).dot(ch.h_at(j, k));
    }

    double mse_closed_form(const DecisionVars &vars, const ChannelSet &ch, const SystemConfig &cfg)
    {
        check_dims(vars, ch);
        const int B = ch.B, K = ch.K;
        const double inv_bk = 1.0 / (static_cast<double>(B) * K);
        double quad = 0.0, noise = 0.0, lin = 0.0;
        for (int i = 0; i < B; ++i)
        {
            noise += B * cfg.sigma2() * vars.W.col(i).squaredNorm();
            for (int j = 0; j < B; ++j)
            {
                const CVector Hw = (i == j) ? CVector(vars.W.col(i)) : CVector(ch.H_at(i, j) * vars.W.col(i));
                for (int k = 0; k < K; ++k)
                {
                    const cd c = Hw.dot(ch.h_at(j, k)) * vars.a(j * K + k);
                    quad += std::norm(c);
                    lin += c.real();
                }
            }
        }
        return 1.0 / K + quad + noise - 2.0 * inv_bk * lin;
    }

    MonteCarloEstimate mse_monte_carlo(const DecisionVars &vars, const ChannelSet &ch, const SystemConfig &cfg,
                                       long n_draws, RngStream &rng, SymbolAlphabet alphabet)
    {
        check_dims(vars, ch);
        if (n_draws < 1)
            throw std::invalid_argument("mse_monte_carlo: n_draws must be >= 1");
        const int B = ch.B, K = ch.K, M = ch.M;
        const double inv_bk = 1.0 / (static_cast<double>(B) * K);

        // Per-BS row of effective gains g_i = (w_i^H H_ij^H h_jk a_jk)_{j,k}.
        CMatrix gains(B, B * K);
        for (int i = 0; i < B; ++i)
            for (int j = 0; j < B; ++j)
                for (int k = 0; k < K; ++k)
                    gains(i, j * K + k) = combining_gain(vars, ch, i, j, k) * vars.a(j * K + k);

        CVector s(B * K);
        CMatrix noise(M, B);
        double sum = 0.0, sum_sq = 0.0;
        for (long n = 0; n < n_draws; ++n)
        {
            for (int u = 0; u < B * K; ++u)
            {
                if (alphabet == SymbolAlphabet::Gaussian)
                    s(u) = rng.complex_normal(1.0);
                else
                    s(u) = rng.uniform() < 0.5 ? cd(-1.0) : cd(1.0);
            }
            for (int j = 0; j < B; ++j)
                for (int m = 0; m < M; ++m)
                    noise(m, j) = rng.complex_normal(cfg.sigma2());
            const cd target = s.sum() * inv_bk;
            const CVector noise_sum = noise.rowwise().sum();
            double err = 0.0;
            for (int i = 0; i < B; ++i)
            {
                const cd est = (gains.row(i) * s)(0) + vars.W.col(i).dot(noise_sum);
                err += std::norm(target - est);
            }
            sum += err;
            sum_sq += err * err;
        }
        const double mean = sum / static_cast<double>(n_draws);
        const double var = n_draws > 1 ? std::max(0.0, (sum_sq - n_draws * mean * mean) / (n_draws - 1.0)) : 0.0;
        return {mean, std::sqrt(var / static_cast<double>(n_draws))};
    }

    RVector mse_grad_positions(const DecisionVars &vars, const Drop &drop, const SystemConfig &cfg,
                               PolarizationMode mode)
    {
        const int B = cfg.B, K = cfg.K, M = cfg.M;
        const double kw = 2.0 * kPi / cfg.lambda_m;
        const double inv_bk = 1.0 / (static_cast<double>(B) * K);
        const bool dual = mode == PolarizationMode::Dual;
        const PolarizationResponse pr = polarization_matrices(drop);

        std::vector<Eigen::MatrixX2d> pos(B);
        for (int i = 0; i < B; ++i)
            pos[i] = bs_positions(vars.layout, M, i);

        // User links: h_gen, its coordinate partials, and the polarization factor.
        struct UserLink
        {
            CVector h_gen;
            CMatrix dh; // M x 2
            cd q;
        };
        std::vector<UserLink> users(static_cast<size_t>(B) * K);
        for (int j = 0; j < B; ++j)
            for (int k = 0; k < K; ++k)
            {
                const int u = drop.user(j, k);
                const PathAngles &ang = drop.user_angles[u];
                const CMatrix Q = field_response(pos[j], ang, cfg.lambda_m);
                UserLink &ul = users[u];
                ul.h_gen = Q.adjoint() * drop.user_gains[u];
                ul.dh = CMatrix::Zero(M, 2);
                for (int l = 0; l < drop.L; ++l)
                {
                    const Eigen::Vector2d v = direction(ang.theta[l], ang.phi[l]);
                    for (int n = 0; n < M; ++n)
                    {
                        const cd t = -kJ * kw * std::conj(Q(l, n)) * drop.user_gains[u](l);
                        ul.dh(n, 0) += t * v(0);
                        ul.dh(n, 1) += t * v(1);
                    }
                }
                ul.q = dual ? user_polarization_factor(vars.pol.varpi[j], pr.A_u[u], vars.pol.m[u]) : cd(1.0);
            }

        RVector grad = RVector::Zero(2 * B * M);
        auto add = [&](int bs, int n, cd dx, cd dy)
        {
            const Eigen::Index idx = coord_index(M, bs, n);
            grad(idx) += dx.real();
            grad(idx + 1) += dy.real();
        };

        for (int i = 0; i < B; ++i)
        {
            const CVector w = vars.W.col(i);
            for (int j = 0; j < B; ++j)
            {
                if (i == j)
                {
                    for (int k = 0; k < K; ++k)
                    {
                        const UserLink &ul = users[drop.user(j, k)];
                        const cd a = vars.a(j * K + k);
                        const cd c = a * ul.q * w.dot(ul.h_gen);
                        const cd zeta = 2.0 * std::conj(c) - 2.0 * inv_bk;
                        const cd pre = zeta * a * ul.q;
                        for (int n = 0; n < M; ++n)
                            add(j, n, pre * std::conj(w(n)) * ul.dh(n, 0), pre * std::conj(w(n)) * ul.dh(n, 1));
                    }
                    continue;
                }
                const int l = drop.link(i, j);
                const PathAngles &ta = drop.bs_tx_angles[l];
                const PathAngles &ra = drop.bs_rx_angles[l];
                const CMatrix F = field_response(pos[j], ta, cfg.lambda_m);
                const CMatrix G = field_response(pos[i], ra, cfg.lambda_m);
                const CVector &sigma = drop.bs_gain_diag[l];
                const cd p = dual ? bs_polarization_factor(vars.pol.varpi[i], pr.A_b[l], vars.pol.varpi[j]) : cd(1.0);
                const CVector Gw = G * w;
                const int Lp = drop.L;
                std::vector<Eigen::Vector2d> fdir(Lp), gdir(Lp);
                for (int q = 0; q < Lp; ++q)
                {
                    fdir[q] = direction(ta.theta[q], ta.phi[q]);
                    gdir[q] = direction(ra.theta[q], ra.phi[q]);
                }

                for (int k = 0; k < K; ++k)
                {
                    const UserLink &ul = users[drop.user(j, k)];
                    const cd a = vars.a(j * K + k);
                    const CVector Fh = F * ul.h_gen;
                    cd core = 0.0;
                    for (int q = 0; q < Lp; ++q)
                        core += std::conj(Gw(q)) * sigma(q) * Fh(q);
                    const cd alpha = a * std::conj(p) * ul.q;
                    const cd c = alpha * core;
                    const cd pre = (2.0 * std::conj(c) - 2.0 * inv_bk) * alpha;

                    for (int n = 0; n < M; ++n)
                    {
                        // receiving BS i through G
                        cd gx = 0.0, gy = 0.0;
                        // transmitting BS j through F and h_gen
                        cd fx = 0.0, fy = 0.0;
                        for (int q = 0; q < Lp; ++q)
                        {
                            const cd tg = -kJ * kw * std::conj(G(q, n) * w(n)) * sigma(q) * Fh(q);
                            gx += tg * gdir[q](0);
                            gy += tg * gdir[q](1);
                            const cd common = std::conj(Gw(q)) * sigma(q) * F(q, n);
                            const cd tf = common * kJ * kw * ul.h_gen(n);
                            fx += tf * fdir[q](0) + common * ul.dh(n, 0);
                            fy += tf * fdir[q](1) + common * ul.dh(n, 1);
                        }
                        add(i, n, pre * gx, pre * gy);
                        add(j, n, pre * fx, pre * fy);
                    }
                }
            }
        }
        return grad;
    }
} // namespace dpma

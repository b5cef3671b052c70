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

#include "dpma/subsolvers.hpp"

#include <cmath>

namespace dpma
{
    CMatrix update_W(const DecisionVars &vars, const ChannelSet &ch, const SystemConfig &cfg)
    {
        const int B = ch.B, K = ch.K, M = ch.M;
        const double inv_bk = 1.0 / (static_cast<double>(B) * K);
        CMatrix W(M, B);
        for (int i = 0; i < B; ++i)
        {
            CMatrix R = CMatrix::Zero(M, M);
            CVector rhs = CVector::Zero(M);
            for (int j = 0; j < B; ++j)
                for (int k = 0; k < K; ++k)
                {
                    const cd a = vars.a(j * K + k);
                    const CVector g = (i == j) ? ch.h_at(j, k) : CVector(ch.H_at(i, j).adjoint() * ch.h_at(j, k));
                    R.noalias() += std::norm(a) * g * g.adjoint();
                    rhs += g * a;
                }
            R.diagonal().array() += B * cfg.sigma2();
            if (rhs.squaredNorm() == 0.0)
            {
                W.col(i).setZero();
                continue;
            }
            const HermitianMatrix Rh(R, 1e-9 * std::max(1e-300, R.cwiseAbs().maxCoeff()));
            CVector w;
            try
            {
                w = solve_hpd(Rh, rhs);
            }
            catch (const NumericsError &e)
            {
                // rank-deficient signal covariance without noise
                const double scale = std::max(R.diagonal().real().mean(), 1e-300);
                warn("update_W: singular combiner system, regularizing (condition " + std::to_string(e.diagnostic()) +
                     ")");
                CMatrix Rr = R;
                Rr.diagonal().array() += 1e-10 * scale;
                w = solve_hpd(HermitianMatrix(Rr, 1e-9 * scale), rhs);
            }
            W.col(i) = inv_bk * w;
        }
        return W;
    }

    cd power_limited_coefficient(cd b, double r, double P)
    {
        const double mag = std::abs(b);
        if (mag == 0.0)
            return 0.0;
        const double sp = std::sqrt(P);
        if (r > 0.0 && mag <= sp * r)
            return b / r;
        return sp * b / mag;
    }

    CVector update_a(const DecisionVars &vars, const ChannelSet &ch, const SystemConfig &cfg)
    {
        const int B = ch.B, K = ch.K;
        const double inv_bk = 1.0 / (static_cast<double>(B) * K);
        CVector a(B * K);
        for (int j = 0; j < B; ++j)
            for (int k = 0; k < K; ++k)
            {
                double r = 0.0;
                cd b = 0.0;
                for (int i = 0; i < B; ++i)
                {
                    const cd c = combining_gain(vars, ch, i, j, k);
                    r += std::norm(c);
                    b += std::conj(c);
                }
                a(j * K + k) = power_limited_coefficient(inv_bk * b, r, cfg.P);
            }
        return a;
    }

    namespace
    {
        CVector clip_power(CVector a, double P)
        {
            const double sp = std::sqrt(P);
            for (Eigen::Index n = 0; n < a.size(); ++n)
            {
                const double mag = std::abs(a(n));
                if (mag > sp)
                    a(n) *= sp / mag;
            }
            return a;
        }

        // Combined channels g_ijk = H_ij^H h_jk cached per receiving BS as the
        // columns of an M x BK matrix, so that W, a and the MSE only need
        // small dense products.
        class TransceiverSystem
        {
        public:
            TransceiverSystem(const ChannelSet &ch, const SystemConfig &cfg)
                : ch_(ch), cfg_(cfg), B_(ch.B), K_(ch.K), M_(ch.M), inv_bk_(1.0 / (static_cast<double>(ch.B) * ch.K)),
                  noise_(ch.B * cfg.sigma2())
            {
                G_.resize(B_);
                for (int i = 0; i < B_; ++i)
                {
                    G_[i].resize(M_, B_ * K_);
                    for (int j = 0; j < B_; ++j)
                        for (int k = 0; k < K_; ++k)
                            G_[i].col(j * K_ + k) =
                                (i == j) ? ch.h_at(j, k) : CVector(ch.H_at(i, j).adjoint() * ch.h_at(j, k));
                }
            }

            // gains(u, i) = w_i^H g_iu
            CMatrix gains(const CMatrix &W) const
            {
                CMatrix c(B_ * K_, B_);
                for (int i = 0; i < B_; ++i)
                    c.col(i) = (G_[i].adjoint() * W.col(i)).conjugate();
                return c;
            }

            double mse(const DecisionVars &v) const
            {
                const CMatrix c = gains(v.W);
                double quad = 0.0, lin = 0.0;
                for (int i = 0; i < B_; ++i)
                {
                    const CVector ca = c.col(i).cwiseProduct(v.a);
                    quad += ca.squaredNorm();
                    lin += ca.real().sum();
                }
                return 1.0 / K_ + quad + noise_ * v.W.squaredNorm() - 2.0 * inv_bk_ * lin;
            }

            CMatrix combiners(const DecisionVars &v) const
            {
                const RVector amp = v.a.cwiseAbs();
                CMatrix W(M_, B_);
                CMatrix R(M_, M_), X(M_, B_ * K_);
                for (int i = 0; i < B_; ++i)
                {
                    X.noalias() = G_[i] * amp.asDiagonal();
                    R.setZero();
                    R.diagonal().setConstant(noise_);
                    R.selfadjointView<Eigen::Lower>().rankUpdate(X);
                    R.triangularView<Eigen::StrictlyUpper>() = R.adjoint();
                    const CVector rhs = G_[i] * v.a;
                    Eigen::LLT<CMatrix> llt(R);
                    if (llt.info() != Eigen::Success || rhs.squaredNorm() == 0.0)
                        return update_W(v, ch_, cfg_); // checked path handles the degenerate cases
                    CVector w = llt.solve(rhs);
                    w += llt.solve(rhs - R * w);
                    W.col(i) = inv_bk_ * w;
                }
                return W;
            }

            CVector coefficients(const DecisionVars &v) const
            {
                const CMatrix c = gains(v.W);
                CVector a(B_ * K_);
                for (int u = 0; u < B_ * K_; ++u)
                    a(u) = power_limited_coefficient(inv_bk_ * c.row(u).conjugate().sum(), c.row(u).squaredNorm(),
                                                     cfg_.P);
                return a;
            }

        private:
            const ChannelSet &ch_;
            const SystemConfig &cfg_;
            int B_, K_, M_;
            double inv_bk_, noise_;
            std::vector<CMatrix> G_;
        };
    } // namespace

    double optimize_transceivers(DecisionVars &vars, const ChannelSet &ch, const SystemConfig &cfg, double tol,
                                 int max_sweeps, int *sweeps)
    {
        const TransceiverSystem sys(ch, cfg);
        vars.W = sys.combiners(vars);
        double f = sys.mse(vars);
        double stretch = 1.0;
        int s = 0;
        while (s < std::max(1, max_sweeps))
        {
            ++s;
            const CVector a_prev = vars.a;
            vars.a = sys.coefficients(vars);
            vars.W = sys.combiners(vars);
            double next = sys.mse(vars);

            DecisionVars trial = vars;
            trial.a = clip_power(vars.a + stretch * (vars.a - a_prev), cfg.P);
            trial.W = sys.combiners(trial);
            const double f_trial = sys.mse(trial);
            if (f_trial < next)
            {
                vars = std::move(trial);
                next = f_trial;
                stretch *= 1.5;
            }
            else
                stretch = std::max(1.0, 0.5 * stretch);

            const double delta = f - next;
            f = std::min(f, next);
            if (delta <= tol * std::max(f, 1e-300))
                break;
        }
        if (sweeps)
            *sweeps = s;
        return mse_closed_form(vars, ch, cfg);
    }
} // namespace dpma

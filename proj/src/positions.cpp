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
    DropPositionObjective::DropPositionObjective(const DecisionVars &vars, const Drop &drop, const SystemConfig &cfg,
                                                 PolarizationMode mode)
        : vars_(vars), drop_(drop), cfg_(cfg), mode_(mode)
    {
    }

    double DropPositionObjective::value(const Layout &layout) const
    {
        DecisionVars v = vars_;
        v.layout = layout;
        const ChannelSet ch = build_channels(drop_, layout, v.pol, cfg_, mode_);
        return mse_closed_form(v, ch, cfg_);
    }

    RVector DropPositionObjective::gradient(const Layout &layout) const
    {
        DecisionVars v = vars_;
        v.layout = layout;
        return mse_grad_positions(v, drop_, cfg_, mode_);
    }

    CombinerProfileObjective::CombinerProfileObjective(const DecisionVars &vars, const Drop &drop,
                                                       const SystemConfig &cfg, PolarizationMode mode)
        : vars_(vars), drop_(drop), cfg_(cfg), mode_(mode)
    {
    }

    DecisionVars CombinerProfileObjective::with_combiners(const Layout &layout) const
    {
        DecisionVars v = vars_;
        v.layout = layout;
        const ChannelSet ch = build_channels(drop_, layout, v.pol, cfg_, mode_);
        v.W = update_W(v, ch, cfg_);
        return v;
    }

    double CombinerProfileObjective::value(const Layout &layout) const
    {
        const DecisionVars v = with_combiners(layout);
        return mse_closed_form(v, build_channels(drop_, layout, v.pol, cfg_, mode_), cfg_);
    }

    RVector CombinerProfileObjective::gradient(const Layout &layout) const
    {
        return mse_grad_positions(with_combiners(layout), drop_, cfg_, mode_);
    }

    CMatrix CombinerProfileObjective::combiners(const Layout &layout) const
    {
        return with_combiners(layout).W;
    }

    TransceiverProfileObjective::TransceiverProfileObjective(const DecisionVars &vars, const Drop &drop,
                                                             const SystemConfig &cfg, PolarizationMode mode,
                                                             double tol, int max_sweeps)
        : vars_(vars), drop_(drop), cfg_(cfg), mode_(mode), tol_(tol), max_sweeps_(max_sweeps)
    {
    }

    DecisionVars TransceiverProfileObjective::transceivers(const Layout &layout) const
    {
        if (cached_layout_.size() == layout.size() && cached_layout_ == layout)
            return cached_;
        DecisionVars v = vars_;
        v.layout = layout;
        const ChannelSet ch = build_channels(drop_, layout, v.pol, cfg_, mode_);
        optimize_transceivers(v, ch, cfg_, tol_, max_sweeps_);
        cached_layout_ = layout;
        cached_ = v;
        return v;
    }

    double TransceiverProfileObjective::value(const Layout &layout) const
    {
        const DecisionVars v = transceivers(layout);
        return mse_closed_form(v, build_channels(drop_, layout, v.pol, cfg_, mode_), cfg_);
    }

    RVector TransceiverProfileObjective::gradient(const Layout &layout) const
    {
        return mse_grad_positions(transceivers(layout), drop_, cfg_, mode_);
    }

    SampleAveragePositionObjective::SampleAveragePositionObjective(const DecisionVars &vars,
                                                                   const std::vector<Drop> &drops,
                                                                   const SystemConfig &cfg, PolarizationMode mode)
    {
        if (drops.empty())
            throw std::invalid_argument("sample-average objective needs at least one drop");
        parts_.reserve(drops.size());
        for (const Drop &d : drops)
            parts_.emplace_back(vars, d, cfg, mode);
    }

    double SampleAveragePositionObjective::value(const Layout &layout) const
    {
        double s = 0.0;
        for (const auto &p : parts_)
            s += p.value(layout);
        return s / static_cast<double>(parts_.size());
    }

    RVector SampleAveragePositionObjective::gradient(const Layout &layout) const
    {
        RVector g = RVector::Zero(layout.size());
        for (const auto &p : parts_)
            g += p.gradient(layout);
        return g / static_cast<double>(parts_.size());
    }

    RVector feasible_descent_direction(const Layout &layout, const RVector &grad, const SystemConfig &cfg)
    {
        // Rows a of the active constraints a^T p >= 0 (first order).
        const double band = 1e-3 * cfg.D0;
        const Eigen::Index n = layout.size();
        std::vector<RVector> rows;
        for (int i = 0; i < cfg.B; ++i)
            for (int m = 0; m < cfg.M; ++m)
            {
                const Eigen::Index a = coord_index(cfg.M, i, m);
                for (int c = 0; c < 2; ++c)
                {
                    const double x = layout(a + c);
                    if (std::abs(x) >= cfg.region_half_width - band)
                    {
                        RVector r = RVector::Zero(n);
                        r(a + c) = x > 0.0 ? -1.0 : 1.0;
                        rows.push_back(std::move(r));
                    }
                }
                for (int q = m + 1; q < cfg.M; ++q)
                {
                    const Eigen::Index b = coord_index(cfg.M, i, q);
                    const double dx = layout(a) - layout(b), dy = layout(a + 1) - layout(b + 1);
                    const double d = std::hypot(dx, dy);
                    if (d <= cfg.D0 + band && d > 0.0)
                    {
                        RVector r = RVector::Zero(n);
                        r(a) = dx / d;
                        r(a + 1) = dy / d;
                        r(b) = -dx / d;
                        r(b + 1) = -dy / d;
                        rows.push_back(std::move(r));
                    }
                }
            }
        if (rows.empty())
            return -grad;

        // Projection of -grad onto the cone {p : A p >= 0} via its dual,
        // min_{mu >= 0} 0.5 mu^T A A^T mu - mu^T A grad, by projected Gauss-Seidel.
        const Eigen::Index na = static_cast<Eigen::Index>(rows.size());
        Eigen::MatrixXd A(na, n);
        for (Eigen::Index r = 0; r < na; ++r)
            A.row(r) = rows[r].transpose();
        const Eigen::MatrixXd AA = A * A.transpose();
        const RVector Ag = A * grad;
        RVector mu = RVector::Zero(na);
        for (int sweep = 0; sweep < 1000; ++sweep)
        {
            double change = 0.0;
            for (Eigen::Index c = 0; c < na; ++c)
            {
                const double next = std::max(0.0, mu(c) + (Ag(c) - AA.row(c).dot(mu)) / AA(c, c));
                change = std::max(change, std::abs(next - mu(c)));
                mu(c) = next;
            }
            if (change <= 1e-14 * std::max(1.0, mu.cwiseAbs().maxCoeff()))
                break;
        }
        return -grad + A.transpose() * mu;
    }

    PositionResult update_positions(const PositionObjective &objective, const Layout &start, const SystemConfig &cfg,
                                    const PositionOptions &opts)
    {
        PositionResult res;
        res.layout = start;
        double f = objective.value(start);
        res.trace.push_back(f);
        const double alpha0 = opts.alpha0 > 0.0 ? opts.alpha0 : 0.1 * cfg.lambda_m;
        double alpha = alpha0;
        const double alpha_floor = 1e-12 * cfg.lambda_m;
        for (res.iters = 0; res.iters < opts.t_max;)
        {
            const RVector g = objective.gradient(res.layout);
            ++res.iters;
            if (!g.allFinite())
                throw NumericsError("update_positions: non-finite gradient");
            const RVector dir = feasible_descent_direction(res.layout, g, cfg);
            if (dir.squaredNorm() <= 1e-24 * std::max(g.squaredNorm(), 1e-300))
            {
                res.converged = true;
                break;
            }
            bool accepted = false;
            double f_new = f;
            Layout cand;
            while (alpha >= alpha_floor)
            {
                cand = res.layout + alpha * dir;
                if (check_layout_feasible(cand, cfg))
                {
                    f_new = objective.value(cand);
                    if (f_new <= f)
                    {
                        accepted = true;
                        break;
                    }
                }
                alpha *= 0.5;
            }
            if (!accepted)
            {
                res.converged = true;
                break;
            }
            const double delta = f - f_new;
            if (opts.grow_step)
                alpha = std::min(2.0 * alpha, alpha0);
            res.layout = cand;
            f = f_new;
            res.trace.push_back(f);
            if (delta <= opts.tol * std::max(f, 1e-300))
            {
                res.converged = true;
                break;
            }
        }
        return res;
    }

    Layout update_positions(const DecisionVars &vars, const Drop &drop, const SystemConfig &cfg,
                            const PositionOptions &opts, PolarizationMode mode)
    {
        const DropPositionObjective obj(vars, drop, cfg, mode);
        return update_positions(obj, vars.layout, cfg, opts).layout;
    }
} // namespace dpma

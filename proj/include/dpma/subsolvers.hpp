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

#ifndef DPMA_SUBSOLVERS_HPP
#define DPMA_SUBSOLVERS_HPP

#include "dpma/objective.hpp"

#include <array>
#include <functional>
#include <memory>
#include <vector>

namespace dpma
{
    // ---- receive combiners and transmit coefficients ----

    // Per-BS LMMSE combiner with every other block fixed.
    CMatrix update_W(const DecisionVars &vars, const ChannelSet &ch, const SystemConfig &cfg);

    // Closed-form minimizer of r|a|^2 - 2 Re(conj(b) a) subject to |a|^2 <= P.
    cd power_limited_coefficient(cd b, double r, double P);

    CVector update_a(const DecisionVars &vars, const ChannelSet &ch, const SystemConfig &cfg);

    // Alternates update_W and update_a until the relative MSE decrease of a
    // sweep is at most tol. After each sweep the step in a is extrapolated and
    // kept only when it lowers the MSE. Returns the final MSE.
    double optimize_transceivers(DecisionVars &vars, const ChannelSet &ch, const SystemConfig &cfg,
                                 double tol = 1e-9, int max_sweeps = 2000, int *sweeps = nullptr);

    // ---- user polarization phases ----

    // Quadratic model of the MSE in the stacked user phases m (2BK entries):
    // f(m) = m^H D m - (2/BK) Re(m^H nu), D block diagonal with 2x2 blocks.
    struct MSubproblemData
    {
        std::vector<std::vector<CVector2>> iota; // [user][bs i]
        std::vector<CMatrix2> blocks;            // one per user
        std::vector<CVector2> nu;                // one per user
        std::vector<double> lam;                 // |off-diagonal entry| of each block
        double lam_max = 0.0;                    // max over users
        double inv_bk = 0.0;

        CMatrix block_diagonal() const;
        CVector stacked_nu() const;
    };

    MSubproblemData build_m_data(const DecisionVars &vars, const ChannelSet &ch);
    double m_objective(const MSubproblemData &d, const std::vector<CVector2> &m);
    // Linear majorizer of m_objective at m_t evaluated at m (constants kept).
    double m_surrogate(const MSubproblemData &d, const std::vector<CVector2> &m, const std::vector<CVector2> &m_t);
    // One closed-form minimization of the majorizer.
    std::vector<CVector2> m_step(const MSubproblemData &d, const std::vector<CVector2> &m_t);

    struct IterationInfo
    {
        int iters = 0;
        bool converged = false;
    };

    std::vector<CVector2> sca_update_m(const DecisionVars &vars, const ChannelSet &ch, const SystemConfig &cfg,
                                       double tol = 1e-6, int t_max = 200, IterationInfo *info = nullptr);

    // ---- BS polarization phases ----

    // Every MSE term that depends on the phases x of one target BS:
    //   g(x) = x^H Q x + 2 Re(l^H x) + sum_p (x^H Fp x)(x^H Dp x) + Re(conj(x)^T S conj(x))
    // g differs from the MSE by a constant in x.
    struct VarpiSubproblemData
    {
        int target = 0;
        CMatrix2 own_quadratic;     // own-cell user terms
        CMatrix2 forward_quadratic; // terms forwarded from the other BSs
        CVector2 own_linear;
        CVector2 forward_linear;
        std::vector<CMatrix2> cross_left;  // rank-one, from the receiving BS phases
        std::vector<CMatrix2> cross_right; // rank-one, from the users of the target cell
        CMatrix2 conj_quadratic;           // complex symmetric
        CMatrix coupling;                  // 9x9 lifted quartic operator
        double lam_max_coupling = 0.0;

        CMatrix2 quadratic() const { return own_quadratic + forward_quadratic; }
        CVector2 linear() const { return own_linear + forward_linear; }
    };

    VarpiSubproblemData build_varpi_data(const DecisionVars &vars, const ChannelSet &ch, int target);

    double varpi_objective(const VarpiSubproblemData &d, const CVector2 &x);

    // 3x3 lifted cost at expansion point x_t: quadratic part plus the
    // linearized conjugate-quadratic term.
    CMatrix lifted_cost(const VarpiSubproblemData &d, const CVector2 &x_t);

    Eigen::Vector3cd lift(const CVector2 &x);

    struct P44Result
    {
        CMatrix V;          // 3x3 Hermitian PSD, unit diagonal
        bool converged = false;
        int sweeps = 0;
        double kkt_residual = 0.0;
    };

    // Minimizes lambda ||vec V||^2 + Re(vec(V)^H q) over unit-diagonal PSD V.
    P44Result solve_p44(const VarpiSubproblemData &d, const CMatrix &J, const CVector &x_t_lifted,
                        double tol = 1e-10, int max_sweeps = 5000);

    // Euclidean projection onto {V : V >= 0, diag(V) = 1} by Dykstra's method.
    P44Result project_unit_diagonal_psd(const CMatrix &Z, double tol = 1e-10, int max_sweeps = 5000);

    CVector2 gaussian_randomize(const CMatrix &V, const VarpiSubproblemData &d, const CVector2 &incumbent,
                                int n_samples, RngStream &rng);

    struct VarpiOptions
    {
        double tol = 1e-6;
        int t_max = 30;
        int n_samples = 100;
    };

    // Sweeps all BSs in order; ch is refreshed in place after every BS.
    std::vector<CVector2> update_varpi(const DecisionVars &vars, ChannelSet &ch, const SystemConfig &cfg,
                                       const VarpiOptions &opts, RngStream &rng, IterationInfo *info = nullptr);

    // ---- antenna positions ----

    class PositionObjective
    {
    public:
        virtual ~PositionObjective() = default;
        virtual double value(const Layout &layout) const = 0;
        virtual RVector gradient(const Layout &layout) const = 0;
    };

    // MSE of one drop with W, a and the polarization phases held fixed.
    class DropPositionObjective : public PositionObjective
    {
    public:
        DropPositionObjective(const DecisionVars &vars, const Drop &drop, const SystemConfig &cfg,
                              PolarizationMode mode);
        double value(const Layout &layout) const override;
        RVector gradient(const Layout &layout) const override;

    private:
        DecisionVars vars_;
        const Drop &drop_;
        const SystemConfig &cfg_;
        PolarizationMode mode_;
    };

    // MSE of one drop with the combiners re-optimized at every layout
    // (a and the polarization phases fixed). Since W minimizes the MSE without
    // constraints, the gradient is the partial gradient at the optimal W.
    class CombinerProfileObjective : public PositionObjective
    {
    public:
        CombinerProfileObjective(const DecisionVars &vars, const Drop &drop, const SystemConfig &cfg,
                                 PolarizationMode mode);
        double value(const Layout &layout) const override;
        RVector gradient(const Layout &layout) const override;
        CMatrix combiners(const Layout &layout) const;

    private:
        DecisionVars with_combiners(const Layout &layout) const;

        DecisionVars vars_;
        const Drop &drop_;
        const SystemConfig &cfg_;
        PolarizationMode mode_;
    };

    // MSE of one drop with W and a jointly re-optimized at every layout
    // (polarization phases fixed). The gradient is the partial gradient at
    // the re-optimized point.
    class TransceiverProfileObjective : public PositionObjective
    {
    public:
        TransceiverProfileObjective(const DecisionVars &vars, const Drop &drop, const SystemConfig &cfg,
                                    PolarizationMode mode, double tol = 1e-9, int max_sweeps = 2000);
        double value(const Layout &layout) const override;
        RVector gradient(const Layout &layout) const override;
        DecisionVars transceivers(const Layout &layout) const;

    private:
        DecisionVars vars_;
        const Drop &drop_;
        const SystemConfig &cfg_;
        PolarizationMode mode_;
        double tol_;
        int max_sweeps_;
        // last evaluated layout; value() and gradient() are called in pairs
        mutable Layout cached_layout_;
        mutable DecisionVars cached_;
    };

    // Mean MSE over a set of channel samples.
    class SampleAveragePositionObjective : public PositionObjective
    {
    public:
        SampleAveragePositionObjective(const DecisionVars &vars, const std::vector<Drop> &drops,
                                       const SystemConfig &cfg, PolarizationMode mode);
        double value(const Layout &layout) const override;
        RVector gradient(const Layout &layout) const override;

    private:
        std::vector<DropPositionObjective> parts_;
    };

    struct PositionOptions
    {
        double alpha0 = 0.0; // 0 selects 0.1 lambda
        // Double the step after an accepted move (capped at alpha0) instead
        // of keeping the halved value for the rest of the call.
        bool grow_step = false;
        double tol = 1e-6;
        int t_max = 200;
    };

    struct PositionResult
    {
        Layout layout;
        std::vector<double> trace;
        int iters = 0;
        bool converged = false;
    };

    // Negative gradient with the components that would violate an active
    // region or spacing constraint removed (projection onto the tangent cone).
    RVector feasible_descent_direction(const Layout &layout, const RVector &grad, const SystemConfig &cfg);

    PositionResult update_positions(const PositionObjective &objective, const Layout &start, const SystemConfig &cfg,
                                    const PositionOptions &opts);

    Layout update_positions(const DecisionVars &vars, const Drop &drop, const SystemConfig &cfg,
                            const PositionOptions &opts, PolarizationMode mode = PolarizationMode::Dual);
} // namespace dpma

#endif

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
#include <string>

namespace dpma
{
    namespace
    {
        CMatrix pad3(const CMatrix2 &a)
        {
            CMatrix out = CMatrix::Zero(3, 3);
            out.topLeftCorner<2, 2>() = a;
            return out;
        }

        // Hermitian part of the lifted quartic operator. On vectorized
        // Hermitian matrices it yields the same (real) quadratic form.
        CMatrix coupling_hermitian(const CMatrix &G)
        {
            return 0.5 * (G + G.adjoint());
        }
    } // namespace

    Eigen::Vector3cd lift(const CVector2 &x)
    {
        return {x(0), x(1), cd(1.0)};
    }

    VarpiSubproblemData build_varpi_data(const DecisionVars &vars, const ChannelSet &ch, int target)
    {
        const int B = ch.B, K = ch.K;
        const double inv_bk = 1.0 / (static_cast<double>(B) * K);
        const int b = target;
        VarpiSubproblemData d;
        d.target = b;
        d.own_quadratic.setZero();
        d.forward_quadratic.setZero();
        d.own_linear.setZero();
        d.forward_linear.setZero();
        d.conj_quadratic.setZero();
        d.coupling = CMatrix::Zero(9, 9);

        // user term of link (i <- j, k) without the BS phases of j:
        // s * A_u m with s = a w_i^H H_gen_ij^H h_gen_jk
        auto user_term = [&](int i, int j, int k) -> CVector2
        {
            const size_t u = static_cast<size_t>(j) * K + k;
            const CVector Hw = (i == j) ? CVector(vars.W.col(i)) : CVector(ch.H_gen[i * B + j] * vars.W.col(i));
            const cd s = vars.a(j * K + k) * Hw.dot(ch.h_gen[u]);
            return s * (ch.A_u[u] * vars.pol.m[u]);
        };

        for (int k = 0; k < K; ++k)
        {
            const CVector2 e = user_term(b, b, k);
            d.own_quadratic += e * e.adjoint();
            d.own_linear -= inv_bk * e;
        }
        for (int j = 0; j < B; ++j)
        {
            if (j == b)
                continue;
            const CVector2 &vj = vars.pol.varpi[j];
            const CVector2 Av = ch.A_b[b * B + j] * vj;
            for (int k = 0; k < K; ++k)
            {
                const CVector2 n = Av * user_term(b, j, k).dot(vj);
                d.forward_quadratic += n * n.adjoint();
                d.forward_linear -= inv_bk * n;
            }
        }
        for (int i = 0; i < B; ++i)
        {
            if (i == b)
                continue;
            const CVector2 u = ch.A_b[i * B + b].adjoint() * vars.pol.varpi[i];
            const CMatrix2 F = u * u.adjoint();
            const CVector Fv = vec(pad3(F));
            for (int k = 0; k < K; ++k)
            {
                const CVector2 e = user_term(i, b, k);
                const CMatrix2 D = e * e.adjoint();
                d.cross_left.push_back(F);
                d.cross_right.push_back(D);
                d.conj_quadratic -= inv_bk * (u * e.transpose() + e * u.transpose());
                d.coupling.noalias() += Fv * vec(pad3(D)).adjoint();
            }
        }

        const double gnorm = d.coupling.norm();
        if (gnorm > 0.0)
        {
            const cd lam = max_eig_general(d.coupling);
            if (std::abs(lam.imag()) > 1e-9 * gnorm || lam.real() < -1e-9 * gnorm)
                throw NumericsError("build_varpi_data: leading coupling eigenvalue is not real nonnegative (" +
                                        std::to_string(lam.real()) + ", " + std::to_string(lam.imag()) + ")",
                                    std::abs(lam.imag()) / gnorm);
            d.lam_max_coupling = std::max(lam.real(), 0.0);
        }
        return d;
    }

    double varpi_objective(const VarpiSubproblemData &d, const CVector2 &x)
    {
        double g = x.dot(d.quadratic() * x).real() + 2.0 * d.linear().dot(x).real();
        for (size_t p = 0; p < d.cross_left.size(); ++p)
            g += x.dot(d.cross_left[p] * x).real() * x.dot(d.cross_right[p] * x).real();
        const CVector2 y = x.conjugate();
        g += (y.transpose() * d.conj_quadratic * y)(0).real();
        return g;
    }

    CMatrix lifted_cost(const VarpiSubproblemData &d, const CVector2 &x_t)
    {
        // Re(y^T S y) <= const + 2 Re(zeta^H x) on the unit-modulus set, using
        // ||x - x_t||^2 = 4 - 2 Re(x_t^H x)
        const double snorm = spectral_norm(d.conj_quadratic);
        const CVector2 zeta = d.conj_quadratic * x_t.conjugate() - snorm * x_t;
        const CVector2 l = d.linear() + zeta;
        CMatrix J = CMatrix::Zero(3, 3);
        J.topLeftCorner<2, 2>() = d.quadratic();
        J.block<2, 1>(0, 2) = l;
        J.block<1, 2>(2, 0) = l.adjoint();
        return J;
    }

    P44Result project_unit_diagonal_psd(const CMatrix &Z, double tol, int max_sweeps)
    {
        const Eigen::Index n = Z.rows();
        const CMatrix Zh = 0.5 * (Z + Z.adjoint());
        const double scale = std::max(1.0, Zh.norm());
        CMatrix X = Zh, P = CMatrix::Zero(n, n), Q = CMatrix::Zero(n, n), Y = Zh;
        P44Result res;
        for (res.sweeps = 1; res.sweeps <= max_sweeps; ++res.sweeps)
        {
            const CMatrix XP = X + P;
            Y = project_psd(HermitianMatrix(0.5 * (XP + XP.adjoint()), 1e-9 * scale));
            P = XP - Y;
            CMatrix Xn = Y + Q;
            Xn.diagonal().setOnes();
            Q = Y + Q - Xn;
            const double change = (Xn - X).norm();
            X = Xn;
            if (change <= tol * scale && (X - Y).norm() <= tol * scale)
            {
                res.converged = true;
                break;
            }
        }
        res.sweeps = std::min(res.sweeps, max_sweeps);
        res.kkt_residual = (X - Y).norm() / scale;

        // Restore exact feasibility: PSD clip followed by a diagonal congruence.
        CMatrix V = project_psd(HermitianMatrix(0.5 * (X + X.adjoint()), 1e-9 * scale));
        RVector dscale(n);
        for (Eigen::Index i = 0; i < n; ++i)
        {
            const double dii = V(i, i).real();
            dscale(i) = dii > 1e-300 ? 1.0 / std::sqrt(dii) : 0.0;
        }
        V = dscale.asDiagonal() * V * dscale.asDiagonal();
        for (Eigen::Index i = 0; i < n; ++i)
            if (dscale(i) == 0.0)
            {
                V.row(i).setZero();
                V.col(i).setZero();
                V(i, i) = 1.0;
            }
        for (Eigen::Index i = 0; i < n; ++i)
            V(i, i) = 1.0;
        res.V = 0.5 * (V + V.adjoint());
        return res;
    }

    P44Result solve_p44(const VarpiSubproblemData &d, const CMatrix &J, const CVector &x_t_lifted, double tol,
                        int max_sweeps)
    {
        const CMatrix Gh = coupling_hermitian(d.coupling);
        double lam = 0.0;
        if (Gh.norm() > 0.0)
            lam = hermitian_eig(HermitianMatrix(Gh, 1e-9 * Gh.norm())).values.maxCoeff();
        lam = std::max(lam, 1e-9);
        const CVector q = 2.0 * (Gh * x_t_lifted) - 2.0 * lam * x_t_lifted + vec(J.adjoint());
        const CMatrix Z = -unvec(q, 3, 3) / (2.0 * lam);
        return project_unit_diagonal_psd(Z, tol, max_sweeps);
    }

    CVector2 gaussian_randomize(const CMatrix &V, const VarpiSubproblemData &d, const CVector2 &incumbent,
                                int n_samples, RngStream &rng)
    {
        const EigenDecomposition e = hermitian_eig(HermitianMatrix(0.5 * (V + V.adjoint()), 1e-9));
        const CMatrix root = e.vectors * e.values.cwiseMax(0.0).cwiseSqrt().asDiagonal();
        CVector2 best = incumbent;
        double best_g = varpi_objective(d, incumbent);
        Eigen::Vector3cd z;
        for (int s = 0; s < n_samples; ++s)
        {
            for (int t = 0; t < 3; ++t)
                z(t) = rng.complex_normal(1.0);
            const Eigen::Vector3cd xi = root * z;
            const cd rot = std::conj(unit_phase(xi(2)));
            const CVector2 cand(unit_phase(xi(0)) * rot, unit_phase(xi(1)) * rot);
            const double g = varpi_objective(d, cand);
            if (g < best_g)
            {
                best_g = g;
                best = cand;
            }
        }
        return best;
    }

    std::vector<CVector2> update_varpi(const DecisionVars &vars, ChannelSet &ch, const SystemConfig &,
                                       const VarpiOptions &opts, RngStream &rng, IterationInfo *info)
    {
        DecisionVars cur = vars;
        IterationInfo total;
        total.converged = true;
        for (int b = 0; b < ch.B; ++b)
        {
            const VarpiSubproblemData d = build_varpi_data(cur, ch, b);
            CVector2 x = cur.pol.varpi[b];
            double h = varpi_objective(d, x);
            bool done = false;
            for (int t = 0; t < opts.t_max; ++t)
            {
                const CMatrix J = lifted_cost(d, x);
                const Eigen::Vector3cd xl = lift(x);
                const CVector xt = vec(xl * xl.adjoint());
                const P44Result p = solve_p44(d, J, xt);
                const CVector2 next = gaussian_randomize(p.V, d, x, opts.n_samples, rng);
                const double h_next = varpi_objective(d, next);
                ++total.iters;
                const bool small = std::abs(h - h_next) <= opts.tol * std::max(std::abs(h_next), 1e-300);
                x = next;
                h = h_next;
                if (small)
                {
                    done = true;
                    break;
                }
            }
            total.converged = total.converged && done;
            cur.pol.varpi[b] = x;
            refresh_effective(ch, cur.pol);
        }
        if (info)
            *info = total;
        return cur.pol.varpi;
    }
} // namespace dpma

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
    namespace
    {
        CMatrix2 off_diagonal(const CMatrix2 &D)
        {
            CMatrix2 O = D;
            O.diagonal().setZero();
            return O;
        }
    } // namespace

    CMatrix MSubproblemData::block_diagonal() const
    {
        const Eigen::Index n = static_cast<Eigen::Index>(blocks.size());
        CMatrix D = CMatrix::Zero(2 * n, 2 * n);
        for (Eigen::Index u = 0; u < n; ++u)
            D.block<2, 2>(2 * u, 2 * u) = blocks[u];
        return D;
    }

    CVector MSubproblemData::stacked_nu() const
    {
        CVector out(2 * nu.size());
        for (size_t u = 0; u < nu.size(); ++u)
            out.segment<2>(2 * u) = nu[u];
        return out;
    }

    MSubproblemData build_m_data(const DecisionVars &vars, const ChannelSet &ch)
    {
        const int B = ch.B, K = ch.K;
        MSubproblemData d;
        d.inv_bk = 1.0 / (static_cast<double>(B) * K);
        d.iota.assign(static_cast<size_t>(B) * K, std::vector<CVector2>(B));
        d.blocks.assign(static_cast<size_t>(B) * K, CMatrix2::Zero());
        d.nu.assign(static_cast<size_t>(B) * K, CVector2::Zero());
        for (int j = 0; j < B; ++j)
            for (int k = 0; k < K; ++k)
            {
                const size_t u = static_cast<size_t>(j) * K + k;
                const CVector2 base = ch.A_u[u].adjoint() * vars.pol.varpi[j];
                for (int i = 0; i < B; ++i)
                {
                    const CVector Hw = (i == j) ? CVector(vars.W.col(i)) : CVector(ch.H_at(i, j) * vars.W.col(i));
                    const cd s = vars.a(j * K + k) * Hw.dot(ch.h_gen[u]);
                    const CVector2 iota = std::conj(s) * base;
                    d.iota[u][i] = iota;
                    d.blocks[u] += iota * iota.adjoint();
                    d.nu[u] += iota;
                }
            }
        // On unit-modulus m the diagonal of each block only adds a constant,
        // so the majorizer bounds the off-diagonal part, whose largest
        // eigenvalue is |D_12|. Bounds are per block; one global bound stalls
        // users whose blocks are much smaller than the largest one.
        for (const auto &blk : d.blocks)
        {
            d.lam.push_back(std::abs(blk(0, 1)));
            d.lam_max = std::max(d.lam_max, d.lam.back());
        }
        return d;
    }

    double m_objective(const MSubproblemData &d, const std::vector<CVector2> &m)
    {
        double f = 0.0;
        for (size_t u = 0; u < d.blocks.size(); ++u)
        {
            f += m[u].dot(d.blocks[u] * m[u]).real();
            f -= 2.0 * d.inv_bk * m[u].dot(d.nu[u]).real();
        }
        return f;
    }

    double m_surrogate(const MSubproblemData &d, const std::vector<CVector2> &m, const std::vector<CVector2> &m_t)
    {
        // with O the off-diagonal part of D,
        // m^H O m <= lam m^H m + 2 Re(m^H (O - lam I) m_t) + m_t^H (lam I - O) m_t
        double f = 0.0;
        for (size_t u = 0; u < d.blocks.size(); ++u)
        {
            const CMatrix2 &D = d.blocks[u];
            const CVector2 Om = off_diagonal(D) * m_t[u];
            const double lam = d.lam[u];
            f += D(0, 0).real() * std::norm(m[u](0)) + D(1, 1).real() * std::norm(m[u](1));
            f += lam * m[u].squaredNorm();
            f += 2.0 * m[u].dot(Om - lam * m_t[u]).real();
            f += lam * m_t[u].squaredNorm() - m_t[u].dot(Om).real();
            f -= 2.0 * d.inv_bk * m[u].dot(d.nu[u]).real();
        }
        return f;
    }

    std::vector<CVector2> m_step(const MSubproblemData &d, const std::vector<CVector2> &m_t)
    {
        std::vector<CVector2> out(m_t.size());
        for (size_t u = 0; u < m_t.size(); ++u)
        {
            const CVector2 arg =
                2.0 * (d.lam[u] * m_t[u] - off_diagonal(d.blocks[u]) * m_t[u]) + 2.0 * d.inv_bk * d.nu[u];
            out[u] = CVector2(unit_phase(arg(0)), unit_phase(arg(1)));
        }
        return out;
    }

    std::vector<CVector2> sca_update_m(const DecisionVars &vars, const ChannelSet &ch, const SystemConfig &,
                                       double tol, int t_max, IterationInfo *info)
    {
        const MSubproblemData d = build_m_data(vars, ch);
        std::vector<CVector2> m = vars.pol.m;
        double f = m_objective(d, m);
        IterationInfo it;
        for (it.iters = 0; it.iters < t_max;)
        {
            std::vector<CVector2> next = m_step(d, m);
            const double f_next = m_objective(d, next);
            ++it.iters;
            // roundoff can make the exact objective tick up at a fixed point
            if (f_next > f)
            {
                it.converged = true;
                break;
            }
            const bool small = std::abs(f - f_next) <= tol * std::max(std::abs(f_next), 1e-300);
            m = std::move(next);
            f = f_next;
            if (small)
            {
                it.converged = true;
                break;
            }
        }
        if (info)
            *info = it;
        return m;
    }
} // namespace dpma

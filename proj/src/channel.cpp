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

#include "dpma/channel.hpp"

#include <cmath>

namespace dpma
{
    PolarizationState PolarizationState::ones(int B, int K)
    {
        PolarizationState p;
        p.varpi.assign(B, CVector2::Ones());
        p.m.assign(static_cast<size_t>(B) * K, CVector2::Ones());
        return p;
    }

    bool PolarizationState::unit_modulus(double tol) const
    {
        auto ok = [tol](const CVector2 &v)
        { return std::abs(std::abs(v(0)) - 1.0) <= tol && std::abs(std::abs(v(1)) - 1.0) <= tol; };
        for (const auto &v : varpi)
            if (!ok(v))
                return false;
        for (const auto &v : m)
            if (!ok(v))
                return false;
        return true;
    }

    Eigen::Vector2d direction(double theta, double phi)
    {
        return {std::cos(theta) * std::sin(phi), std::sin(theta)};
    }

    Eigen::MatrixX2d bs_positions(const Layout &layout, int M, int bs)
    {
        Eigen::MatrixX2d p(M, 2);
        for (int m = 0; m < M; ++m)
        {
            p(m, 0) = layout(coord_index(M, bs, m));
            p(m, 1) = layout(coord_index(M, bs, m) + 1);
        }
        return p;
    }

    CMatrix field_response(const Eigen::MatrixX2d &positions, const PathAngles &angles, double lambda)
    {
        const Eigen::Index L = static_cast<Eigen::Index>(angles.theta.size());
        const Eigen::Index M = positions.rows();
        const double k = 2.0 * kPi / lambda;
        CMatrix out(L, M);
        for (Eigen::Index l = 0; l < L; ++l)
        {
            const Eigen::Vector2d v = direction(angles.theta[l], angles.phi[l]);
            for (Eigen::Index m = 0; m < M; ++m)
            {
                const double phase = k * (v(0) * positions(m, 0) + v(1) * positions(m, 1));
                out(l, m) = cd(std::cos(phase), std::sin(phase));
            }
        }
        return out;
    }

    BsFieldResponse field_response_bs(const Eigen::MatrixX2d &layout_tx, const Eigen::MatrixX2d &layout_rx,
                                      const PathAngles &tx_angles, const PathAngles &rx_angles, double lambda)
    {
        return {field_response(layout_tx, tx_angles, lambda), field_response(layout_rx, rx_angles, lambda)};
    }

    UnpolarizedChannels unpolarized_channels(const Drop &drop, const Layout &layout, const SystemConfig &cfg)
    {
        const int B = drop.B, K = drop.K, M = cfg.M;
        UnpolarizedChannels out;
        out.h_gen.resize(static_cast<size_t>(B) * K);
        out.H_gen.resize(static_cast<size_t>(B) * B);
        std::vector<Eigen::MatrixX2d> pos(B);
        for (int i = 0; i < B; ++i)
            pos[i] = bs_positions(layout, M, i);

        for (int i = 0; i < B; ++i)
            for (int k = 0; k < K; ++k)
            {
                const int u = drop.user(i, k);
                const CMatrix Q = field_response_rx_user(pos[i], drop.user_angles[u], cfg.lambda_m);
                out.h_gen[u] = Q.adjoint() * drop.user_gains[u];
            }

        for (int i = 0; i < B; ++i)
            for (int j = 0; j < B; ++j)
            {
                const int l = drop.link(i, j);
                if (i == j)
                {
                    out.H_gen[l] = CMatrix::Identity(M, M);
                    continue;
                }
                // (H_gen)^H = G^H Sigma F, with F on the transmitting BS j and
                // G on the receiving BS i
                const BsFieldResponse fg =
                    field_response_bs(pos[j], pos[i], drop.bs_tx_angles[l], drop.bs_rx_angles[l], cfg.lambda_m);
                const CMatrix HgenH = fg.G.adjoint() * drop.bs_gain_diag[l].asDiagonal() * fg.F;
                out.H_gen[l] = HgenH.adjoint();
            }
        return out;
    }

    double mean_angle(const std::vector<double> &a)
    {
        double s = 0.0;
        for (double v : a)
            s += v;
        return a.empty() ? 0.0 : s / static_cast<double>(a.size());
    }

    std::pair<Eigen::Vector3d, Eigen::Vector3d> polarization_basis(double theta, double phi)
    {
        const Eigen::Vector3d z(std::sin(theta) * std::sin(phi), -std::cos(theta), std::sin(theta) * std::cos(phi));
        const Eigen::Vector3d zbar(std::cos(phi), 0.0, -std::sin(phi));
        return {z, zbar};
    }

    namespace
    {
        const Eigen::Vector3d kEv(0.0, 1.0, 0.0);
        const Eigen::Vector3d kEh(1.0, 0.0, 0.0);

        Eigen::Matrix2d projection_matrix(double theta, double phi)
        {
            const auto [z, zbar] = polarization_basis(theta, phi);
            Eigen::Matrix2d P;
            P << z.dot(kEv), z.dot(kEh), zbar.dot(kEv), zbar.dot(kEh);
            return P;
        }
    } // namespace

    CMatrix2 polarization_response(double theta_tx, double phi_tx, double theta_rx, double phi_rx)
    {
        const Eigen::Matrix2d P = projection_matrix(theta_tx, phi_tx);
        // receive-side matrix has entries e . z, i.e. the transpose layout
        const Eigen::Matrix2d Q = projection_matrix(theta_rx, phi_rx).transpose();
        return (Q * P).cast<cd>();
    }

    PolarizationResponse polarization_matrices(const Drop &drop)
    {
        const int B = drop.B, K = drop.K;
        PolarizationResponse out;
        out.A_u.resize(static_cast<size_t>(B) * K);
        out.A_b.resize(static_cast<size_t>(B) * B);
        for (int u = 0; u < B * K; ++u)
        {
            const double th = mean_angle(drop.user_angles[u].theta);
            const double ph = mean_angle(drop.user_angles[u].phi);
            out.A_u[u] = polarization_response(th, ph, th, ph);
        }
        for (int i = 0; i < B; ++i)
            for (int j = 0; j < B; ++j)
            {
                const int l = drop.link(i, j);
                if (i == j)
                {
                    out.A_b[l] = CMatrix2::Identity();
                    continue;
                }
                out.A_b[l] = polarization_response(mean_angle(drop.bs_tx_angles[l].theta),
                                                   mean_angle(drop.bs_tx_angles[l].phi),
                                                   mean_angle(drop.bs_rx_angles[l].theta),
                                                   mean_angle(drop.bs_rx_angles[l].phi));
            }
        return out;
    }

    cd user_polarization_factor(const CVector2 &varpi, const CMatrix2 &A, const CVector2 &m)
    {
        return varpi.dot(A * m); // dot() conjugates the first argument
    }

    cd bs_polarization_factor(const CVector2 &varpi_i, const CMatrix2 &A, const CVector2 &varpi_j)
    {
        return varpi_i.dot(A * varpi_j);
    }

    void refresh_effective(ChannelSet &ch, const PolarizationState &pol)
    {
        const int B = ch.B, K = ch.K, M = ch.M;
        ch.h.resize(static_cast<size_t>(B) * K);
        ch.H.resize(static_cast<size_t>(B) * B);
        const bool dual = ch.mode == PolarizationMode::Dual;
        for (int i = 0; i < B; ++i)
            for (int k = 0; k < K; ++k)
            {
                const size_t u = static_cast<size_t>(i) * K + k;
                const cd f = dual ? user_polarization_factor(pol.varpi[i], ch.A_u[u], pol.m[u]) : cd(1.0);
                ch.h[u] = ch.h_gen[u] * f;
            }
        for (int i = 0; i < B; ++i)
            for (int j = 0; j < B; ++j)
            {
                const size_t l = static_cast<size_t>(i) * B + j;
                if (i == j)
                {
                    ch.H[l] = CMatrix::Identity(M, M);
                    continue;
                }
                const cd f = dual ? bs_polarization_factor(pol.varpi[i], ch.A_b[l], pol.varpi[j]) : cd(1.0);
                ch.H[l] = ch.H_gen[l] * f;
            }
    }

    ChannelSet effective_channels(UnpolarizedChannels gen, PolarizationResponse pol_resp, const PolarizationState &pol,
                                  PolarizationMode mode)
    {
        ChannelSet ch;
        ch.B = static_cast<int>(pol.varpi.size());
        ch.K = ch.B > 0 ? static_cast<int>(pol.m.size()) / ch.B : 0;
        ch.M = gen.h_gen.empty() ? 0 : static_cast<int>(gen.h_gen.front().size());
        ch.mode = mode;
        ch.h_gen = std::move(gen.h_gen);
        ch.H_gen = std::move(gen.H_gen);
        ch.A_u = std::move(pol_resp.A_u);
        ch.A_b = std::move(pol_resp.A_b);
        refresh_effective(ch, pol);
        return ch;
    }

    ChannelSet build_channels(const Drop &drop, const Layout &layout, const PolarizationState &pol,
                              const SystemConfig &cfg, PolarizationMode mode)
    {
        return effective_channels(unpolarized_channels(drop, layout, cfg), polarization_matrices(drop), pol, mode);
    }
} // namespace dpma

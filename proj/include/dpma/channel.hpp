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

#ifndef DPMA_CHANNEL_HPP
#define DPMA_CHANNEL_HPP

#include "dpma/numerics.hpp"
#include "dpma/scene.hpp"

#include <Eigen/Dense>
#include <vector>

namespace dpma
{
    using CVector2 = Eigen::Vector2cd;
    using CMatrix2 = Eigen::Matrix2cd;

    // Unit-modulus polarization phases: varpi per BS, m per user.
    struct PolarizationState
    {
        std::vector<CVector2> varpi; // B entries
        std::vector<CVector2> m;     // B*K entries, index i*K + k

        static PolarizationState ones(int B, int K);
        bool unit_modulus(double tol = 1e-12) const;
    };

    // Dual: full polarized channel. Single: polarization factor fixed to 1,
    // i.e. effective channels equal the unpolarized ones.
    enum class PolarizationMode
    {
        Dual,
        Single,
    };

    // Planar direction vector (cos(theta) sin(phi), sin(theta)).
    Eigen::Vector2d direction(double theta, double phi);

    // M x 2 matrix of the antenna coordinates of one BS.
    Eigen::MatrixX2d bs_positions(const Layout &layout, int M, int bs);

    // L x M matrix with entries exp(j 2pi/lambda v_l^T r_m). Shared kernel of
    // the receive (user) and transmit/receive (inter-BS) field responses.
    CMatrix field_response(const Eigen::MatrixX2d &positions, const PathAngles &angles, double lambda);

    inline CMatrix field_response_rx_user(const Eigen::MatrixX2d &positions, const PathAngles &angles, double lambda)
    {
        return field_response(positions, angles, lambda);
    }

    struct BsFieldResponse
    {
        CMatrix F; // transmit side, depends on the transmitting BS layout
        CMatrix G; // receive side, depends on the receiving BS layout
    };

    BsFieldResponse field_response_bs(const Eigen::MatrixX2d &layout_tx, const Eigen::MatrixX2d &layout_rx,
                                      const PathAngles &tx_angles, const PathAngles &rx_angles, double lambda);

    struct UnpolarizedChannels
    {
        std::vector<CVector> h_gen; // B*K, M-vectors
        std::vector<CMatrix> H_gen; // B*B, M x M; diagonal entries are identity
    };

    UnpolarizedChannels unpolarized_channels(const Drop &drop, const Layout &layout, const SystemConfig &cfg);

    struct PolarizationResponse
    {
        std::vector<CMatrix2> A_u; // B*K
        std::vector<CMatrix2> A_b; // B*B, identity on the diagonal
    };

    // Electric-field basis (z, zbar) for mean angles.
    std::pair<Eigen::Vector3d, Eigen::Vector3d> polarization_basis(double theta, double phi);
    // A = Q_r P_t with P built from the transmit-side mean angles and Q from
    // the receive-side mean angles.
    CMatrix2 polarization_response(double theta_tx, double phi_tx, double theta_rx, double phi_rx);
    double mean_angle(const std::vector<double> &a);

    PolarizationResponse polarization_matrices(const Drop &drop);

    struct ChannelSet
    {
        int B = 0;
        int K = 0;
        int M = 0;
        PolarizationMode mode = PolarizationMode::Dual;
        std::vector<CVector> h_gen;
        std::vector<CMatrix> H_gen;
        std::vector<CMatrix2> A_u;
        std::vector<CMatrix2> A_b;
        std::vector<CVector> h; // effective
        std::vector<CMatrix> H; // effective, H(i,i) = I

        const CVector &h_at(int i, int k) const { return h[static_cast<size_t>(i) * K + k]; }
        const CMatrix &H_at(int i, int j) const { return H[static_cast<size_t>(i) * B + j]; }
    };

    // varpi_i^H A m (user link) and varpi_i^H A varpi_j (BS link).
    cd user_polarization_factor(const CVector2 &varpi, const CMatrix2 &A, const CVector2 &m);
    cd bs_polarization_factor(const CVector2 &varpi_i, const CMatrix2 &A, const CVector2 &varpi_j);

    ChannelSet effective_channels(UnpolarizedChannels gen, PolarizationResponse pol_resp, const PolarizationState &pol,
                                  PolarizationMode mode = PolarizationMode::Dual);

    // Recomputes h and H in place after a polarization change.
    void refresh_effective(ChannelSet &ch, const PolarizationState &pol);

    ChannelSet build_channels(const Drop &drop, const Layout &layout, const PolarizationState &pol,
                              const SystemConfig &cfg, PolarizationMode mode = PolarizationMode::Dual);
} // namespace dpma

#endif

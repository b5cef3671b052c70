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
#include "support/instances.hpp"

#include <doctest.h>

#include <cmath>

using namespace dpma;

TEST_SUITE("channel")
{
    TEST_CASE("field response entries")
    {
        const double lambda = 0.1;
        Eigen::MatrixX2d pos(3, 2);
        pos << 0.0, 0.0, 0.3, -0.2, -0.05, 0.17;
        PathAngles zero{{0.0, 0.0}, {0.0, 0.0}};
        CHECK(field_response(pos, zero, lambda).isApprox(CMatrix::Ones(2, 3)));

        Eigen::MatrixX2d q(1, 2);
        q << 0.25 * lambda, 0.0;
        const CMatrix e = field_response(q, PathAngles{{0.0}, {0.5 * kPi}}, lambda);
        CHECK(std::abs(e(0, 0) - kJ) <= 1e-12);

        RngStream rng(1, Stream::Test);
        const PathAngles a = sample_path_angles(rng, 4);
        const CMatrix f = field_response(pos, a, lambda);
        CHECK((f.cwiseAbs().array() - 1.0).abs().maxCoeff() <= 1e-12);
    }

    TEST_CASE("transmit response at vertical incidence depends only on y")
    {
        const double lambda = 0.1;
        Eigen::MatrixX2d tx(2, 2), rx(2, 2);
        tx << 0.0, 0.02, 0.3, 0.02;
        rx.setZero();
        const PathAngles up{{0.5 * kPi}, {0.3}};
        const BsFieldResponse fg = field_response_bs(tx, rx, up, PathAngles{{0.0}, {0.0}}, lambda);
        CHECK(std::abs(fg.F(0, 0) - fg.F(0, 1)) <= 1e-12);
        CHECK(fg.G.isApprox(CMatrix::Ones(1, 2)));
    }

    TEST_CASE("generic user channel matches a direct path sum")
    {
        SystemConfig c = SystemConfig::desk_profile();
        const Drop d = sample_drop(c, 1);
        Layout r = initial_layout(c);
        r(0) += 0.013;
        const UnpolarizedChannels u = unpolarized_channels(d, r, c);
        const double k = 2.0 * kPi / c.lambda_m;
        for (int i = 0; i < c.B; ++i)
            for (int kk = 0; kk < c.K; ++kk)
            {
                const int user = d.user(i, kk);
                for (int m = 0; m < c.M; ++m)
                {
                    const double x = r(coord_index(c.M, i, m)), y = r(coord_index(c.M, i, m) + 1);
                    cd s = 0.0;
                    for (int l = 0; l < c.L; ++l)
                    {
                        const double th = d.user_angles[user].theta[l], ph = d.user_angles[user].phi[l];
                        const double phase = k * (std::cos(th) * std::sin(ph) * x + std::sin(th) * y);
                        s += std::polar(1.0, -phase) * d.user_gains[user](l);
                    }
                    CHECK(std::abs(u.h_gen[user](m) - s) <= 1e-12 * std::abs(s) + 1e-20);
                }
            }
        for (int i = 0; i < c.B; ++i)
            CHECK(u.H_gen[d.link(i, i)].isApprox(CMatrix::Identity(c.M, c.M)));
    }

    TEST_CASE("single path with all-ones response")
    {
        SystemConfig c = SystemConfig::desk_profile();
        c.B = 1;
        c.L = 1;
        Drop d = sample_drop(c, 0);
        d.user_angles[0] = PathAngles{{0.0}, {0.0}};
        const UnpolarizedChannels u = unpolarized_channels(d, initial_layout(c), c);
        CHECK((u.h_gen[0] - CVector::Constant(c.M, d.user_gains[0](0))).norm() <= 1e-15);
    }

    TEST_CASE("polarization basis and response")
    {
        RngStream rng(2, Stream::Test);
        for (int t = 0; t < 10; ++t)
        {
            const double th = rng.uniform(-0.5 * kPi, 0.5 * kPi), ph = rng.uniform(-kPi, kPi);
            const auto [z, zbar] = polarization_basis(th, ph);
            CHECK(z.norm() == doctest::Approx(1.0));
            CHECK(zbar.norm() == doctest::Approx(1.0));
            CHECK(std::abs(z.dot(zbar)) <= 1e-12);
        }
        CHECK(polarization_response(0.0, 0.0, 0.0, 0.0).isApprox(CMatrix2::Identity()));
        CHECK(mean_angle({0.2, 0.4, 0.9}) == doctest::Approx(0.5));
    }

    TEST_CASE("effective channels carry the polarization factor")
    {
        RngStream rng(3, Stream::Test);
        const PolarizationState pol = dpma::testing::random_polarization(rng, 2, 3);
        const ChannelSet ch = dpma::testing::random_channels(rng, 2, 3, 4, pol);
        for (int i = 0; i < 2; ++i)
            for (int k = 0; k < 3; ++k)
            {
                const size_t u = static_cast<size_t>(i) * 3 + k;
                const cd f = pol.varpi[i].adjoint() * ch.A_u[u] * pol.m[u];
                CHECK((ch.h_at(i, k) - f * ch.h_gen[u]).norm() <= 1e-12 * ch.h_gen[u].norm());
            }
        const cd f01 = pol.varpi[0].adjoint() * ch.A_b[1] * pol.varpi[1];
        CHECK((ch.H_at(0, 1) - f01 * ch.H_gen[1]).norm() <= 1e-12 * ch.H_gen[1].norm());
        CHECK(ch.H_at(1, 1).isApprox(CMatrix::Identity(4, 4)));

        // identity response with all-ones phases doubles the channel
        CHECK(user_polarization_factor(CVector2::Ones(), CMatrix2::Identity(), CVector2::Ones()) == cd(2.0));

        ChannelSet single = ch;
        single.mode = PolarizationMode::Single;
        refresh_effective(single, pol);
        for (size_t u = 0; u < single.h.size(); ++u)
            CHECK(single.h[u] == single.h_gen[u]);
        CHECK(single.H_at(0, 1) == single.H_gen[1]);
    }

    TEST_CASE("unit modulus check")
    {
        PolarizationState p = PolarizationState::ones(2, 2);
        CHECK(p.unit_modulus());
        p.m[3](1) = 1.1;
        CHECK_FALSE(p.unit_modulus());
    }
}

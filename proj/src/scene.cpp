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

#include "dpma/scene.hpp"

#include "dpma/rng.hpp"

#include <cmath>

namespace dpma
{
    namespace
    {
        // relative slack on geometric constraints so that an exact
        // lambda/2 grid is accepted despite rounding
        constexpr double kGeomSlack = 1e-9;
    } // namespace

    PathAngles sample_path_angles(RngStream &rng, int L)
    {
        PathAngles a;
        a.theta.resize(L);
        a.phi.resize(L);
        for (int l = 0; l < L; ++l)
        {
            a.theta[l] = rng.uniform(-0.5 * kPi, 0.5 * kPi);
            a.phi[l] = rng.uniform(-kPi, kPi);
        }
        return a;
    }

    double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
    double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

    SystemConfig SystemConfig::full_profile()
    {
        SystemConfig c;
        c.B = 3;
        c.K = 8;
        c.M = 4;
        c.L = 3;
        c.set_carrier(3e9);
        c.P = dbm_to_watt(30.0);
        c.sigma_n2 = dbm_to_watt(-94.0);
        c.sigma_I2 = dbm_to_watt(-88.0);
        return c;
    }

    SystemConfig SystemConfig::desk_profile()
    {
        SystemConfig c = full_profile();
        c.B = 2;
        c.K = 4;
        return c;
    }

    void SystemConfig::set_carrier(double hz)
    {
        const double ratio = region_half_width / lambda_m;
        carrier_hz = hz;
        lambda_m = kSpeedOfLight / hz;
        region_half_width = ratio * lambda_m;
        D0 = 0.5 * lambda_m;
    }

    double SystemConfig::path_gain(double d) const
    {
        return K0() * std::pow(d / d0, -beta);
    }

    void SystemConfig::validate() const
    {
        if (B < 1 || K < 1 || M < 1 || L < 1)
            throw ConfigError("B, K, M and L must be >= 1");
        if (!(P > 0.0))
            throw ConfigError("P must be positive");
        if (!(carrier_hz > 0.0) || !(lambda_m > 0.0))
            throw ConfigError("carrier frequency and wavelength must be positive");
        if (std::abs(lambda_m - kSpeedOfLight / carrier_hz) > 1e-9 * lambda_m)
            throw ConfigError("lambda_m is inconsistent with carrier_hz");
        if (sigma_n2 < 0.0 || sigma_I2 < 0.0)
            throw ConfigError("noise powers must be non-negative");
        if (!(D0 > 0.0))
            throw ConfigError("D0 must be positive");
        if (region_half_width < D0)
            throw ConfigError("region_half_width must be >= D0");
        if (!(d0 > 0.0) || beta < 0.0 || rician_r < 0.0 || !(d_min_bs > 0.0))
            throw ConfigError("path-loss parameters out of range");
        if (!(user_annulus.first > 0.0) || user_annulus.second < user_annulus.first)
            throw ConfigError("user_annulus must satisfy 0 < inner <= outer");
        const int side = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(M))));
        const double extent = 0.5 * (side - 1) * D0;
        if (extent > region_half_width * (1.0 + kGeomSlack))
            throw ConfigError("a D0-spaced grid of M antennas does not fit in the movement region");
    }

    double distance(const Point2 &a, const Point2 &b)
    {
        return std::hypot(a.x - b.x, a.y - b.y);
    }

    Drop sample_drop(const SystemConfig &cfg, std::uint64_t drop_index, std::uint64_t realization)
    {
        cfg.validate();
        Drop d;
        d.B = cfg.B;
        d.K = cfg.K;
        d.L = cfg.L;
        const int B = cfg.B, K = cfg.K, L = cfg.L;

        // Regular B-gon whose shortest chord equals d_min_bs.
        d.bs_positions.resize(B);
        if (B == 2)
        {
            d.bs_positions[0] = {-0.5 * cfg.d_min_bs, 0.0};
            d.bs_positions[1] = {0.5 * cfg.d_min_bs, 0.0};
        }
        else if (B > 2)
        {
            const double radius = cfg.d_min_bs / (2.0 * std::sin(kPi / B));
            for (int i = 0; i < B; ++i)
            {
                const double ang = 2.0 * kPi * i / B;
                d.bs_positions[i] = {radius * std::cos(ang), radius * std::sin(ang)};
            }
        }

        RngStream geo(cfg.rng_seed, Stream::Geometry, drop_index);
        const double r_in = cfg.user_annulus.first, r_out = cfg.user_annulus.second;
        d.user_positions.resize(static_cast<size_t>(B) * K);
        for (int i = 0; i < B; ++i)
            for (int k = 0; k < K; ++k)
            {
                // area-uniform radius
                const double u = geo.uniform();
                const double rad = std::sqrt(r_in * r_in + u * (r_out * r_out - r_in * r_in));
                const double ang = geo.uniform(-kPi, kPi);
                d.user_positions[d.user(i, k)] = {d.bs_positions[i].x + rad * std::cos(ang),
                                                  d.bs_positions[i].y + rad * std::sin(ang)};
            }

        RngStream ang(cfg.rng_seed, Stream::Angles, drop_index, realization);
        d.user_angles.resize(static_cast<size_t>(B) * K);
        for (auto &a : d.user_angles)
            a = sample_path_angles(ang, L);
        d.bs_tx_angles.resize(static_cast<size_t>(B) * B);
        d.bs_rx_angles.resize(static_cast<size_t>(B) * B);
        for (int i = 0; i < B; ++i)
            for (int j = 0; j < B; ++j)
            {
                if (i == j)
                    continue;
                d.bs_tx_angles[d.link(i, j)] = sample_path_angles(ang, L);
                d.bs_rx_angles[d.link(i, j)] = sample_path_angles(ang, L);
            }

        RngStream gain(cfg.rng_seed, Stream::Gains, drop_index, realization);
        d.user_gains.resize(static_cast<size_t>(B) * K);
        for (int i = 0; i < B; ++i)
            for (int k = 0; k < K; ++k)
            {
                const double pl = cfg.path_gain(distance(d.bs_positions[i], d.user_positions[d.user(i, k)]));
                CVector u(L);
                for (int l = 0; l < L; ++l)
                    u(l) = gain.complex_normal(pl / L);
                d.user_gains[d.user(i, k)] = u;
            }
        d.bs_gain_diag.resize(static_cast<size_t>(B) * B);
        for (int i = 0; i < B; ++i)
            for (int j = 0; j < B; ++j)
            {
                if (i == j)
                    continue;
                const double pl = cfg.path_gain(distance(d.bs_positions[i], d.bs_positions[j]));
                const double r = cfg.rician_r;
                CVector s(L);
                if (L == 1)
                    s(0) = gain.complex_normal(pl);
                else
                {
                    s(0) = gain.complex_normal(pl * r / (1.0 + r));
                    for (int l = 1; l < L; ++l)
                        s(l) = gain.complex_normal(pl / ((1.0 + r) * (L - 1)));
                }
                d.bs_gain_diag[d.link(i, j)] = s;
            }
        return d;
    }

    Layout initial_layout(const SystemConfig &cfg)
    {
        cfg.validate();
        const int side = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(cfg.M))));
        const double spacing = cfg.D0;
        const double offset = 0.5 * (side - 1) * spacing;
        Layout r(2 * cfg.B * cfg.M);
        for (int i = 0; i < cfg.B; ++i)
            for (int m = 0; m < cfg.M; ++m)
            {
                const int row = m / side, col = m % side;
                r(coord_index(cfg.M, i, m)) = col * spacing - offset;
                r(coord_index(cfg.M, i, m) + 1) = row * spacing - offset;
            }
        return r;
    }

    bool check_layout_feasible(const Layout &layout, const SystemConfig &cfg)
    {
        if (layout.size() != 2 * cfg.B * cfg.M || !layout.allFinite())
            return false;
        const double lim = cfg.region_half_width * (1.0 + kGeomSlack);
        const double dmin = cfg.D0 * (1.0 - kGeomSlack);
        for (int i = 0; i < cfg.B; ++i)
        {
            for (int m = 0; m < cfg.M; ++m)
            {
                const Eigen::Index a = coord_index(cfg.M, i, m);
                if (std::abs(layout(a)) > lim || std::abs(layout(a + 1)) > lim)
                    return false;
                for (int n = m + 1; n < cfg.M; ++n)
                {
                    const Eigen::Index b = coord_index(cfg.M, i, n);
                    if (std::hypot(layout(a) - layout(b), layout(a + 1) - layout(b + 1)) < dmin)
                        return false;
                }
            }
        }
        return true;
    }
} // namespace dpma

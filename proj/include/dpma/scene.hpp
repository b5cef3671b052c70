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

#ifndef DPMA_SCENE_HPP
#define DPMA_SCENE_HPP

#include "dpma/numerics.hpp"
#include "dpma/rng.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dpma
{
    inline constexpr double kSpeedOfLight = 299792458.0;

    class ConfigError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    double dbm_to_watt(double dbm);
    double db_to_linear(double db);

    // All scalar physical and simulation parameters. Powers are linear (W),
    // lengths in meters, angles in radians.
    struct SystemConfig
    {
        int B = 3;
        int K = 8;
        int M = 4;
        int L = 3;
        double carrier_hz = 3e9;
        double lambda_m = kSpeedOfLight / 3e9;
        double P = 1.0;
        double sigma_n2 = 0.0;
        double sigma_I2 = 0.0;
        double region_half_width = 4.0 * kSpeedOfLight / 3e9;
        double D0 = 0.5 * kSpeedOfLight / 3e9;
        double K0_db = -40.0;
        double d0 = 1.0;
        double beta = 1.5;
        double rician_r = 1.0;
        double d_min_bs = 200.0;
        std::pair<double, double> user_annulus{20.0, 50.0};
        std::uint64_t rng_seed = 1;

        // Full-scale simulation profile (B=3, K=8, M=4, L=3, P=30 dBm).
        static SystemConfig full_profile();
        // Reduced profile used by CI and the acceptance suite (B=2, K=4).
        static SystemConfig desk_profile();

        double sigma2() const { return sigma_n2 + sigma_I2; }
        double K0() const { return db_to_linear(K0_db); }
        double path_gain(double distance) const;

        // Recomputes lambda-dependent defaults after a carrier change.
        void set_carrier(double hz);

        // Throws ConfigError on violated invariants.
        void validate() const;
    };

    struct Point2
    {
        double x = 0.0;
        double y = 0.0;
    };

    double distance(const Point2 &a, const Point2 &b);

    // Per-path elevation/azimuth pairs of one link.
    struct PathAngles
    {
        std::vector<double> theta; // elevation in [-pi/2, pi/2]
        std::vector<double> phi;   // azimuth in [-pi, pi]
    };

    // L independent paths, elevation and azimuth uniform on their ranges.
    PathAngles sample_path_angles(RngStream &rng, int L);

    // One random realization of geometry, angles and path gains. Inter-BS
    // quantities are indexed by link(i, j) = i * B + j and left empty for i == j.
    struct Drop
    {
        int B = 0;
        int K = 0;
        int L = 0;
        std::vector<Point2> bs_positions;
        std::vector<Point2> user_positions; // index i * K + k
        std::vector<PathAngles> user_angles;
        std::vector<PathAngles> bs_tx_angles;
        std::vector<PathAngles> bs_rx_angles;
        std::vector<CVector> user_gains;
        std::vector<CVector> bs_gain_diag;

        int user(int i, int k) const { return i * K + k; }
        int link(int i, int j) const { return i * B + j; }
    };

    // Geometry is keyed by (seed, drop_index); angles and gains additionally by
    // the realization index so that small-scale resampling keeps geometry fixed.
    Drop sample_drop(const SystemConfig &cfg, std::uint64_t drop_index = 0, std::uint64_t realization = 0);

    // Antenna layout of all BSs: 2*B*M coordinates ordered
    // (x_{1,1}, y_{1,1}, x_{1,2}, ..., y_{B,M}) in local BS frames.
    using Layout = RVector;

    inline Eigen::Index coord_index(int M, int bs, int ant) { return 2 * (static_cast<Eigen::Index>(bs) * M + ant); }

    Layout initial_layout(const SystemConfig &cfg);

    // Region |x|,|y| <= half width and pairwise spacing >= D0 (Euclidean).
    bool check_layout_feasible(const Layout &layout, const SystemConfig &cfg);
} // namespace dpma

#endif

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

#include "dpma/distributed_demo.hpp"
#include "dpma/experiments.hpp"

#include <doctest.h>

#include <atomic>
#include <cmath>

using namespace dpma;

namespace
{
    // One BS, one user, one antenna, noiseless, exact aggregation: w^H h a = 1.
    struct ScalarLink
    {
        SystemConfig cfg;
        DecisionVars vars;
        ChannelSet ch;
    };

    ScalarLink scalar_link()
    {
        ScalarLink s;
        s.cfg = SystemConfig::desk_profile();
        s.cfg.B = s.cfg.K = s.cfg.M = 1;
        s.cfg.sigma_n2 = s.cfg.sigma_I2 = 0.0;
        s.vars = DecisionVars::initial(s.cfg);
        CVector h(1);
        h(0) = cd(0.6, -0.8);
        UnpolarizedChannels gen{{h}, {CMatrix::Identity(1, 1)}};
        PolarizationResponse resp{{CMatrix2::Identity()}, {CMatrix2::Identity()}};
        s.ch = effective_channels(gen, resp, s.vars.pol, PolarizationMode::Single);
        s.vars.a(0) = 1.0;
        s.vars.W(0, 0) = h(0); // |h| = 1
        return s;
    }
} // namespace

TEST_SUITE("experiments")
{
    TEST_CASE("experiment settings validation")
    {
        ExperimentSpec s;
        s.name = "vs_power";
        CHECK_NOTHROW(s.validate());
        s.name = "nope";
        CHECK_THROWS_AS(s.validate(), ConfigError);
        s.name = "vs_power";
        s.n_drops = 0;
        CHECK_THROWS_AS(s.validate(), ConfigError);
        s.n_drops = 1;
        s.schemes = {"dpma", "xyz"};
        CHECK_THROWS_AS(s.validate(), ConfigError);
        s.schemes.clear();
        CHECK_THROWS_AS(s.validate(), ConfigError);
    }

    TEST_CASE("sweeps")
    {
        CHECK(experiment_names().size() == 10);
        CHECK(default_sweep("vs_power", false) == std::vector<double>{20, 25, 30});
        CHECK(sweep_parameter("vs_region") == "region_half_width_lambda");
        const SystemConfig c = SystemConfig::desk_profile();
        CHECK(apply_sweep(c, "vs_antennas", 6).M == 6);
        CHECK(apply_sweep(c, "vs_cells", 4).B == 4);
        CHECK(apply_sweep(c, "vs_cells", 4).K == c.K);
        CHECK(apply_sweep(c, "vs_power", 20).P == doctest::Approx(0.1));
        CHECK(apply_sweep(c, "vs_region", 1).region_half_width == doctest::Approx(c.lambda_m));
        CHECK_THROWS_AS(apply_sweep(c, "vs_antennas", 0), ConfigError);
    }

    TEST_CASE("parallel_for visits every index once")
    {
        std::vector<std::atomic<int>> hits(50);
        parallel_for(50, 4, [&](int i) { hits[i]++; });
        for (auto &h : hits)
            CHECK(h.load() == 1);
    }

    TEST_CASE("row-count contract")
    {
        ExperimentSpec s;
        s.name = "vs_power";
        s.n_drops = 1;
        s.ao.t_max = 2;
        const ExperimentResult r = run_experiment(s, SystemConfig::desk_profile());
        CHECK(r.table.rows.size() == 3 * 3);
        for (const auto &row : r.table.rows)
        {
            CHECK(row.size() == r.table.header.size());
            CHECK(row.back().empty());
        }
        CHECK(r.timing.is_array());
        CHECK(r.timing.size() == 3 * 3);
    }

    TEST_CASE("demo objective is the average of the local objectives")
    {
        RngStream rng(1, Stream::Demo);
        const DemoProblem p = DemoProblem::random(2, 3, 4, 6, rng);
        const RVector x = RVector::LinSpaced(4, -1.0, 1.0);
        double s = 0.0;
        for (int u = 0; u < 6; ++u)
            s += 0.5 * (p.A[u] * x - p.b[u]).squaredNorm();
        CHECK(p.global_objective(x) == doctest::Approx(s / 6.0));
        CHECK(p.mean_gradient(p.centralized_optimum()).norm() <= 1e-10);
    }

    TEST_CASE("noiseless exact aggregation reproduces centralized gradient descent")
    {
        const ScalarLink s = scalar_link();
        RngStream rng(2, Stream::Demo);
        DemoProblem p = DemoProblem::random(1, 1, 1, 3, rng);
        p.step = 0.3;
        p.tol = 1e-20;
        p.max_rounds = 60;
        RngStream noise(3, Stream::Demo);
        const DemoResult r = distributed_demo(p, s.vars, s.ch, s.cfg, noise);
        RVector x = RVector::Zero(1);
        for (size_t t = 1; t < r.trajectory.size(); ++t)
        {
            x -= p.step * p.mean_gradient(x);
            CHECK(std::abs(r.trajectory[t][0](0) - x(0)) <= 1e-9);
        }
    }

    TEST_CASE("divergence is reported")
    {
        const ScalarLink s = scalar_link();
        RngStream rng(2, Stream::Demo);
        DemoProblem p = DemoProblem::random(1, 1, 2, 4, rng);
        p.step = 50.0;
        RngStream noise(3, Stream::Demo);
        CHECK_THROWS_AS(distributed_demo(p, s.vars, s.ch, s.cfg, noise), DivergenceError);
        DemoProblem q = DemoProblem::random(2, 1, 2, 4, rng);
        CHECK_THROWS_AS(distributed_demo(q, s.vars, s.ch, s.cfg, noise), std::invalid_argument);
    }
}

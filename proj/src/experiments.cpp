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

#include "dpma/experiments.hpp"

#include "dpma/distributed_demo.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <optional>

namespace dpma
{
    const std::vector<std::string> &experiment_names()
    {
        static const std::vector<std::string> names{
            "convergence", "vs_antennas", "vs_cells",  "vs_users",    "vs_power",
            "vs_paths",    "vs_region",   "multicell_vs_singlecell", "statistical", "distributed_demo"};
        return names;
    }

    std::vector<double> default_sweep(const std::string &name, bool full)
    {
        if (name == "vs_antennas")
            return full ? std::vector<double>{2, 4, 6, 8} : std::vector<double>{4, 6};
        if (name == "vs_cells")
            return {2, 3, 4};
        if (name == "vs_users")
            return full ? std::vector<double>{4, 6, 8, 10} : std::vector<double>{4, 8};
        if (name == "vs_power" || name == "multicell_vs_singlecell")
            return full ? std::vector<double>{10, 15, 20, 25, 30} : std::vector<double>{20, 25, 30};
        if (name == "vs_paths")
            return {2, 3, 4};
        if (name == "vs_region")
            return {1, 2, 4};
        if (name == "statistical")
            return full ? std::vector<double>{20, 25, 30} : std::vector<double>{30};
        return {0};
    }

    std::string sweep_parameter(const std::string &name)
    {
        if (name == "vs_antennas")
            return "M";
        if (name == "vs_cells")
            return "B";
        if (name == "vs_users")
            return "K";
        if (name == "vs_power" || name == "multicell_vs_singlecell" || name == "statistical")
            return "P_dbm";
        if (name == "vs_paths")
            return "L";
        if (name == "vs_region")
            return "region_half_width_lambda";
        if (name == "convergence")
            return "iteration";
        if (name == "distributed_demo")
            return "round";
        return "none";
    }

    void ExperimentSpec::validate() const
    {
        bool known = false;
        for (const auto &n : experiment_names())
            known = known || n == name;
        if (!known)
            throw ConfigError("unknown experiment '" + name + "'");
        if (n_drops < 1)
            throw ConfigError("n_drops must be >= 1");
        if (schemes.empty())
            throw ConfigError("at least one scheme is required");
        for (const auto &s : schemes)
            if (s != "dpma" && s != "ma" && s != "fpa")
                throw ConfigError("unknown scheme '" + s + "'");
        if (n_samples < 1 || n_heldout < 1 || workers < 1 || demo_dim < 1)
            throw ConfigError("n_samples, n_heldout, workers and demo_dim must be >= 1");
    }

    SystemConfig apply_sweep(const SystemConfig &cfg, const std::string &name, double value)
    {
        SystemConfig c = cfg;
        const int iv = static_cast<int>(std::lround(value));
        if (name == "vs_antennas")
            c.M = iv;
        else if (name == "vs_cells")
            c.B = iv;
        else if (name == "vs_users")
            c.K = iv;
        else if (name == "vs_power" || name == "multicell_vs_singlecell" || name == "statistical")
            c.P = dbm_to_watt(value);
        else if (name == "vs_paths")
            c.L = iv;
        else if (name == "vs_region")
            c.region_half_width = value * c.lambda_m;
        c.validate();
        return c;
    }

    namespace
    {
        using Clock = std::chrono::steady_clock;

        double seconds(Clock::time_point t0)
        {
            return std::chrono::duration<double>(Clock::now() - t0).count();
        }

        struct Outcome
        {
            std::optional<SolveReport> report;
            double value = 0.0; // MSE used for aggregation
            std::string error;
        };

        SolveReport run_scheme(const std::string &scheme, const Drop &drop, const SystemConfig &cfg,
                               AoOptions opts)
        {
            if (scheme == "ma")
                return solve_ma(drop, cfg, opts);
            if (scheme == "fpa")
                return solve_fpa(drop, cfg, opts);
            return solve_dpma(drop, cfg, opts);
        }

        const std::vector<std::string> kHeader{"experiment", "parameter", "value",       "scheme",
                                               "n_drops",    "n_failed",  "mean_mse",    "std_error",
                                               "mean_outer_iters", "mean_inner_iters", "error"};

        std::vector<std::string> summary_row(const ExperimentSpec &spec, double value, const std::string &scheme,
                                             const std::vector<Outcome> &out)
        {
            double sum = 0.0, sum_sq = 0.0, iters = 0.0, inner = 0.0;
            int ok = 0;
            std::string error;
            for (const auto &o : out)
            {
                if (!o.error.empty())
                {
                    if (error.empty())
                        error = o.error;
                    continue;
                }
                ++ok;
                sum += o.value;
                sum_sq += o.value * o.value;
                if (o.report)
                {
                    iters += o.report->iters;
                    inner += o.report->inner_iters;
                }
            }
            const double mean = ok ? sum / ok : NAN;
            const double var = ok > 1 ? std::max(0.0, (sum_sq - ok * mean * mean) / (ok - 1.0)) : 0.0;
            return {spec.name,
                    sweep_parameter(spec.name),
                    format_double(value),
                    scheme,
                    std::to_string(out.size()),
                    std::to_string(out.size() - ok),
                    format_double(mean),
                    format_double(ok ? std::sqrt(var / ok) : NAN),
                    format_double(ok ? iters / ok : NAN),
                    format_double(ok ? inner / ok : NAN),
                    error};
        }

        AoOptions options_for(const ExperimentSpec &spec, int drop)
        {
            AoOptions o = spec.ao;
            o.randomization_key = static_cast<std::uint64_t>(drop);
            return o;
        }

        template <class Solve>
        std::vector<Outcome> over_drops(const ExperimentSpec &spec, Solve &&solve)
        {
            std::vector<Outcome> out(spec.n_drops);
            parallel_for(spec.n_drops, spec.workers,
                         [&](int d)
                         {
                             try
                             {
                                 out[d] = solve(d);
                             }
                             catch (const std::exception &e)
                             {
                                 out[d].error = e.what();
                             }
                         });
            return out;
        }

        Outcome from_report(SolveReport rep)
        {
            Outcome o;
            o.value = rep.mse_trace.back();
            o.report = std::move(rep);
            return o;
        }

        void run_sweep(const ExperimentSpec &spec, const SystemConfig &base, ExperimentResult &res)
        {
            for (double v : spec.sweep.empty() ? default_sweep(spec.name, spec.full_scale) : spec.sweep)
            {
                const SystemConfig cfg = apply_sweep(base, spec.name, v);
                for (const auto &scheme : spec.schemes)
                {
                    const auto t0 = Clock::now();
                    const auto out = over_drops(spec,
                                                [&](int d)
                                                {
                                                    const Drop drop = sample_drop(cfg, d);
                                                    return from_report(
                                                        run_scheme(scheme, drop, cfg, options_for(spec, d)));
                                                });
                    res.table.rows.push_back(summary_row(spec, v, scheme, out));
                    res.timing.push_back({{"value", v}, {"scheme", scheme}, {"seconds", seconds(t0)}});
                }
            }
        }

        void run_convergence(const ExperimentSpec &spec, const SystemConfig &cfg, ExperimentResult &res)
        {
            for (const auto &scheme : spec.schemes)
            {
                const auto t0 = Clock::now();
                const auto out = over_drops(spec,
                                            [&](int d)
                                            {
                                                const Drop drop = sample_drop(cfg, d);
                                                return from_report(run_scheme(scheme, drop, cfg, options_for(spec, d)));
                                            });
                size_t len = 0;
                for (const auto &o : out)
                    if (o.report)
                        len = std::max(len, o.report->mse_trace.size());
                // converged runs are held at their final value
                for (size_t t = 0; t < len; ++t)
                {
                    std::vector<Outcome> at(out.size());
                    for (size_t d = 0; d < out.size(); ++d)
                    {
                        at[d].error = out[d].error;
                        if (!out[d].report)
                            continue;
                        const auto &rep = *out[d].report;
                        const size_t k = std::min(t, rep.mse_trace.size() - 1);
                        at[d].value = rep.mse_trace[k];
                        SolveReport r;
                        r.iters = static_cast<int>(k);
                        r.inner_iters = rep.inner_trace[k];
                        at[d].report = std::move(r);
                    }
                    res.table.rows.push_back(summary_row(spec, static_cast<double>(t), scheme, at));
                }
                res.timing.push_back({{"scheme", scheme}, {"seconds", seconds(t0)}});
            }
        }

        void run_multicell(const ExperimentSpec &spec, const SystemConfig &base, ExperimentResult &res)
        {
            for (double v : spec.sweep.empty() ? default_sweep(spec.name, spec.full_scale) : spec.sweep)
            {
                const SystemConfig cfg = apply_sweep(base, spec.name, v);
                for (const std::string topology : {"multicell", "singlecell"})
                {
                    const auto t0 = Clock::now();
                    const auto out = over_drops(spec,
                                                [&](int d)
                                                {
                                                    const Drop drop = sample_drop(cfg, d);
                                                    if (topology == "multicell")
                                                        return from_report(solve_dpma(drop, cfg, options_for(spec, d)));
                                                    const auto [sd, sc] = single_cell_scenario(drop, cfg, d);
                                                    return from_report(solve_dpma(sd, sc, options_for(spec, d)));
                                                });
                    res.table.rows.push_back(summary_row(spec, v, "dpma-" + topology, out));
                    res.timing.push_back({{"value", v}, {"scheme", "dpma-" + topology}, {"seconds", seconds(t0)}});
                }
            }
        }

        void run_statistical(const ExperimentSpec &spec, const SystemConfig &base, ExperimentResult &res)
        {
            for (double v : spec.sweep.empty() ? default_sweep(spec.name, spec.full_scale) : spec.sweep)
            {
                const SystemConfig cfg = apply_sweep(base, spec.name, v);
                struct PerDrop
                {
                    double instantaneous = 0.0, statistical = 0.0, grid_heldout = 0.0, stat_heldout = 0.0;
                    std::string error;
                };
                std::vector<PerDrop> per(spec.n_drops);
                const auto t0 = Clock::now();
                parallel_for(spec.n_drops, spec.workers,
                             [&](int d)
                             {
                                 try
                                 {
                                     std::vector<Drop> train, held;
                                     for (int s = 0; s < spec.n_samples; ++s)
                                         train.push_back(sample_drop(cfg, d, s));
                                     for (int s = 0; s < spec.n_heldout; ++s)
                                         held.push_back(sample_drop(cfg, d, spec.n_samples + s));
                                     const AoOptions o = options_for(spec, d);
                                     per[d].instantaneous = solve_dpma(train.front(), cfg, o).mse_trace.back();
                                     TwoTimescaleOptions to;
                                     to.inner = o;
                                     const SolveReport st = two_timescale_optimize(train, cfg, to);
                                     per[d].statistical = mean_mse(st.final_vars, {train.front()}, cfg);
                                     per[d].stat_heldout = mean_mse(st.final_vars, held, cfg);
                                     DecisionVars grid = st.final_vars;
                                     grid.layout = initial_layout(cfg);
                                     per[d].grid_heldout = mean_mse(grid, held, cfg);
                                 }
                                 catch (const std::exception &e)
                                 {
                                     per[d].error = e.what();
                                 }
                             });
                const std::pair<const char *, double PerDrop::*> cols[] = {
                    {"dpma-instantaneous", &PerDrop::instantaneous},
                    {"dpma-statistical", &PerDrop::statistical},
                    {"heldout-statistical-layout", &PerDrop::stat_heldout},
                    {"heldout-initial-layout", &PerDrop::grid_heldout}};
                for (const auto &[label, field] : cols)
                {
                    std::vector<Outcome> out(per.size());
                    for (size_t d = 0; d < per.size(); ++d)
                    {
                        out[d].error = per[d].error;
                        out[d].value = per[d].*field;
                    }
                    res.table.rows.push_back(summary_row(spec, v, label, out));
                }
                res.timing.push_back({{"value", v}, {"seconds", seconds(t0)}});
            }
        }

        void run_demo(const ExperimentSpec &spec, const SystemConfig &cfg, ExperimentResult &res)
        {
            res.table.header = {"experiment", "round", "objective", "consensus_error", "step_norm"};
            const auto t0 = Clock::now();
            const Drop drop = sample_drop(cfg, 0);
            const SolveReport rep = solve_dpma(drop, cfg, options_for(spec, 0));
            const ChannelSet ch = build_channels(drop, rep.final_vars.layout, rep.final_vars.pol, cfg);
            RngStream prob_rng(spec.seed, Stream::Demo, 0);
            DemoProblem demo = DemoProblem::random(cfg.B, cfg.K, spec.demo_dim, spec.demo_dim + 2, prob_rng);
            demo.step = 0.2;
            demo.tol = 1e-8;
            demo.max_rounds = 500;
            RngStream noise_rng(spec.seed, Stream::Demo, 1);
            const DemoResult dr = distributed_demo(demo, rep.final_vars, ch, cfg, noise_rng);
            for (size_t r = 0; r < dr.trajectory.size(); ++r)
            {
                const auto &xs = dr.trajectory[r];
                RVector mean = RVector::Zero(demo.dim);
                double cons = 0.0;
                for (size_t i = 0; i < xs.size(); ++i)
                {
                    mean += xs[i];
                    for (size_t j = i + 1; j < xs.size(); ++j)
                        cons = std::max(cons, (xs[i] - xs[j]).norm());
                }
                mean /= static_cast<double>(xs.size());
                res.table.rows.push_back({spec.name, std::to_string(r), format_double(demo.global_objective(mean)),
                                          format_double(cons),
                                          r == 0 ? std::string("") : format_double(dr.step_norms[r - 1])});
            }
            res.timing.push_back({{"seconds", seconds(t0)},
                                  {"rounds", dr.rounds},
                                  {"met_tolerance", dr.met_tolerance},
                                  {"distance_to_optimum", dr.distance_to_optimum}});
        }
    } // namespace

    ExperimentResult run_experiment(const ExperimentSpec &spec, const SystemConfig &cfg_in)
    {
        spec.validate();
        SystemConfig cfg = cfg_in;
        cfg.rng_seed = spec.seed;
        cfg.validate();
        ExperimentResult res;
        res.table.header = kHeader;
        res.timing = Json::array();
        if (spec.name == "convergence")
            run_convergence(spec, cfg, res);
        else if (spec.name == "multicell_vs_singlecell")
            run_multicell(spec, cfg, res);
        else if (spec.name == "statistical")
            run_statistical(spec, cfg, res);
        else if (spec.name == "distributed_demo")
            run_demo(spec, cfg, res);
        else
            run_sweep(spec, cfg, res);
        if (!spec.output_path.empty())
            emit_csv(res.table, spec.output_path);
        return res;
    }
} // namespace dpma

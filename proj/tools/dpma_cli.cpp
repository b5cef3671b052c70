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

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#ifndef DPMA_GIT_DESCRIBE
#define DPMA_GIT_DESCRIBE "unknown"
#endif

namespace
{
    constexpr int kExitConfig = 2;
    constexpr int kExitSolver = 3;

    dpma::Json load_json(const std::string &path)
    {
        std::ifstream f(path);
        if (!f)
            throw dpma::ConfigError("cannot open config file " + path);
        try
        {
            return dpma::Json::parse(f);
        }
        catch (const nlohmann::json::exception &e)
        {
            throw dpma::ConfigError(std::string("config is not valid JSON: ") + e.what());
        }
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Multi-cell AirComp optimization with dual-polarized movable antennas"};
    app.require_subcommand(1);

    auto *run = app.add_subcommand("run", "Run one experiment and write CSV plus a JSON manifest");
    std::string config_path, experiment, out_dir = ".", scheme = "all";
    std::uint64_t seed = 1;
    bool full_scale = false;
    int n_drops = 0, workers = 1;
    std::vector<double> sweep;
    run->add_option("--config", config_path, "System configuration (JSON)");
    run->add_option("--experiment", experiment, "Experiment name")->required();
    run->add_option("--seed", seed, "Master seed");
    run->add_option("--out", out_dir, "Output directory");
    run->add_flag("--full-scale", full_scale, "Full-size profile (B=3, K=8) and sweeps");
    run->add_option("--scheme", scheme, "dpma, ma, fpa or all")
        ->check(CLI::IsMember({"dpma", "ma", "fpa", "all"}));
    run->add_option("--drops", n_drops, "Drops per sweep point (default 10, 50 at full scale)");
    run->add_option("--workers", workers, "Worker threads");
    run->add_option("--sweep", sweep, "Override the sweep values");

    auto *list = app.add_subcommand("list", "List experiment names");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    if (list->parsed())
    {
        for (const auto &n : dpma::experiment_names())
            std::cout << n << '\n';
        return 0;
    }

    const auto t0 = std::chrono::steady_clock::now();
    dpma::ExperimentSpec spec;
    dpma::SystemConfig cfg;
    dpma::Json config_echo;
    try
    {
        if (!config_path.empty())
        {
            config_echo = load_json(config_path);
            if (full_scale && !config_echo.contains("profile"))
                config_echo["profile"] = "full";
        }
        else
            config_echo = dpma::Json{{"profile", full_scale ? "full" : "desk"}};
        cfg = dpma::config_from_json(config_echo);

        spec.name = experiment;
        spec.seed = seed;
        spec.full_scale = full_scale;
        spec.n_drops = n_drops > 0 ? n_drops : (full_scale ? 50 : 10);
        spec.workers = workers;
        spec.sweep = sweep;
        if (scheme != "all")
            spec.schemes = {scheme};
        std::filesystem::create_directories(out_dir);
        spec.output_path = (std::filesystem::path(out_dir) / (experiment + ".csv")).string();
        spec.validate();
    }
    catch (const dpma::ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
    catch (const std::filesystem::filesystem_error &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }

    dpma::ExperimentResult res;
    try
    {
        res = dpma::run_experiment(spec, cfg);
    }
    catch (const dpma::ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
    catch (const std::exception &e)
    {
        std::cerr << "solver error: " << e.what() << '\n';
        return kExitSolver;
    }

    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    dpma::Json manifest;
    manifest["experiment"] = experiment;
    manifest["seed"] = seed;
    manifest["full_scale"] = full_scale;
    manifest["n_drops"] = spec.n_drops;
    manifest["schemes"] = spec.schemes;
    manifest["config"] = config_echo;
    manifest["resolved_config"] = dpma::config_to_json(cfg);
    manifest["git_describe"] = DPMA_GIT_DESCRIBE;
    manifest["csv"] = spec.output_path;
    manifest["wall_time_s"] = wall;
    manifest["timing"] = res.timing;
    const auto manifest_path = std::filesystem::path(out_dir) / (experiment + ".manifest.json");
    std::ofstream mf(manifest_path);
    mf << manifest.dump(2) << '\n';
    if (!mf)
    {
        std::cerr << "cannot write " << manifest_path << '\n';
        return 1;
    }

    // a row with an error column means at least one drop failed in the solver
    for (const auto &row : res.table.rows)
        if (row.size() == res.table.header.size() && res.table.header.back() == "error" && !row.back().empty())
        {
            std::cerr << "solver error in " << row[3] << " at " << row[2] << ": " << row.back() << '\n';
            return kExitSolver;
        }
    std::cout << "wrote " << spec.output_path << " and " << manifest_path.string() << '\n';
    return 0;
}

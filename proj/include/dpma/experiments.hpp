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

#ifndef DPMA_EXPERIMENTS_HPP
#define DPMA_EXPERIMENTS_HPP

#include "dpma/baselines.hpp"
#include "dpma/csv.hpp"
#include "dpma/serialization.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dpma
{
    struct ExperimentSpec
    {
        std::string name;
        std::vector<double> sweep; // empty selects the default sweep
        int n_drops = 10;
        std::vector<std::string> schemes{"dpma", "ma", "fpa"};
        std::uint64_t seed = 1;
        std::string output_path;
        int workers = 1;
        bool full_scale = false;
        // statistical-CSI runs
        int n_samples = 10;
        int n_heldout = 10;
        // distributed demo
        int demo_dim = 4;
        AoOptions ao;

        void validate() const;
    };

    const std::vector<std::string> &experiment_names();
    std::vector<double> default_sweep(const std::string &name, bool full_scale);
    // Name of the swept quantity written to the CSV ("M", "P_dbm", ...).
    std::string sweep_parameter(const std::string &name);

    // Copy of cfg with the swept quantity set to value.
    SystemConfig apply_sweep(const SystemConfig &cfg, const std::string &name, double value);

    struct ExperimentResult
    {
        CsvTable table;
        Json timing; // wall-clock seconds, kept out of the CSV for byte-stable output
    };

    ExperimentResult run_experiment(const ExperimentSpec &spec, const SystemConfig &cfg);

    // Runs f(0..n-1) on a fixed number of threads; results keep index order.
    template <class F>
    void parallel_for(int n, int workers, F &&f);
} // namespace dpma

#include "dpma/detail/parallel.hpp"

#endif

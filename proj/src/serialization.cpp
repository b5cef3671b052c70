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

#include "dpma/serialization.hpp"

#include <cmath>
#include <set>

namespace dpma
{
    namespace
    {
        template <class T>
        T get(const Json &j, const char *key)
        {
            try
            {
                return j.at(key).get<T>();
            }
            catch (const nlohmann::json::exception &e)
            {
                throw ConfigError(std::string("config key '") + key + "': " + e.what());
            }
        }

        // zero power has no dBm value and is written as null
        Json watt_to_dbm(double w)
        {
            return w > 0.0 ? Json(10.0 * std::log10(w) + 30.0) : Json(nullptr);
        }

        double dbm_or_zero(const Json &j, const char *key)
        {
            return j.at(key).is_null() ? 0.0 : dbm_to_watt(get<double>(j, key));
        }

        Json complex_array(const CMatrix &m)
        {
            Json rows = Json::array();
            for (Eigen::Index r = 0; r < m.rows(); ++r)
            {
                Json row = Json::array();
                for (Eigen::Index c = 0; c < m.cols(); ++c)
                    row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
                rows.push_back(std::move(row));
            }
            return rows;
        }
    } // namespace

    SystemConfig config_from_json(const Json &j)
    {
        if (!j.is_object())
            throw ConfigError("config must be a JSON object");
        static const std::set<std::string> known = {
            "profile", "B", "K", "M", "L", "carrier_hz", "P_dbm", "sigma_n2_dbm", "sigma_I2_dbm",
            "region_half_width_lambda", "K0_db", "d0", "beta", "rician_r", "d_min_bs", "user_annulus", "rng_seed"};
        for (const auto &[k, v] : j.items())
            if (!known.count(k))
                throw ConfigError("unknown config key '" + k + "'");

        SystemConfig c = SystemConfig::desk_profile();
        if (j.contains("profile"))
        {
            const std::string p = get<std::string>(j, "profile");
            if (p == "full")
                c = SystemConfig::full_profile();
            else if (p != "desk")
                throw ConfigError("profile must be 'desk' or 'full'");
        }
        if (j.contains("B"))
            c.B = get<int>(j, "B");
        if (j.contains("K"))
            c.K = get<int>(j, "K");
        if (j.contains("M"))
            c.M = get<int>(j, "M");
        if (j.contains("L"))
            c.L = get<int>(j, "L");
        if (j.contains("carrier_hz"))
        {
            const double hz = get<double>(j, "carrier_hz");
            if (!(hz > 0.0))
                throw ConfigError("carrier_hz must be positive");
            c.set_carrier(hz);
        }
        if (j.contains("region_half_width_lambda"))
            c.region_half_width = get<double>(j, "region_half_width_lambda") * c.lambda_m;
        if (j.contains("P_dbm"))
            c.P = dbm_to_watt(get<double>(j, "P_dbm"));
        if (j.contains("sigma_n2_dbm"))
            c.sigma_n2 = dbm_or_zero(j, "sigma_n2_dbm");
        if (j.contains("sigma_I2_dbm"))
            c.sigma_I2 = dbm_or_zero(j, "sigma_I2_dbm");
        if (j.contains("K0_db"))
            c.K0_db = get<double>(j, "K0_db");
        if (j.contains("d0"))
            c.d0 = get<double>(j, "d0");
        if (j.contains("beta"))
            c.beta = get<double>(j, "beta");
        if (j.contains("rician_r"))
            c.rician_r = get<double>(j, "rician_r");
        if (j.contains("d_min_bs"))
            c.d_min_bs = get<double>(j, "d_min_bs");
        if (j.contains("user_annulus"))
        {
            const auto a = get<std::vector<double>>(j, "user_annulus");
            if (a.size() != 2)
                throw ConfigError("user_annulus must have two entries");
            c.user_annulus = {a[0], a[1]};
        }
        if (j.contains("rng_seed"))
            c.rng_seed = get<std::uint64_t>(j, "rng_seed");
        c.validate();
        return c;
    }

    Json config_to_json(const SystemConfig &c)
    {
        Json j;
        j["B"] = c.B;
        j["K"] = c.K;
        j["M"] = c.M;
        j["L"] = c.L;
        j["carrier_hz"] = c.carrier_hz;
        j["P_dbm"] = watt_to_dbm(c.P);
        j["sigma_n2_dbm"] = watt_to_dbm(c.sigma_n2);
        j["sigma_I2_dbm"] = watt_to_dbm(c.sigma_I2);
        j["region_half_width_lambda"] = c.region_half_width / c.lambda_m;
        j["K0_db"] = c.K0_db;
        j["d0"] = c.d0;
        j["beta"] = c.beta;
        j["rician_r"] = c.rician_r;
        j["d_min_bs"] = c.d_min_bs;
        j["user_annulus"] = {c.user_annulus.first, c.user_annulus.second};
        j["rng_seed"] = c.rng_seed;
        return j;
    }

    Json report_to_json(const SolveReport &rep)
    {
        Json j;
        j["mse_trace"] = rep.mse_trace;
        j["converged"] = rep.converged;
        j["iters"] = rep.iters;
        j["inner_iters"] = rep.inner_iters;
        j["wall_time"] = rep.wall_time;
        if (!rep.outer_trace.empty())
        {
            j["outer_trace"] = rep.outer_trace;
            j["outer_iters"] = rep.outer_iters;
            j["outer_converged"] = rep.outer_converged;
        }
        const DecisionVars &v = rep.final_vars;
        j["W"] = complex_array(v.W);
        j["a"] = complex_array(v.a);
        j["layout"] = std::vector<double>(v.layout.data(), v.layout.data() + v.layout.size());
        Json varpi = Json::array(), m = Json::array();
        for (const auto &x : v.pol.varpi)
            varpi.push_back(complex_array(x));
        for (const auto &x : v.pol.m)
            m.push_back(complex_array(x));
        j["varpi"] = varpi;
        j["m"] = m;
        return j;
    }

    Json channels_to_json(const ChannelSet &ch)
    {
        Json j;
        j["B"] = ch.B;
        j["K"] = ch.K;
        j["M"] = ch.M;
        j["mode"] = ch.mode == PolarizationMode::Dual ? "dual" : "single";
        Json h = Json::array(), H = Json::array();
        for (const auto &v : ch.h)
            h.push_back(complex_array(v));
        for (const auto &v : ch.H)
            H.push_back(complex_array(v));
        j["h"] = h;
        j["H"] = H;
        return j;
    }
} // namespace dpma

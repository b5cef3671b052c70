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

#ifndef DPMA_SERIALIZATION_HPP
#define DPMA_SERIALIZATION_HPP

#include "dpma/orchestrator.hpp"

#include <nlohmann/json.hpp>

namespace dpma
{
    using Json = nlohmann::ordered_json;

    // Config files use engineering units: powers in dBm, region half-width in
    // wavelengths. A "profile" key ("desk" or "full") selects the base values
    // that the remaining keys override. Unknown keys raise ConfigError.
    SystemConfig config_from_json(const Json &j);
    Json config_to_json(const SystemConfig &cfg);

    Json report_to_json(const SolveReport &rep);
    Json channels_to_json(const ChannelSet &ch);
} // namespace dpma

#endif

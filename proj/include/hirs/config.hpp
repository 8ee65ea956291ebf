// SPDX-License-Identifier: Apache-2.0
//
// hirs - hybrid IRS-aided amplify-and-forward relay beamforming toolkit
// Copyright (C) 2026 The hirs authors
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

#pragma once

#include "hirs/bench.hpp"
#include "hirs/channel.hpp"
#include "hirs/optimizer.hpp"
#include "hirs/system.hpp"

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace hirs {

class ConfigError : public std::runtime_error {
public:
    ConfigError(int line, std::string key, const std::string& message);

    int line() const noexcept { return line_; }
    const std::string& key() const noexcept { return key_; }

private:
    int line_;
    std::string key_;
};

struct SystemBlock {
    Index relay_antennas = 2;
    Index irs_elements = 32;
    Index active_elements = 4;
    double source_dbm = 30.0;
    double irs_dbm = 30.0;
    double relay_dbm = 30.0;
    double noise_dbm = -80.0;

    SystemParams to_params() const;
};

struct ExperimentBlock {
    SweepVariable sweep = SweepVariable::source_power;
    std::vector<double> grid; // dBm for power sweeps, counts for K; empty = default for the variable
    std::size_t trials = 100;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::vector<Scheme> schemes{all_schemes[0], all_schemes[1], all_schemes[2], all_schemes[3]};
    std::string output = "rates.csv";
};

/// Flat `section.key = value` configuration. Lines starting with '#' and
/// blank lines are ignored; vectors are whitespace separated.
struct RunConfig {
    Geometry geometry;
    SystemBlock system;
    OptimizeOptions optimizer;
    ExperimentBlock experiment;

    /// Grid of the configured sweep, or the default one for `variable`
    /// when the configured sweep differs or has no grid.
    std::vector<double> grid_for(SweepVariable variable) const;

    bool operator==(const RunConfig& other) const;
};

std::vector<double> default_grid(SweepVariable variable);

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const RunConfig& config);

/// CSV with header
/// sweep_value,scheme,mean_rate_bps_hz,stderr,trials_used,trials_excluded,seed
/// sweep_values are the grid entries as given (dBm or K).
std::string sweep_csv(const SweepResult& result, std::span<const double> grid_labels);

} // namespace hirs

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

#include "hirs/channel.hpp"
#include "hirs/optimizer.hpp"
#include "hirs/system.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hirs {

enum class Scheme { hybrid, passive_irs, random_phase, relay_only };

std::string_view to_string(Scheme scheme);
std::optional<Scheme> parse_scheme(std::string_view name);
inline constexpr Scheme all_schemes[] = {Scheme::hybrid, Scheme::passive_irs, Scheme::random_phase,
                                         Scheme::relay_only};

/// Config seen by a baseline: no active elements and a relay budget of
/// P_R = P_i + P_r. The hybrid scheme sees cfg unchanged.
HybridConfig baseline_config(Scheme scheme, const HybridConfig& cfg);

/// hybrid: full alternating optimization.
/// passive_irs: full alternating optimization on baseline_config.
/// random_phase: u1, u2 uniform random phases from `phase_seed`, A-step only.
/// relay_only: IRS channels zeroed, A-step only.
OptimizeResult run_baseline(Scheme scheme, const ChannelSet& ch, const HybridConfig& cfg,
                            const OptimizeOptions& options, std::uint64_t phase_seed);

struct SchemeStats {
    Scheme scheme = Scheme::hybrid;
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t used = 0;
    std::size_t excluded = 0;
    std::vector<double> per_trial; // NaN for excluded trials
};

struct TrialLog {
    std::size_t trial = 0;
    Scheme scheme = Scheme::hybrid;
    double rate = 0.0;
    OptimizeTrace trace;
    std::string error;
};

struct MonteCarloOptions {
    std::size_t trials = 100;
    std::uint64_t root_seed = 1;
    unsigned threads = 0; // 0: hardware concurrency
    OptimizeOptions optimizer;
    bool keep_traces = false;
};

struct SweepRow {
    double sweep_value = 0.0;
    std::vector<SchemeStats> schemes;
    std::vector<TrialLog> logs; // filled when keep_traces

    const SchemeStats& stats(Scheme scheme) const;
};

/// Per-trial seed: derive_seed(root_seed, trial).
std::uint64_t trial_seed(std::uint64_t root_seed, std::size_t trial);

/// Active mask, channels and sub-seeds of one Monte Carlo trial.
struct TrialInstance {
    HybridConfig cfg;
    ChannelSet ch;
    std::uint64_t init_seed = 0;  // OptimizeOptions::seed
    std::uint64_t phase_seed = 0; // random-phase baseline
};

TrialInstance make_trial(const Geometry& geometry, const SystemParams& params, std::uint64_t root_seed,
                         std::size_t trial);

/// Runs every scheme on the same `trials` channel draws. Trials whose
/// optimization throws or yields a non-finite rate are excluded and counted.
SweepRow monte_carlo(const Geometry& geometry, const SystemParams& params, std::span<const Scheme> schemes,
                     const MonteCarloOptions& options);

enum class SweepVariable { source_power, irs_power, active_elements };

std::string_view to_string(SweepVariable variable);

struct SweepResult {
    SweepVariable variable = SweepVariable::source_power;
    std::vector<SweepRow> rows;
    std::size_t trials = 0;
    std::uint64_t root_seed = 0;
};

/// One monte_carlo row per grid value. Powers are in watts, K-grid values
/// are element counts. Schemes that do not depend on the swept variable
/// (baselines under a K sweep) are evaluated once and shared across rows.
SweepResult sweep(SweepVariable variable, std::span<const double> grid, const Geometry& geometry,
                  const SystemParams& params, std::span<const Scheme> schemes, const MonteCarloOptions& options);

} // namespace hirs

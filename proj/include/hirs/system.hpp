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

#include "hirs/types.hpp"

#include <cstdint>
#include <vector>

namespace hirs {

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

/// Dimensions, active-element mask, budgets and noise power of one hybrid
/// IRS + AF relay link. Powers are in watts; the gamma_* ratios are the
/// normalized (noise-power) units every other module works in.
struct HybridConfig {
    Index relay_antennas = 0;   // M
    Index irs_elements = 0;     // N
    std::vector<bool> active_mask; // diagonal of E_K, length N
    double source_power = 0.0;  // P_s [W]
    double irs_power = 0.0;     // P_i [W]
    double relay_power = 0.0;   // P_r [W]
    double noise_power = 0.0;   // sigma^2 [W]

    Index active_count() const;
    Index passive_count() const { return irs_elements - active_count(); }
    bool is_active(Index i) const { return active_mask[static_cast<std::size_t>(i)]; }

    double gamma_s() const { return source_power / noise_power; }
    double gamma_i() const { return irs_power / noise_power; }
    double gamma_r() const { return relay_power / noise_power; }

    /// 0/1 vector holding the diagonal of E_K.
    rvec active_indicator() const;

    /// Throws std::invalid_argument on any violated invariant.
    void validate() const;
};

/// Everything in a HybridConfig except the concrete active mask, which is
/// drawn per Monte Carlo trial.
struct SystemParams {
    Index relay_antennas = 2;
    Index irs_elements = 32;
    Index active_elements = 4;
    double source_power = dbm_to_watts(30.0);
    double irs_power = dbm_to_watts(30.0);
    double relay_power = dbm_to_watts(30.0);
    double noise_power = dbm_to_watts(-80.0);

    HybridConfig with_mask(std::vector<bool> mask) const;
    void validate() const;
};

/// Uniformly random size-k subset of {0..n-1} as a mask. Masks drawn from
/// the same seed are nested in k: the first k entries of one random
/// permutation are marked active.
std::vector<bool> random_active_mask(Index n, Index k, std::uint64_t seed);

} // namespace hirs

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

#include "hirs/system.hpp"

#include "hirs/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hirs {

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

Index HybridConfig::active_count() const {
    return static_cast<Index>(std::count(active_mask.begin(), active_mask.end(), true));
}

rvec HybridConfig::active_indicator() const {
    rvec e(irs_elements);
    for (Index i = 0; i < irs_elements; ++i) e(i) = is_active(i) ? 1.0 : 0.0;
    return e;
}

void HybridConfig::validate() const {
    if (relay_antennas < 1) throw std::invalid_argument("relay antenna count must be >= 1");
    if (irs_elements < 0) throw std::invalid_argument("IRS element count must be >= 0");
    if (static_cast<Index>(active_mask.size()) != irs_elements)
        throw std::invalid_argument("active mask length must equal the IRS element count");
    for (double p : {source_power, irs_power, relay_power, noise_power}) {
        if (!(p > 0.0) || !std::isfinite(p)) throw std::invalid_argument("powers must be finite and > 0");
    }
}

HybridConfig SystemParams::with_mask(std::vector<bool> mask) const {
    HybridConfig cfg;
    cfg.relay_antennas = relay_antennas;
    cfg.irs_elements = irs_elements;
    cfg.active_mask = std::move(mask);
    cfg.source_power = source_power;
    cfg.irs_power = irs_power;
    cfg.relay_power = relay_power;
    cfg.noise_power = noise_power;
    cfg.validate();
    return cfg;
}

void SystemParams::validate() const {
    if (relay_antennas < 1) throw std::invalid_argument("relay antenna count must be >= 1");
    if (irs_elements < 0) throw std::invalid_argument("IRS element count must be >= 0");
    if (active_elements < 0 || active_elements > irs_elements)
        throw std::invalid_argument("active element count must lie in [0, N]");
    for (double p : {source_power, irs_power, relay_power, noise_power}) {
        if (!(p > 0.0) || !std::isfinite(p)) throw std::invalid_argument("powers must be finite and > 0");
    }
}

std::vector<bool> random_active_mask(Index n, Index k, std::uint64_t seed) {
    if (k < 0 || k > n) throw std::invalid_argument("active element count must lie in [0, N]");
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    Engine engine(seed);
    // Fisher-Yates with an explicit uniform draw so the permutation does not
    // depend on the standard library's shuffle.
    for (Index i = n - 1; i > 0; --i) {
        std::uniform_int_distribution<Index> pick(0, i);
        std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(pick(engine))]);
    }
    std::vector<bool> mask(static_cast<std::size_t>(n), false);
    for (Index j = 0; j < k; ++j) mask[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])] = true;
    return mask;
}

} // namespace hirs

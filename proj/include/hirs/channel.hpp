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

#include "hirs/system.hpp"
#include "hirs/types.hpp"

#include <Eigen/Core>

#include <cstdint>

namespace hirs {

/// Node positions and log-distance path-loss parameters. Defaults are the
/// reference deployment: S at the origin, D 100 m away, the IRS and the
/// relay midway and elevated.
struct Geometry {
    Eigen::Vector3d source{0.0, 0.0, 0.0};
    Eigen::Vector3d destination{0.0, 100.0, 0.0};
    Eigen::Vector3d irs{-10.0, 50.0, 20.0};
    Eigen::Vector3d relay{10.0, 50.0, 10.0};

    double alpha_si = 2.0; // S -> IRS
    double alpha_ir = 2.0; // IRS <-> relay
    double alpha_id = 2.0; // IRS -> D
    double alpha_sr = 3.0; // S -> relay
    double alpha_rd = 3.0; // relay -> D

    double pl0_db = -30.0; // path loss at the reference distance
    double d0 = 1.0;       // reference distance [m]

    void validate() const;
};

/// PL(d) = PL0 - 10 alpha log10(d / d0), in dB. Throws std::domain_error for d <= 0.
double path_loss_db(double distance, double alpha, const Geometry& geometry);

/// Linear power gains of the five links.
struct LinkGains {
    double si = 0.0;
    double sr = 0.0;
    double ir = 0.0;
    double id = 0.0;
    double rd = 0.0;
};

LinkGains link_gains(const Geometry& geometry);

/// One channel realization.
struct ChannelSet {
    cvec h_si; // S -> IRS, N
    cvec h_sr; // S -> relay, M
    cmat H_ir; // IRS -> relay, M x N (relay -> IRS is H_ir^H)
    cvec h_id; // IRS -> D is h_id^H, N
    cvec h_rd; // relay -> D is h_rd^H, M

    Index relay_antennas() const { return h_sr.size(); }
    Index irs_elements() const { return h_si.size(); }

    /// Copy with every IRS-related channel set to zero (relay-only link).
    ChannelSet without_irs() const;

    bool all_finite() const;
};

/// Draws h_si, h_sr, H_ir (column-major), h_id, h_rd in that order; each
/// entry is CN(0, g) with g the linear path gain of its link.
ChannelSet draw_channels(const Geometry& geometry, const HybridConfig& config, std::uint64_t seed);

} // namespace hirs

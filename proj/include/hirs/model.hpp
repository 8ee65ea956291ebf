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
#include "hirs/system.hpp"
#include "hirs/types.hpp"

#include <string>

namespace hirs {

enum class ReflectionMode { strict, relaxed };

/// Per-slot reflection coefficients: u1 = diag(Theta1), u2 = diag(Theta2).
/// Passive entries have unit modulus in strict mode and modulus <= 1 in
/// relaxed mode; active entries are limited only by the IRS power budget.
struct ReflectionState {
    cvec u1;
    cvec u2;
    ReflectionMode mode = ReflectionMode::strict;
};

/// Relay beamforming matrix A (M x M).
struct Beamformer {
    cmat matrix;
};

/// Terms of the end-to-end SNR, all in units of sigma^2.
struct SnrBreakdown {
    double signal_power = 0.0;
    double noise_slot1 = 0.0; // active-element noise of slot 1, forwarded by the relay
    double noise_relay = 0.0; // relay receiver noise
    double noise_slot2 = 0.0; // active-element noise of slot 2
    double snr = 0.0;

    double denominator() const { return noise_slot1 + noise_relay + noise_slot2 + 1.0; }
};

/// f = h_sr + H_ir Theta1 h_si, the effective S -> relay channel of slot 1.
cvec effective_uplink(const ChannelSet& ch, const cvec& u1);

/// g with g^H = h_rd^H + h_id^H Theta2 H_ir^H, the effective relay -> D channel of slot 2.
cvec effective_downlink(const ChannelSet& ch, const cvec& u2);

SnrBreakdown snr_direct(const ChannelSet& ch, const Beamformer& relay, const ReflectionState& refl,
                        const HybridConfig& cfg);

/// 0.5 log2(1 + snr) in bits/s/Hz. Throws std::domain_error for snr < 0.
double rate(double snr);

/// gamma_s ||E_K Theta1 h_si||^2 + ||E_K Theta1||_F^2.
double irs_power_slot1(const ReflectionState& refl, const ChannelSet& ch, const HybridConfig& cfg);

/// gamma_s ||A f||^2 + ||A H_ir E_K Theta1||_F^2 + ||A||_F^2.
double relay_power(const Beamformer& relay, const ReflectionState& refl, const ChannelSet& ch,
                   const HybridConfig& cfg);

/// gamma_s ||E_K Theta2 H_ir^H A f||^2 + ||E_K Theta2 H_ir^H A H_ir E_K Theta1||_F^2
///   + ||E_K Theta2 H_ir^H A||_F^2 + ||E_K Theta2||_F^2.
double irs_power_slot2(const Beamformer& relay, const ReflectionState& refl, const ChannelSet& ch,
                       const HybridConfig& cfg);

/// Margins are budget minus consumed power, in units of sigma^2. A state is
/// feasible at tolerance tol when every margin is >= -tol * budget and the
/// passive modulus violation is <= tol.
struct FeasibilityReport {
    double passive_violation = 0.0; // strict: max | |u|-1 |, relaxed: max(|u|-1, 0)
    double irs_slot1_margin = 0.0;
    double relay_margin = 0.0;
    double irs_slot2_margin = 0.0;
    double irs_budget = 0.0;
    double relay_budget = 0.0;

    bool ok(double tol) const;
    /// Name of the first violated constraint at tol, or empty.
    std::string violated(double tol) const;
};

FeasibilityReport check_feasible(const Beamformer& relay, const ReflectionState& refl, const ChannelSet& ch,
                                 const HybridConfig& cfg);

void check_dims(const ChannelSet& ch, const HybridConfig& cfg);
void check_dims(const ChannelSet& ch, const Beamformer& relay, const ReflectionState& refl,
                const HybridConfig& cfg);

} // namespace hirs

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

#include "hirs/model.hpp"

#include <algorithm>
#include <cmath>

namespace hirs {

void check_dims(const ChannelSet& ch, const HybridConfig& cfg) {
    const Index m = cfg.relay_antennas;
    const Index n = cfg.irs_elements;
    require_dims(ch.h_si.size() == n && ch.h_id.size() == n, "IRS channels vs N");
    require_dims(ch.h_sr.size() == m && ch.h_rd.size() == m, "relay channels vs M");
    require_dims(ch.H_ir.rows() == m && ch.H_ir.cols() == n, "H_ir vs M x N");
    require_dims(static_cast<Index>(cfg.active_mask.size()) == n, "active mask vs N");
}

void check_dims(const ChannelSet& ch, const Beamformer& relay, const ReflectionState& refl,
                const HybridConfig& cfg) {
    check_dims(ch, cfg);
    const Index m = cfg.relay_antennas;
    require_dims(relay.matrix.rows() == m && relay.matrix.cols() == m, "A vs M x M");
    require_dims(refl.u1.size() == cfg.irs_elements && refl.u2.size() == cfg.irs_elements, "u1/u2 vs N");
}

cvec effective_uplink(const ChannelSet& ch, const cvec& u1) {
    return ch.h_sr + ch.H_ir * u1.cwiseProduct(ch.h_si);
}

cvec effective_downlink(const ChannelSet& ch, const cvec& u2) {
    // (h_id^H Theta2 H_ir^H)^H = H_ir conj(Theta2) h_id
    return ch.h_rd + ch.H_ir * u2.conjugate().cwiseProduct(ch.h_id);
}

namespace {

// E_K Theta as a vector: entries of u at active indices, zero elsewhere.
cvec masked(const cvec& u, const HybridConfig& cfg) {
    return u.cwiseProduct(cfg.active_indicator().cast<cplx>());
}

} // namespace

SnrBreakdown snr_direct(const ChannelSet& ch, const Beamformer& relay, const ReflectionState& refl,
                        const HybridConfig& cfg) {
    check_dims(ch, relay, refl, cfg);
    const cmat& a = relay.matrix;
    const cvec f = effective_uplink(ch, refl.u1);
    const cvec g = effective_downlink(ch, refl.u2);
    const Eigen::RowVectorXcd ga = g.adjoint() * a;
    const cvec ek_u1 = masked(refl.u1, cfg);
    const cvec ek_u2 = masked(refl.u2, cfg);

    SnrBreakdown out;
    out.signal_power = cfg.gamma_s() * std::norm((ga * f).value());
    out.noise_slot1 = (ga * ch.H_ir * ek_u1.asDiagonal()).squaredNorm();
    out.noise_relay = ga.squaredNorm();
    out.noise_slot2 = (ch.h_id.adjoint() * ek_u2.asDiagonal()).squaredNorm();
    out.snr = out.signal_power / out.denominator();
    return out;
}

double rate(double snr) {
    if (!(snr >= 0.0)) throw std::domain_error("rate: snr must be >= 0");
    return 0.5 * std::log2(1.0 + snr);
}

double irs_power_slot1(const ReflectionState& refl, const ChannelSet& ch, const HybridConfig& cfg) {
    check_dims(ch, cfg);
    const cvec ek_u1 = masked(refl.u1, cfg);
    return cfg.gamma_s() * ek_u1.cwiseProduct(ch.h_si).squaredNorm() + ek_u1.squaredNorm();
}

double relay_power(const Beamformer& relay, const ReflectionState& refl, const ChannelSet& ch,
                   const HybridConfig& cfg) {
    check_dims(ch, relay, refl, cfg);
    const cmat& a = relay.matrix;
    const cvec f = effective_uplink(ch, refl.u1);
    const cvec ek_u1 = masked(refl.u1, cfg);
    return cfg.gamma_s() * (a * f).squaredNorm() + (a * ch.H_ir * ek_u1.asDiagonal()).squaredNorm() +
           a.squaredNorm();
}

double irs_power_slot2(const Beamformer& relay, const ReflectionState& refl, const ChannelSet& ch,
                       const HybridConfig& cfg) {
    check_dims(ch, relay, refl, cfg);
    const cmat& a = relay.matrix;
    const cvec f = effective_uplink(ch, refl.u1);
    const cvec ek_u1 = masked(refl.u1, cfg);
    const cvec ek_u2 = masked(refl.u2, cfg);
    // E_K Theta2 H_ir^H A, an N x M matrix
    const cmat forward = ek_u2.asDiagonal() * ch.H_ir.adjoint() * a;
    return cfg.gamma_s() * (forward * f).squaredNorm() +
           (forward * ch.H_ir * ek_u1.asDiagonal()).squaredNorm() + forward.squaredNorm() + ek_u2.squaredNorm();
}

bool FeasibilityReport::ok(double tol) const { return violated(tol).empty(); }

std::string FeasibilityReport::violated(double tol) const {
    if (passive_violation > tol) return "passive modulus";
    if (irs_slot1_margin < -tol * std::max(1.0, irs_budget)) return "IRS slot-1 power";
    if (relay_margin < -tol * std::max(1.0, relay_budget)) return "relay power";
    if (irs_slot2_margin < -tol * std::max(1.0, irs_budget)) return "IRS slot-2 power";
    return {};
}

FeasibilityReport check_feasible(const Beamformer& relay, const ReflectionState& refl, const ChannelSet& ch,
                                 const HybridConfig& cfg) {
    check_dims(ch, relay, refl, cfg);
    FeasibilityReport r;
    for (Index i = 0; i < cfg.irs_elements; ++i) {
        if (cfg.is_active(i)) continue;
        for (double mod : {std::abs(refl.u1(i)), std::abs(refl.u2(i))}) {
            const double v = refl.mode == ReflectionMode::strict ? std::abs(mod - 1.0) : std::max(mod - 1.0, 0.0);
            r.passive_violation = std::max(r.passive_violation, v);
        }
    }
    r.irs_budget = cfg.gamma_i();
    r.relay_budget = cfg.gamma_r();
    r.irs_slot1_margin = r.irs_budget - irs_power_slot1(refl, ch, cfg);
    r.relay_margin = r.relay_budget - relay_power(relay, refl, ch, cfg);
    r.irs_slot2_margin = r.irs_budget - irs_power_slot2(relay, refl, ch, cfg);
    return r;
}

} // namespace hirs

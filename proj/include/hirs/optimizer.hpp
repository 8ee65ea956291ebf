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

#include "hirs/forms.hpp"
#include "hirs/model.hpp"
#include "hirs/qcqp.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace hirs {

struct AoState {
    Beamformer relay;
    ReflectionState refl;
    double snr = 0.0;
    double rate = 0.0;
    int iteration = 0;
};

/// Inner Dinkelbach loop of one block update.
struct StepTrace {
    std::string block;                       // "A", "u1" or "u2"
    std::vector<double> dinkelbach_values;   // mu, omega or lambda per inner iteration
    std::vector<double> inner_objectives;    // optimal value of each parametric subproblem
    double max_minorant_excess = 0.0;        // max (linearized - true numerator) / scale
    bool converged = false;
    std::string failure;
};

struct InnerOptions {
    double inner_tol = 1e-5;
    int max_inner = 30;
    QcqpOptions qcqp;
};

struct StepResult {
    AoState state;
    StepTrace trace;
};

/// Result of maximizing a FractionalProblem from a feasible start.
struct RatioAscent {
    cvec x;
    StepTrace trace;
};

/// Dinkelbach iterations with the numerator re-linearized at every iterate:
/// with x~ the current point and mu its ratio, solve
///   max  lin_{x~}(num)(x) - mu den(x)  s.t. constraints
/// and move to the solution when its true ratio does not decrease.
RatioAscent dinkelbach_sca(const FractionalProblem& problem, const cvec& start, const InnerOptions& options);

AoState evaluate(const Beamformer& relay, const ReflectionState& refl, const ChannelSet& ch,
                 const HybridConfig& cfg);

/// Unit-modulus uniform-phase u1, u2 and A = c h_rd h_sr^H at 90% of the
/// binding relay / slot-2 IRS budget. Active coefficients are scaled down if
/// the IRS budgets cannot absorb unit modulus.
AoState init_state(const ChannelSet& ch, const HybridConfig& cfg, std::uint64_t seed);

StepResult a_step(const AoState& state, const ChannelSet& ch, const HybridConfig& cfg, const InnerOptions& options);
StepResult u1_step(const AoState& state, const ChannelSet& ch, const HybridConfig& cfg, const InnerOptions& options);
StepResult u2_step(const AoState& state, const ChannelSet& ch, const HybridConfig& cfg, const InnerOptions& options);

/// Restores |u(i)| = 1 on passive entries (zero -> 1) and, if that breaks
/// the relay or slot-2 IRS budget, scales A down until both hold.
AoState project_passive(const AoState& state, const ChannelSet& ch, const HybridConfig& cfg);

struct OptimizeOptions {
    double outer_tol = 1e-4;
    int max_outer = 50;
    double inner_tol = 1e-5;
    int max_inner = 30;
    std::uint64_t seed = 0;
    // A is shrunk by this factor and one u1_step runs before the first cycle;
    // 0 disables the warm-up.
    double warmup_scale = 0.01;
    QcqpOptions qcqp;
    // Called with every state the run records: the start, each block update
    // and the projected result.
    std::function<void(const AoState&)> observer;

    InnerOptions inner() const { return {inner_tol, max_inner, qcqp}; }
};

struct OptimizeTrace {
    std::vector<double> step_rates; // relaxed-mode rate after init (and shrink) and after every block update
    std::vector<StepTrace> steps;
    double relaxed_rate = 0.0;
    double projected_rate = 0.0;
    int outer_iterations = 0;
    bool converged = false;
    std::string diagnostic;
};

struct OptimizeResult {
    AoState state; // strict mode
    OptimizeTrace trace;
};

/// Optional u1 warm-up, then alternates a_step, u1_step, u2_step until the relative rate gain of a
/// full cycle is <= outer_tol, then projects passive entries.
OptimizeResult optimize(const ChannelSet& ch, const HybridConfig& cfg, const OptimizeOptions& options);

/// Only the A-step loop, from an explicit reflection state (baselines).
OptimizeResult optimize_relay_only(const ChannelSet& ch, const HybridConfig& cfg, const ReflectionState& refl,
                                   const OptimizeOptions& options);

} // namespace hirs

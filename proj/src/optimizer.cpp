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

#include "hirs/optimizer.hpp"

#include "hirs/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hirs {

namespace {

constexpr double tiny = std::numeric_limits<double>::min();

double relative_gain(double next, double prev) { return (next - prev) / std::max(std::abs(prev), tiny); }

} // namespace

RatioAscent dinkelbach_sca(const FractionalProblem& problem, const cvec& start, const InnerOptions& options) {
    RatioAscent out{start, {}};
    StepTrace& trace = out.trace;
    double mu = problem.ratio(start);
    trace.dinkelbach_values.push_back(mu);

    for (int it = 0; it < options.max_inner; ++it) {
        const QuadForm minorant = linearize_at(problem.numerator, out.x);
        ComplexQcqp sub{minorant + problem.denominator.scaled(-mu), problem.constraints};
        const QcqpSolution sol = solve(sub, out.x, options.qcqp);
        if (sol.status == QcqpStatus::infeasible) {
            trace.failure = "subproblem infeasible";
            break;
        }
        trace.inner_objectives.push_back(sol.objective_value);

        const double exact = problem.numerator(sol.x);
        const double bound = minorant(sol.x);
        const double magnitude = std::max({std::abs(exact), std::abs(bound), tiny});
        trace.max_minorant_excess = std::max(trace.max_minorant_excess, (bound - exact) / magnitude);

        const double next = problem.ratio(sol.x);
        // The parametric optimum is >= 0 at the current point, so the ratio
        // cannot drop except by solver inaccuracy; stop there.
        if (!(next >= mu)) {
            trace.converged = true;
            break;
        }
        const double gain = relative_gain(next, mu);
        out.x = sol.x;
        mu = next;
        trace.dinkelbach_values.push_back(mu);
        if (gain <= options.inner_tol) {
            trace.converged = true;
            break;
        }
    }
    return out;
}

AoState evaluate(const Beamformer& relay, const ReflectionState& refl, const ChannelSet& ch,
                 const HybridConfig& cfg) {
    AoState s{relay, refl, 0.0, 0.0, 0};
    s.snr = snr_direct(ch, relay, refl, cfg).snr;
    s.rate = rate(std::max(s.snr, 0.0));
    return s;
}

namespace {

// Rank-one matched filter scaled to 90% of the tighter of the relay and
// slot-2 IRS budgets.
Beamformer initial_relay(const ChannelSet& ch, const HybridConfig& cfg, const ReflectionState& refl) {
    const Index m = cfg.relay_antennas;
    Beamformer relay{ch.h_rd * ch.h_sr.adjoint()};
    if (!(relay.matrix.norm() > 0.0)) relay.matrix = cmat::Identity(m, m);
    const double relay_unit = relay_power(relay, refl, ch, cfg);
    const double fixed = irs_power_slot2(Beamformer{cmat::Zero(m, m)}, refl, ch, cfg);
    const double irs_unit = irs_power_slot2(relay, refl, ch, cfg) - fixed;
    double c2 = 0.9 * cfg.gamma_r() / relay_unit;
    if (irs_unit > 0.0) c2 = std::min(c2, (0.9 * cfg.gamma_i() - fixed) / irs_unit);
    if (!(c2 > 0.0)) throw InfeasibleError("IRS slot-2 power", "no relay gain fits the slot-2 IRS budget");
    relay.matrix *= std::sqrt(c2);
    return relay;
}

void scale_active(cvec& u, const HybridConfig& cfg, double factor) {
    for (Index i = 0; i < cfg.irs_elements; ++i)
        if (cfg.is_active(i)) u(i) *= factor;
}

StepResult finish_step(const AoState& entry, Beamformer relay, ReflectionState refl, const ChannelSet& ch,
                       const HybridConfig& cfg, StepTrace trace) {
    StepResult r{evaluate(relay, refl, ch, cfg), std::move(trace)};
    r.state.iteration = entry.iteration;
    return r;
}

} // namespace

AoState init_state(const ChannelSet& ch, const HybridConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    check_dims(ch, cfg);
    Engine engine(seed);
    ReflectionState refl;
    refl.u1 = random_unit_phases(cfg.irs_elements, engine);
    refl.u2 = random_unit_phases(cfg.irs_elements, engine);
    refl.mode = ReflectionMode::relaxed;

    const double slot1 = irs_power_slot1(refl, ch, cfg);
    if (slot1 > 0.9 * cfg.gamma_i()) scale_active(refl.u1, cfg, std::sqrt(0.9 * cfg.gamma_i() / slot1));
    const double own_noise = static_cast<double>(cfg.active_count());
    if (own_noise > 0.45 * cfg.gamma_i()) scale_active(refl.u2, cfg, std::sqrt(0.45 * cfg.gamma_i() / own_noise));

    return evaluate(initial_relay(ch, cfg, refl), refl, ch, cfg);
}

StepResult a_step(const AoState& state, const ChannelSet& ch, const HybridConfig& cfg, const InnerOptions& options) {
    const AStepForms forms = build_a_step(ch, state.refl, cfg);
    RatioAscent r = dinkelbach_sca(forms.problem, vec(state.relay.matrix), options);
    r.trace.block = "A";
    const Index m = cfg.relay_antennas;
    return finish_step(state, Beamformer{unvec(r.x, m, m)}, state.refl, ch, cfg, std::move(r.trace));
}

StepResult u1_step(const AoState& state, const ChannelSet& ch, const HybridConfig& cfg, const InnerOptions& options) {
    const U1StepForms forms = build_u1_step(ch, state.relay, state.refl, cfg);
    RatioAscent r = dinkelbach_sca(forms.problem, state.refl.u1, options);
    r.trace.block = "u1";
    ReflectionState refl = state.refl;
    refl.u1 = r.x;
    refl.mode = ReflectionMode::relaxed;
    return finish_step(state, state.relay, std::move(refl), ch, cfg, std::move(r.trace));
}

StepResult u2_step(const AoState& state, const ChannelSet& ch, const HybridConfig& cfg, const InnerOptions& options) {
    const U2StepForms forms = build_u2_step(ch, state.relay, state.refl, cfg);
    RatioAscent r = dinkelbach_sca(forms.problem, u2_to_variable(state.refl.u2), options);
    r.trace.block = "u2";
    ReflectionState refl = state.refl;
    refl.u2 = variable_to_u2(r.x);
    refl.mode = ReflectionMode::relaxed;
    return finish_step(state, state.relay, std::move(refl), ch, cfg, std::move(r.trace));
}

AoState project_passive(const AoState& state, const ChannelSet& ch, const HybridConfig& cfg) {
    ReflectionState refl = state.refl;
    for (cvec* u : {&refl.u1, &refl.u2}) {
        for (Index i = 0; i < cfg.irs_elements; ++i) {
            if (cfg.is_active(i)) continue;
            const double mod = std::abs((*u)(i));
            (*u)(i) = mod > 0.0 ? (*u)(i) / mod : cplx{1.0, 0.0};
        }
    }
    refl.mode = ReflectionMode::strict;

    // Relay power and the A-dependent part of the slot-2 IRS power are
    // homogeneous quadratics in A, so the rescue scale has a closed form.
    Beamformer relay = state.relay;
    const Index m = cfg.relay_antennas;
    const double relay_load = relay_power(relay, refl, ch, cfg);
    const double fixed = irs_power_slot2(Beamformer{cmat::Zero(m, m)}, refl, ch, cfg);
    const double irs_load = irs_power_slot2(relay, refl, ch, cfg) - fixed;
    double c2 = 1.0;
    if (relay_load > cfg.gamma_r()) c2 = std::min(c2, cfg.gamma_r() / relay_load);
    if (irs_load + fixed > cfg.gamma_i() && irs_load > 0.0) c2 = std::min(c2, (cfg.gamma_i() - fixed) / irs_load);
    if (c2 < 1.0) relay.matrix *= std::sqrt(std::max(c2, 0.0) * (1.0 - 1e-12));

    AoState out = evaluate(relay, refl, ch, cfg);
    out.iteration = state.iteration;
    return out;
}

namespace {

bool degenerate(const AoState& s) { return !std::isfinite(s.snr) || !(s.snr > 0.0); }

OptimizeResult degenerate_result(AoState state, const ChannelSet& ch, const HybridConfig& cfg,
                                 OptimizeTrace trace) {
    trace.diagnostic = "degenerate channel: zero end-to-end gain";
    state.relay.matrix.setZero();
    AoState out = project_passive(state, ch, cfg);
    out.snr = 0.0;
    out.rate = 0.0;
    trace.relaxed_rate = 0.0;
    trace.projected_rate = 0.0;
    trace.converged = true;
    return {out, std::move(trace)};
}

} // namespace

OptimizeResult optimize(const ChannelSet& ch, const HybridConfig& cfg, const OptimizeOptions& options) {
    cfg.validate();
    check_dims(ch, cfg);
    OptimizeTrace trace;
    if (!ch.all_finite()) throw std::invalid_argument("optimize: channel contains non-finite entries");

    AoState state = init_state(ch, cfg, options.seed);
    if (options.warmup_scale > 0.0 && options.warmup_scale < 1.0)
        state = evaluate(Beamformer{state.relay.matrix * options.warmup_scale}, state.refl, ch, cfg);
    trace.step_rates.push_back(state.rate);
    const auto observe = [&](const AoState& s) {
        if (options.observer) options.observer(s);
    };
    observe(state);
    if (degenerate(state)) return degenerate_result(state, ch, cfg, std::move(trace));

    const InnerOptions inner = options.inner();
    if (options.warmup_scale > 0.0) {
        // a saturated relay budget pins slot-1 amplification, so u1 moves first
        StepResult r = u1_step(state, ch, cfg, inner);
        state = std::move(r.state);
        trace.step_rates.push_back(state.rate);
        trace.steps.push_back(std::move(r.trace));
        observe(state);
    }
    using Step = StepResult (*)(const AoState&, const ChannelSet&, const HybridConfig&, const InnerOptions&);
    constexpr Step cycle[] = {&a_step, &u1_step, &u2_step};

    double previous = state.rate;
    for (int outer = 0; outer < options.max_outer; ++outer) {
        for (Step step : cycle) {
            StepResult r = step(state, ch, cfg, inner);
            state = std::move(r.state);
            trace.step_rates.push_back(state.rate);
            trace.steps.push_back(std::move(r.trace));
            observe(state);
        }
        state.iteration = outer + 1;
        trace.outer_iterations = outer + 1;
        const double gain = relative_gain(state.rate, previous);
        previous = state.rate;
        if (gain <= options.outer_tol) {
            trace.converged = true;
            break;
        }
    }

    trace.relaxed_rate = state.rate;
    AoState projected = project_passive(state, ch, cfg);
    trace.projected_rate = projected.rate;
    observe(projected);
    return {std::move(projected), std::move(trace)};
}

OptimizeResult optimize_relay_only(const ChannelSet& ch, const HybridConfig& cfg, const ReflectionState& refl,
                                   const OptimizeOptions& options) {
    cfg.validate();
    check_dims(ch, cfg);
    OptimizeTrace trace;
    AoState state = evaluate(initial_relay(ch, cfg, refl), refl, ch, cfg);
    trace.step_rates.push_back(state.rate);
    if (degenerate(state)) return degenerate_result(state, ch, cfg, std::move(trace));

    const InnerOptions inner = options.inner();
    double previous = state.rate;
    for (int outer = 0; outer < options.max_outer; ++outer) {
        StepResult r = a_step(state, ch, cfg, inner);
        state = std::move(r.state);
        state.iteration = outer + 1;
        trace.step_rates.push_back(state.rate);
        trace.steps.push_back(std::move(r.trace));
        trace.outer_iterations = outer + 1;
        const double gain = relative_gain(state.rate, previous);
        previous = state.rate;
        if (gain <= options.outer_tol) {
            trace.converged = true;
            break;
        }
    }
    trace.relaxed_rate = state.rate;
    trace.projected_rate = state.rate;
    state.refl.mode = refl.mode;
    return {std::move(state), std::move(trace)};
}

} // namespace hirs

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

#include "hirs/validate.hpp"

#include "hirs/channel.hpp"
#include "hirs/forms.hpp"
#include "hirs/model.hpp"
#include "hirs/optimizer.hpp"
#include "hirs/qcqp.hpp"
#include "hirs/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace hirs {

namespace {

struct Instance {
    ChannelSet ch;
    HybridConfig cfg;
    Beamformer relay;
    ReflectionState refl;
};

cvec gaussian(Index n, Engine& engine) {
    ComplexGaussian draw;
    cvec v(n);
    for (auto& z : v) z = draw(engine);
    return v;
}

Instance random_instance(Index m, Index n, Index k, std::uint64_t seed) {
    Engine engine(seed);
    Instance s;
    s.cfg.relay_antennas = m;
    s.cfg.irs_elements = n;
    s.cfg.active_mask = random_active_mask(n, k, derive_seed(seed, 7));
    s.cfg.source_power = 3.0;
    s.cfg.irs_power = 5.0;
    s.cfg.relay_power = 7.0;
    s.cfg.noise_power = 0.5;
    s.ch.h_si = gaussian(n, engine);
    s.ch.h_sr = gaussian(m, engine);
    s.ch.H_ir = unvec(gaussian(m * n, engine), m, n);
    s.ch.h_id = gaussian(n, engine);
    s.ch.h_rd = gaussian(m, engine);
    s.relay.matrix = unvec(gaussian(m * m, engine), m, m);
    s.refl.u1 = gaussian(n, engine);
    s.refl.u2 = gaussian(n, engine);
    s.refl.mode = ReflectionMode::relaxed;
    return s;
}

bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)}); }

int forms_suite(std::uint64_t seed) {
    int failures = 0;
    for (int t = 0; t < 30; ++t) {
        const Index n = t % 2 ? 8 : 3;
        const Index k = t % 3;
        const Instance s = random_instance(2, n, k, derive_seed(seed, static_cast<std::uint64_t>(t)));
        const SnrBreakdown direct = snr_direct(s.ch, s.relay, s.refl, s.cfg);
        const cvec a = vec(s.relay.matrix);

        const AStepForms af = build_a_step(s.ch, s.refl, s.cfg);
        failures += !close(af.problem.ratio(a), direct.snr, 1e-10);
        failures += !close(af.problem.constraints[0].form(a), relay_power(s.relay, s.refl, s.ch, s.cfg), 1e-10);
        failures += !close(af.problem.constraints[1].form(a), irs_power_slot2(s.relay, s.refl, s.ch, s.cfg), 1e-10);

        const U1StepForms f1 = build_u1_step(s.ch, s.relay, s.refl, s.cfg);
        failures += !close(f1.problem.ratio(s.refl.u1), direct.snr, 1e-10);

        const U2StepForms f2 = build_u2_step(s.ch, s.relay, s.refl, s.cfg);
        failures += !close(f2.problem.ratio(u2_to_variable(s.refl.u2)), direct.snr, 1e-10);
    }
    return failures;
}

int qcqp_suite() {
    int failures = 0;
    // maximize -|x|^2 + 2 Re{q^H x} with a loose bound: x = q.
    {
        cvec q(2);
        q << cplx{1.0, -0.5}, cplx{0.25, 2.0};
        ComplexQcqp p{QuadForm(-cmat::Identity(2, 2), q, 0.0),
                      {{QuadForm::diagonal(rvec::Ones(2)), 100.0, "ball"}}};
        const QcqpSolution s = solve(p, cvec::Zero(2));
        failures += s.status != QcqpStatus::optimal || (s.x - q).norm() > 1e-6;
    }
    // maximize 2 Re{x} s.t. |x|^2 <= 4: x = 2.
    {
        ComplexQcqp p{QuadForm(cmat::Zero(1, 1), cvec::Ones(1), 0.0),
                      {{QuadForm::diagonal(rvec::Ones(1)), 4.0, "disk"}}};
        const QcqpSolution s = solve(p, cvec::Zero(1));
        failures += s.status != QcqpStatus::optimal || std::abs(s.x(0) - cplx{2.0, 0.0}) > 1e-6;
        const double exact[] = {0.5};
        failures += kkt_residual(p, cvec::Constant(1, cplx{2.0, 0.0}), exact) > 1e-10;
    }
    return failures;
}

int ascent_suite(std::uint64_t seed) {
    int failures = 0;
    Geometry geometry;
    SystemParams params;
    params.irs_elements = 8;
    params.active_elements = 2;
    OptimizeOptions options;
    options.max_outer = 5;
    for (std::uint64_t t = 0; t < 3; ++t) {
        const std::uint64_t s = derive_seed(seed, 100 + t);
        const HybridConfig cfg = params.with_mask(random_active_mask(8, 2, derive_seed(s, stream::active_mask)));
        const ChannelSet ch = draw_channels(geometry, cfg, derive_seed(s, stream::channels));
        options.seed = derive_seed(s, stream::initial_state);

        AoState state = init_state(ch, cfg, options.seed);
        using Step = StepResult (*)(const AoState&, const ChannelSet&, const HybridConfig&, const InnerOptions&);
        for (int outer = 0; outer < 2; ++outer) {
            for (Step step : {Step{&a_step}, Step{&u1_step}, Step{&u2_step}}) {
                StepResult r = step(state, ch, cfg, options.inner());
                failures += r.state.rate < state.rate - 1e-8;
                const auto& mu = r.trace.dinkelbach_values;
                for (std::size_t i = 1; i < mu.size(); ++i) failures += mu[i] < mu[i - 1] - 1e-9;
                failures += r.trace.max_minorant_excess > 1e-9;
                failures += !check_feasible(r.state.relay, r.state.refl, ch, cfg).ok(1e-6);
                state = std::move(r.state);
            }
        }
        const OptimizeResult full = optimize(ch, cfg, options);
        failures += !check_feasible(full.state.relay, full.state.refl, ch, cfg).ok(1e-6);
    }
    return failures;
}

} // namespace

int run_validation(std::ostream& out, std::uint64_t seed) {
    const std::pair<const char*, std::function<int()>> suites[] = {
        {"quadratic-form equivalence", [seed] { return forms_suite(seed); }},
        {"qcqp optimality conditions", [] { return qcqp_suite(); }},
        {"alternating ascent and feasibility", [seed] { return ascent_suite(seed); }},
    };
    int failed = 0;
    for (const auto& [name, run] : suites) {
        int f = 0;
        try {
            f = run();
        } catch (const std::exception& e) {
            out << "  error: " << e.what() << "\n";
            f = 1;
        }
        out << (f == 0 ? "PASS " : "FAIL ") << name;
        if (f) out << " (" << f << " violations)";
        out << "\n";
        failed += f != 0;
    }
    return failed;
}

} // namespace hirs

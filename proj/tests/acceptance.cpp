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

#include "support.hpp"

#include "hirs/bench.hpp"
#include "hirs/forms.hpp"
#include "hirs/optimizer.hpp"
#include "hirs/qcqp.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <unistd.h>

using namespace hirs;
using namespace hirs::test;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void report(int id, bool pass, const std::string& what, const std::string& detail, double secs) {
    if (!pass) ++failures;
    std::printf("%s %d %s: %s (%.1f s)\n", pass ? "PASS" : "FAIL", id, what.c_str(), detail.c_str(), secs);
    std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

void forms_equivalence() {
    const auto t0 = Clock::now();
    double worst = 0.0;
    auto track = [&](double a, double b) { worst = std::max(worst, rel_err(a, b)); };
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const Index n = seed % 2 ? 8 : 3;
        const Instance s = random_instance(2, n, static_cast<Index>(seed % 3), 5000 + seed);
        Engine e(seed);

        const AStepForms fa = build_a_step(s.ch, s.refl, s.cfg);
        for (int t = 0; t < 3; ++t) {
            const Beamformer relay{t == 0 ? s.relay.matrix : gaussian(2, 2, e)};
            const cvec a = vec(relay.matrix);
            const SnrBreakdown d = snr_direct(s.ch, relay, s.refl, s.cfg);
            track(fa.problem.ratio(a), d.snr);
            track(s.cfg.gamma_s() * (a.adjoint() * fa.b1 * a).value().real(), d.signal_power);
            track((a.adjoint() * (fa.b2 + fa.b3) * a).value().real() + fa.noise_constant, d.denominator());
            track(fa.problem.constraints[0].form(a), relay_power(relay, s.refl, s.ch, s.cfg));
            track(fa.problem.constraints[1].form(a), irs_power_slot2(relay, s.refl, s.ch, s.cfg));
        }

        const U1StepForms f1 = build_u1_step(s.ch, s.relay, s.refl, s.cfg);
        const std::size_t passive = static_cast<std::size_t>(s.cfg.passive_count());
        for (int t = 0; t < 3; ++t) {
            ReflectionState r = s.refl;
            r.u1 = gaussian(n, e);
            const SnrBreakdown d = snr_direct(s.ch, s.relay, r, s.cfg);
            track(f1.problem.ratio(r.u1), d.snr);
            track(s.cfg.gamma_s() * std::norm(f1.a + (f1.h1.adjoint() * r.u1).value()), d.signal_power);
            const auto& c = f1.problem.constraints;
            track(c[passive].form(r.u1), irs_power_slot1(r, s.ch, s.cfg));
            track(c[passive + 1].form(r.u1), relay_power(s.relay, r, s.ch, s.cfg));
            track(c[passive + 2].form(r.u1), irs_power_slot2(s.relay, r, s.ch, s.cfg));
            std::size_t j = 0;
            for (Index i = 0; i < n; ++i)
                if (!s.cfg.is_active(i)) track(c[j++].form(r.u1), std::norm(r.u1(i)));
        }

        const U2StepForms f2 = build_u2_step(s.ch, s.relay, s.refl, s.cfg);
        for (int t = 0; t < 3; ++t) {
            ReflectionState r = s.refl;
            r.u2 = gaussian(n, e);
            const cvec v = u2_to_variable(r.u2);
            const SnrBreakdown d = snr_direct(s.ch, s.relay, r, s.cfg);
            const double p2 = irs_power_slot2(s.relay, r, s.ch, s.cfg);
            track(f2.problem.ratio(v), d.snr);
            track(s.cfg.gamma_s() * std::norm(f2.c + (v.adjoint() * f2.h3).value()), d.signal_power);
            track((v.adjoint() * f2.power_matrix * v).value().real(), p2);
            track(f2.problem.constraints.back().form(v), p2);
        }
    }
    const double secs = seconds_since(t0);
    report(1, worst <= 1e-10 && secs < 10.0, "quadratic-form equivalence",
           fmt("max relative error %.2e over 200 instances", worst), secs);
}

cmat random_pd(Index n, Engine& e, double shift) {
    const cmat g = gaussian(n, n, e);
    return g * g.adjoint() + shift * cmat::Identity(n, n);
}

void qcqp_oracle() {
    const auto t0 = Clock::now();
    double worst = 0.0;
    int not_optimal = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Engine e(9000 + seed);
        std::uniform_int_distribution<int> dims(1, 4), ncons(1, 3);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const Index n = dims(e);
        ComplexQcqp p;
        p.objective = QuadForm(-random_pd(n, e, 0.1), gaussian(n, e, 25.0), 0.3);
        const int m = ncons(e);
        for (int i = 0; i < m; ++i)
            p.constraints.push_back({QuadForm(random_pd(n, e, 0.05), gaussian(n, e, 0.1), 0.2), 1.0 + 4.0 * unit(e), "c"});
        const QcqpSolution s = solve(p, cvec::Zero(n));
        if (s.status != QcqpStatus::optimal) ++not_optimal;
        worst = std::max(worst, rel_err(s.objective_value, dual_oracle(to_real(p)).dual_value));
    }
    const double secs = seconds_since(t0);
    report(2, worst <= 1e-4 && not_optimal == 0 && secs < 60.0, "qcqp oracle",
           fmt("max relative gap %.2e, %d non-optimal", worst, not_optimal), secs);
}

void monotonicity() {
    const auto t0 = Clock::now();
    int rate_drops = 0, ratio_drops = 0, infeasible = 0, states = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Instance s = reference_instance(2, 8, 2, 300 + seed);
        OptimizeOptions o;
        o.seed = derive_seed(300 + seed, stream::initial_state);
        o.observer = [&](const AoState& st) {
            ++states;
            if (!check_feasible(st.relay, st.refl, s.ch, s.cfg).ok(1e-6)) ++infeasible;
        };
        const OptimizeResult r = optimize(s.ch, s.cfg, o);
        const auto& rates = r.trace.step_rates;
        for (std::size_t i = 1; i < rates.size(); ++i)
            if (rates[i] < rates[i - 1] - 1e-8) ++rate_drops;
        for (const StepTrace& st : r.trace.steps) {
            const auto& v = st.dinkelbach_values;
            for (std::size_t i = 1; i < v.size(); ++i)
                if (v[i] < v[i - 1] - 1e-9 * std::max(1.0, std::abs(v[i - 1]))) ++ratio_drops;
        }
    }
    const double secs = seconds_since(t0);
    report(3, rate_drops == 0 && ratio_drops == 0 && infeasible == 0 && secs < 300.0, "alternating ascent",
           fmt("%d rate drops, %d Dinkelbach drops, %d of %d states infeasible", rate_drops, ratio_drops, infeasible,
               states),
           secs);
}

void relay_only_oracle() {
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Instance s = reference_instance(2, 8, 0, 700 + seed);
        s.ch = s.ch.without_irs();
        const AoState start = init_state(s.ch, s.cfg, seed);
        const StepResult r = a_step(start, s.ch, s.cfg, InnerOptions{});
        worst = std::max(worst, rel_err(r.state.snr, matched_filter_snr(s.ch, s.cfg)));
    }
    const double secs = seconds_since(t0);
    report(4, worst <= 1e-3, "relay-only matched filter", fmt("max relative SNR gap %.2e", worst), secs);
}

void minorant_bound() {
    const auto t0 = Clock::now();
    double worst = -1.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Instance s = random_instance(2, 8, 2, 1100 + seed);
        const AStepForms f = build_a_step(s.ch, s.refl, s.cfg);
        const QuadForm b1(f.b1, cvec::Zero(4), 0.0);
        Engine e(seed);
        for (int t = 0; t < 1000; ++t) {
            const cvec a = gaussian(4, e);
            const cvec at = t % 2 ? cvec(a + 1e-3 * gaussian(4, e)) : gaussian(4, e);
            const double truth = b1(a);
            worst = std::max(worst, (linearize_at(b1, at)(a) - truth) / std::max(1.0, std::abs(truth)));
        }
    }
    report(8, worst <= 1e-9, "minorant bound", fmt("max scaled excess %.2e over 20000 pairs", worst),
           seconds_since(t0));
}

struct Means {
    double hybrid, passive, random, relay;
};

Means means_of(const SweepRow& row) {
    auto m = [&](Scheme s) {
        for (const auto& st : row.schemes)
            if (st.scheme == s) return st.mean;
        return std::nan("");
    };
    return {m(Scheme::hybrid), m(Scheme::passive_irs), m(Scheme::random_phase), m(Scheme::relay_only)};
}

void trends(std::size_t trials) {
    MonteCarloOptions mc;
    mc.trials = trials;
    mc.root_seed = 1;
    const SystemParams base;
    const Geometry geo;

    auto t0 = Clock::now();
    const Means ref = means_of(monte_carlo(geo, base, all_schemes, mc));
    const double gap = ref.hybrid - ref.passive;
    report(5, gap >= 1.0 && ref.hybrid > ref.passive && ref.passive > ref.random && ref.hybrid > ref.relay,
           "rate ordering at 30 dBm",
           fmt("hybrid %.3f passive %.3f random %.3f relay %.3f, gap %.3f bits/s/Hz over %zu trials", ref.hybrid,
               ref.passive, ref.random, ref.relay, gap, trials),
           seconds_since(t0));

    // the 30 dBm point is the reference run above
    t0 = Clock::now();
    const Scheme pair[] = {Scheme::hybrid, Scheme::passive_irs};
    double gains[3];
    for (int i : {0, 2}) {
        SystemParams p = base;
        p.irs_power = dbm_to_watts(i == 0 ? 20.0 : 40.0);
        const Means m = means_of(monte_carlo(geo, p, pair, mc));
        gains[i] = m.hybrid / m.passive - 1.0;
    }
    gains[1] = ref.hybrid / ref.passive - 1.0;
    report(6, gains[0] > 0.0 && gains[1] > gains[0] && gains[2] > gains[1] && gains[2] > 0.25,
           "gain versus IRS power", fmt("gain at 20/30/40 dBm %.2f%% / %.2f%% / %.2f%%", 100 * gains[0],
                                        100 * gains[1], 100 * gains[2]),
           seconds_since(t0));

    // baselines do not depend on K and K = 4 is the reference run
    t0 = Clock::now();
    const Scheme hybrid_only[] = {Scheme::hybrid};
    double hyb[5];
    hyb[4] = ref.hybrid;
    for (Index k = 0; k < 4; ++k) {
        SystemParams p = base;
        p.active_elements = k;
        hyb[k] = means_of(monte_carlo(geo, p, hybrid_only, mc)).hybrid;
    }
    const double best_baseline = std::max({ref.passive, ref.random, ref.relay});
    bool nondecreasing = true;
    for (int k = 1; k < 5; ++k) nondecreasing = nondecreasing && hyb[k] >= hyb[k - 1];
    const double gain4 = hyb[4] / best_baseline - 1.0;
    report(7, nondecreasing && gain4 > 0.25, "gain versus active elements",
           fmt("hybrid by K %.3f %.3f %.3f %.3f %.3f, gain at K=4 %.2f%%", hyb[0], hyb[1], hyb[2], hyb[3], hyb[4],
               100 * gain4),
           seconds_since(t0));
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

void reproducibility(const std::string& cli) {
    const auto t0 = Clock::now();
    if (cli.empty()) {
        report(9, false, "sweep reproducibility", "no --cli given", 0.0);
        return;
    }
    const auto dir = std::filesystem::temp_directory_path() / fmt("hirs_acceptance_%d", static_cast<int>(getpid()));
    std::filesystem::create_directories(dir);
    {
        std::ofstream cfg(dir / "run.cfg");
        cfg << "system.N = 8\nsystem.K = 2\nexperiment.trials = 3\nexperiment.threads = 2\nexperiment.seed = 77\n"
               "experiment.grid = 10 30\n";
    }
    bool same = true;
    std::string detail;
    for (const char* cmd : {"sweep-ps", "sweep-k"}) {
        std::string out[2];
        for (int run = 0; run < 2; ++run) {
            const auto csv = dir / fmt("%s_%d.csv", cmd, run);
            const std::string line = "\"" + cli + "\" " + cmd + " --config \"" + (dir / "run.cfg").string() +
                                     "\" --out \"" + csv.string() + "\" > /dev/null";
            if (std::system(line.c_str()) != 0) same = false;
            out[run] = slurp(csv);
        }
        const bool ok = !out[0].empty() && out[0] == out[1];
        same = same && ok;
        detail += fmt("%s%s %s (%zu bytes)", detail.empty() ? "" : ", ", cmd, ok ? "identical" : "differs",
                      out[0].size());
    }
    std::filesystem::remove_all(dir);
    report(9, same, "sweep reproducibility", detail, seconds_since(t0));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance checks"};
    std::string cli;
    std::size_t trials = 100;
    app.add_option("--cli", cli, "path of the hirs executable");
    app.add_option("--trials", trials, "Monte Carlo trials for the trend checks")->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);

    forms_equivalence();
    qcqp_oracle();
    monotonicity();
    relay_only_oracle();
    trends(trials);
    minorant_bound();
    reproducibility(cli);
    std::printf("%d failed\n", failures);
    return failures == 0 ? 0 : 1;
}

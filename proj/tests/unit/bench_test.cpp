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

#include "doctest.h"
#include "../support.hpp"

#include "hirs/bench.hpp"

#include <cmath>

using namespace hirs;
using namespace hirs::test;

namespace {

SystemParams small_params() {
    SystemParams p;
    p.irs_elements = 8;
    p.active_elements = 2;
    return p;
}

} // namespace

TEST_CASE("scheme names") {
    for (Scheme s : all_schemes) CHECK(parse_scheme(to_string(s)) == s);
    CHECK(to_string(Scheme::random_phase) == "passive_irs_random_phase");
    CHECK_FALSE(parse_scheme("hybrid_irs").has_value());
}

TEST_CASE("baseline config") {
    const HybridConfig cfg = SystemParams{}.with_mask(random_active_mask(32, 4, 3));
    const HybridConfig b = baseline_config(Scheme::passive_irs, cfg);
    CHECK(b.active_count() == 0);
    CHECK(b.relay_power == cfg.irs_power + cfg.relay_power);
    CHECK(watts_to_dbm(b.relay_power) == doctest::Approx(33.0103).epsilon(1e-5));
    const HybridConfig h = baseline_config(Scheme::hybrid, cfg);
    CHECK(h.active_count() == 4);
    CHECK(h.relay_power == cfg.relay_power);
}

TEST_CASE("relay_only equals the matched-filter oracle") {
    for (std::uint64_t t = 0; t < 10; ++t) {
        const Instance s = reference_instance(2, 8, 2, trial_seed(3, t));
        const OptimizeResult r = run_baseline(Scheme::relay_only, s.ch, s.cfg, OptimizeOptions{}, 0);
        const HybridConfig b = baseline_config(Scheme::relay_only, s.cfg);
        CHECK(rel_err(r.state.snr, matched_filter_snr(s.ch.without_irs(), b)) < 1e-3);
    }
}

TEST_CASE("passive_irs coincides with a K = 0 hybrid run on the baseline budget") {
    const Instance s = reference_instance(2, 8, 2, 14);
    OptimizeOptions o;
    o.seed = 6;
    const OptimizeResult a = run_baseline(Scheme::passive_irs, s.ch, s.cfg, o, 0);
    const OptimizeResult b = optimize(s.ch, baseline_config(Scheme::passive_irs, s.cfg), o);
    CHECK(a.state.rate == b.state.rate);
}

TEST_CASE("monte_carlo bookkeeping") {
    MonteCarloOptions mc;
    mc.trials = 1;
    mc.threads = 1;
    const Scheme schemes[] = {Scheme::passive_irs, Scheme::relay_only};
    const SweepRow one = monte_carlo(Geometry{}, small_params(), schemes, mc);
    const SchemeStats& st = one.stats(Scheme::passive_irs);
    CHECK(st.used == 1);
    CHECK(st.excluded == 0);
    CHECK(st.mean == st.per_trial[0]);

    mc.trials = 4;
    const SweepRow four = monte_carlo(Geometry{}, small_params(), schemes, mc);
    mc.trials = 8;
    mc.threads = 3;
    const SweepRow eight = monte_carlo(Geometry{}, small_params(), schemes, mc);
    for (Scheme s : schemes)
        for (std::size_t t = 0; t < 4; ++t) CHECK(four.stats(s).per_trial[t] == eight.stats(s).per_trial[t]);
    const SchemeStats& e = eight.stats(Scheme::relay_only);
    double mean = 0.0;
    for (double r : e.per_trial) mean += r;
    CHECK(e.mean == doctest::Approx(mean / 8.0).epsilon(1e-14));
    CHECK(e.std_error > 0.0);
}

TEST_CASE("optimized passive phases beat random phases on nearly every trial") {
    MonteCarloOptions mc;
    mc.trials = 100;
    mc.root_seed = 5;
    const Scheme schemes[] = {Scheme::passive_irs, Scheme::random_phase};
    const SweepRow row = monte_carlo(Geometry{}, small_params(), schemes, mc);
    int wins = 0;
    for (std::size_t t = 0; t < 100; ++t)
        wins += row.stats(Scheme::random_phase).per_trial[t] <= row.stats(Scheme::passive_irs).per_trial[t] + 1e-9;
    CHECK(wins >= 95);
}

TEST_CASE("sweeps") {
    MonteCarloOptions mc;
    mc.trials = 3;
    const Scheme schemes[] = {Scheme::hybrid, Scheme::passive_irs};
    const std::vector<double> ks{0.0, 2.0};
    const SweepResult k = sweep(SweepVariable::active_elements, ks, Geometry{}, small_params(), schemes, mc);
    REQUIRE(k.rows.size() == 2);
    CHECK(k.rows[0].stats(Scheme::passive_irs).per_trial == k.rows[1].stats(Scheme::passive_irs).per_trial);
    CHECK(k.rows[1].sweep_value == 2.0);

    const std::vector<double> ps{dbm_to_watts(10.0), dbm_to_watts(30.0)};
    const SweepResult p = sweep(SweepVariable::source_power, ps, Geometry{}, small_params(), schemes, mc);
    CHECK(p.rows[1].stats(Scheme::hybrid).mean > p.rows[0].stats(Scheme::hybrid).mean);

    const std::vector<double> bad{40.0};
    CHECK_THROWS(sweep(SweepVariable::active_elements, bad, Geometry{}, small_params(), schemes, mc));
}

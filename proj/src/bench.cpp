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

#include "hirs/bench.hpp"

#include "hirs/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

namespace hirs {

std::string_view to_string(Scheme scheme) {
    switch (scheme) {
    case Scheme::hybrid: return "hybrid";
    case Scheme::passive_irs: return "passive_irs";
    case Scheme::random_phase: return "passive_irs_random_phase";
    case Scheme::relay_only: return "relay_only";
    }
    return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
    for (Scheme s : all_schemes)
        if (to_string(s) == name) return s;
    if (name == "random_phase") return Scheme::random_phase;
    return std::nullopt;
}

std::string_view to_string(SweepVariable variable) {
    switch (variable) {
    case SweepVariable::source_power: return "ps";
    case SweepVariable::irs_power: return "pi";
    case SweepVariable::active_elements: return "k";
    }
    return "unknown";
}

HybridConfig baseline_config(Scheme scheme, const HybridConfig& cfg) {
    if (scheme == Scheme::hybrid) return cfg;
    HybridConfig out = cfg;
    out.active_mask.assign(static_cast<std::size_t>(cfg.irs_elements), false);
    out.relay_power = cfg.irs_power + cfg.relay_power;
    return out;
}

OptimizeResult run_baseline(Scheme scheme, const ChannelSet& ch, const HybridConfig& cfg,
                            const OptimizeOptions& options, std::uint64_t phase_seed) {
    const HybridConfig base = baseline_config(scheme, cfg);
    switch (scheme) {
    case Scheme::hybrid:
    case Scheme::passive_irs: return optimize(ch, base, options);
    case Scheme::random_phase: {
        Engine engine(phase_seed);
        ReflectionState refl;
        refl.u1 = random_unit_phases(cfg.irs_elements, engine);
        refl.u2 = random_unit_phases(cfg.irs_elements, engine);
        return optimize_relay_only(ch, base, refl, options);
    }
    case Scheme::relay_only: {
        ReflectionState refl{cvec::Ones(cfg.irs_elements), cvec::Ones(cfg.irs_elements), ReflectionMode::strict};
        return optimize_relay_only(ch.without_irs(), base, refl, options);
    }
    }
    throw std::invalid_argument("unknown scheme");
}

const SchemeStats& SweepRow::stats(Scheme scheme) const {
    for (const auto& s : schemes)
        if (s.scheme == scheme) return s;
    throw std::out_of_range("scheme not present in sweep row");
}

std::uint64_t trial_seed(std::uint64_t root_seed, std::size_t trial) { return derive_seed(root_seed, trial); }

TrialInstance make_trial(const Geometry& geometry, const SystemParams& params, std::uint64_t root_seed,
                         std::size_t trial) {
    const std::uint64_t seed = trial_seed(root_seed, trial);
    TrialInstance t;
    t.cfg = params.with_mask(
        random_active_mask(params.irs_elements, params.active_elements, derive_seed(seed, stream::active_mask)));
    t.ch = draw_channels(geometry, t.cfg, derive_seed(seed, stream::channels));
    t.init_seed = derive_seed(seed, stream::initial_state);
    t.phase_seed = derive_seed(seed, stream::random_phase);
    return t;
}

namespace {

struct TrialOutcome {
    std::vector<double> rates;
    std::vector<TrialLog> logs;
    std::exception_ptr fatal; // broken invariants are not excluded, they abort the run
};

TrialOutcome run_trial(const Geometry& geometry, const SystemParams& params, std::span<const Scheme> schemes,
                       const MonteCarloOptions& options, std::size_t trial) {
    TrialOutcome out;
    const TrialInstance inst = make_trial(geometry, params, options.root_seed, trial);
    const HybridConfig& cfg = inst.cfg;
    const ChannelSet& ch = inst.ch;
    OptimizeOptions opt = options.optimizer;
    opt.seed = inst.init_seed;

    for (Scheme scheme : schemes) {
        TrialLog log{trial, scheme, std::numeric_limits<double>::quiet_NaN(), {}, {}};
        try {
            OptimizeResult r = run_baseline(scheme, ch, cfg, opt, inst.phase_seed);
            if (std::isfinite(r.state.rate)) log.rate = r.state.rate;
            else log.error = "non-finite rate";
            log.trace = std::move(r.trace);
        } catch (const InvariantError&) {
            out.fatal = std::current_exception();
            return out;
        } catch (const std::exception& e) {
            log.error = e.what();
        }
        out.rates.push_back(log.rate);
        if (options.keep_traces) out.logs.push_back(std::move(log));
    }
    return out;
}

SchemeStats summarize(Scheme scheme, std::vector<double> per_trial) {
    SchemeStats s;
    s.scheme = scheme;
    double sum = 0.0;
    for (double r : per_trial) {
        if (std::isnan(r)) {
            ++s.excluded;
            continue;
        }
        ++s.used;
        sum += r;
    }
    if (s.used > 0) s.mean = sum / static_cast<double>(s.used);
    if (s.used > 1) {
        double ss = 0.0;
        for (double r : per_trial)
            if (!std::isnan(r)) ss += (r - s.mean) * (r - s.mean);
        s.std_error = std::sqrt(ss / static_cast<double>(s.used - 1) / static_cast<double>(s.used));
    }
    s.per_trial = std::move(per_trial);
    return s;
}

} // namespace

SweepRow monte_carlo(const Geometry& geometry, const SystemParams& params, std::span<const Scheme> schemes,
                     const MonteCarloOptions& options) {
    if (options.trials < 1) throw std::invalid_argument("monte_carlo: trials must be >= 1");
    params.validate();
    geometry.validate();

    std::vector<TrialOutcome> outcomes(options.trials);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t t = next++; t < options.trials; t = next++)
            outcomes[t] = run_trial(geometry, params, schemes, options, t);
    };
    unsigned workers = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, options.trials));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    }

    for (const auto& o : outcomes)
        if (o.fatal) std::rethrow_exception(o.fatal);

    // Ordered reduction by trial index.
    SweepRow row;
    for (std::size_t k = 0; k < schemes.size(); ++k) {
        std::vector<double> rates;
        rates.reserve(options.trials);
        for (const auto& o : outcomes) rates.push_back(o.rates[k]);
        row.schemes.push_back(summarize(schemes[k], std::move(rates)));
    }
    if (options.keep_traces)
        for (auto& o : outcomes)
            for (auto& log : o.logs) row.logs.push_back(std::move(log));
    return row;
}

SweepResult sweep(SweepVariable variable, std::span<const double> grid, const Geometry& geometry,
                  const SystemParams& params, std::span<const Scheme> schemes, const MonteCarloOptions& options) {
    if (grid.empty()) throw std::invalid_argument("sweep: empty grid");
    SweepResult result{variable, {}, options.trials, options.root_seed};

    auto point = [&](double value) {
        SystemParams p = params;
        switch (variable) {
        case SweepVariable::source_power: p.source_power = value; break;
        case SweepVariable::irs_power: p.irs_power = value; break;
        case SweepVariable::active_elements: {
            if (value < 0.0 || value != std::floor(value) || value > static_cast<double>(params.irs_elements))
                throw std::invalid_argument("sweep: K grid values must be integers in [0, N]");
            p.active_elements = static_cast<Index>(value);
            break;
        }
        }
        if (!(value >= 0.0) || !std::isfinite(value)) throw std::invalid_argument("sweep: invalid grid value");
        p.validate();
        return p;
    };

    // Under a K sweep only the hybrid scheme sees the active mask.
    std::vector<Scheme> varying;
    std::vector<Scheme> shared;
    for (Scheme s : schemes) {
        if (variable == SweepVariable::active_elements && s != Scheme::hybrid) shared.push_back(s);
        else varying.push_back(s);
    }

    SweepRow shared_row;
    if (!shared.empty()) shared_row = monte_carlo(geometry, point(grid.front()), shared, options);

    for (double value : grid) {
        SweepRow row = varying.empty() ? SweepRow{} : monte_carlo(geometry, point(value), varying, options);
        SweepRow merged;
        merged.sweep_value = value;
        for (Scheme s : schemes) {
            const SweepRow& from = std::find(shared.begin(), shared.end(), s) != shared.end() ? shared_row : row;
            merged.schemes.push_back(from.stats(s));
        }
        merged.logs = std::move(row.logs);
        if (&value == &grid.front())
            for (const auto& log : shared_row.logs) merged.logs.push_back(log);
        result.rows.push_back(std::move(merged));
    }
    return result;
}

} // namespace hirs

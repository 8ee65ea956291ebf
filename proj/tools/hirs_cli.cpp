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
#include "hirs/config.hpp"
#include "hirs/types.hpp"
#include "hirs/validate.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace hirs;
using nlohmann::json;

enum Exit { ok = 0, config_error = 1, infeasible = 2, invariant = 3 };

struct Flags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::optional<std::size_t> trials;
    std::optional<unsigned> threads;
    bool verbose = false;
};

void add_flags(CLI::App* cmd, Flags& f, bool sweep) {
    cmd->add_option("--config", f.config, "configuration file")->check(CLI::ExistingFile);
    cmd->add_option("--seed", f.seed, "root seed (overrides experiment.seed)");
    cmd->add_option("--out", f.out, sweep ? "CSV path (overrides experiment.output)" : "trace path (default stdout)");
    if (sweep) {
        cmd->add_option("--trials", f.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
        cmd->add_option("--threads", f.threads, "worker threads, 0 = all cores");
    }
    cmd->add_flag("--verbose", f.verbose, sweep ? "write a JSON-lines run log next to the CSV" : "include inner traces");
}

RunConfig load(const Flags& f) {
    RunConfig c = f.config.empty() ? parse_config("") : load_config(f.config);
    if (f.seed) c.experiment.seed = *f.seed;
    if (f.trials) c.experiment.trials = *f.trials;
    if (f.threads) c.experiment.threads = *f.threads;
    if (!f.out.empty()) c.experiment.output = f.out;
    return c;
}

json step_json(const StepTrace& s) {
    json j = {{"block", s.block},
              {"dinkelbach", s.dinkelbach_values},
              {"subproblem", s.inner_objectives},
              {"minorant_excess", s.max_minorant_excess},
              {"converged", s.converged}};
    if (!s.failure.empty()) j["failure"] = s.failure;
    return j;
}

json trace_json(const OptimizeTrace& t, bool steps) {
    json j = {{"relaxed_rate", t.relaxed_rate},
              {"projected_rate", t.projected_rate},
              {"projection_loss", t.relaxed_rate - t.projected_rate},
              {"outer_iterations", t.outer_iterations},
              {"converged", t.converged},
              {"step_rates", t.step_rates}};
    if (!t.diagnostic.empty()) j["diagnostic"] = t.diagnostic;
    if (steps) {
        j["steps"] = json::array();
        for (const auto& s : t.steps) j["steps"].push_back(step_json(s));
    }
    return j;
}

std::vector<double> to_sweep_values(SweepVariable v, const std::vector<double>& grid) {
    std::vector<double> out;
    for (double g : grid) out.push_back(v == SweepVariable::active_elements ? g : dbm_to_watts(g));
    return out;
}

SystemParams at_point(SystemParams p, SweepVariable v, double value) {
    switch (v) {
    case SweepVariable::source_power: p.source_power = value; break;
    case SweepVariable::irs_power: p.irs_power = value; break;
    case SweepVariable::active_elements: p.active_elements = static_cast<Index>(value); break;
    }
    return p;
}

// Budgets that leave no room for any relay gain are reported before the
// Monte Carlo run rather than as a column of excluded trials.
void preflight(const RunConfig& c, SweepVariable v, const std::vector<double>& values) {
    for (double value : values) {
        const SystemParams p = at_point(c.system.to_params(), v, value);
        const TrialInstance t = make_trial(c.geometry, p, c.experiment.seed, 0);
        init_state(t.ch, t.cfg, t.init_seed);
    }
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << text;
    if (!f.flush()) throw std::runtime_error("write to " + path + " failed");
}

int run_single(const Flags& f) {
    const RunConfig c = load(f);
    const TrialInstance t = make_trial(c.geometry, c.system.to_params(), c.experiment.seed, 0);
    OptimizeOptions opt = c.optimizer;
    opt.seed = t.init_seed;

    std::ostringstream out;
    int status = ok;
    for (Scheme s : c.experiment.schemes) {
        json j = {{"scheme", to_string(s)}, {"seed", c.experiment.seed}};
        const OptimizeResult r = run_baseline(s, t.ch, t.cfg, opt, t.phase_seed);
        const HybridConfig cfg = baseline_config(s, t.cfg);
        const FeasibilityReport fr = check_feasible(r.state.relay, r.state.refl,
                                                    s == Scheme::relay_only ? t.ch.without_irs() : t.ch, cfg);
        j["rate"] = r.state.rate;
        j["snr"] = r.state.snr;
        j["feasible"] = fr.ok(1e-6);
        j["margins"] = {{"irs_slot1", fr.irs_slot1_margin}, {"relay", fr.relay_margin}, {"irs_slot2", fr.irs_slot2_margin}};
        j["trace"] = trace_json(r.trace, f.verbose);
        out << j.dump() << '\n';
        if (!fr.ok(1e-6)) status = invariant;
    }
    if (f.out.empty()) std::cout << out.str();
    else write_file(f.out, out.str());
    return status;
}

int run_sweep(const Flags& f, SweepVariable v) {
    const RunConfig c = load(f);
    const std::vector<double> grid = c.grid_for(v);
    const std::vector<double> values = to_sweep_values(v, grid);
    for (double k : grid)
        if (v == SweepVariable::active_elements && (k < 0.0 || k != std::floor(k) || k > c.system.irs_elements))
            throw ConfigError(0, "experiment.grid", "K values must be integers in [0, N]");
    preflight(c, v, values);

    MonteCarloOptions mc;
    mc.trials = c.experiment.trials;
    mc.root_seed = c.experiment.seed;
    mc.threads = c.experiment.threads;
    mc.optimizer = c.optimizer;
    mc.keep_traces = f.verbose;
    const SweepResult result = sweep(v, values, c.geometry, c.system.to_params(), c.experiment.schemes, mc);

    write_file(c.experiment.output, sweep_csv(result, grid));
    if (f.verbose) {
        std::ostringstream log;
        for (std::size_t i = 0; i < result.rows.size(); ++i) {
            for (const auto& entry : result.rows[i].logs) {
                json j = {{"sweep", to_string(v)}, {"value", grid[i]}, {"trial", entry.trial},
                          {"scheme", to_string(entry.scheme)}};
                if (std::isnan(entry.rate)) {
                    j["rate"] = nullptr;
                    j["error"] = entry.error;
                } else {
                    j["rate"] = entry.rate;
                    j["trace"] = trace_json(entry.trace, false);
                }
                log << j.dump() << '\n';
            }
        }
        write_file(c.experiment.output + ".log.jsonl", log.str());
    }

    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        std::cout << to_string(v) << " = " << grid[i];
        for (const auto& s : result.rows[i].schemes) {
            std::cout << "  " << to_string(s.scheme) << " " << s.mean;
            if (s.excluded) std::cout << " (" << s.excluded << " excluded)";
        }
        std::cout << '\n';
    }
    std::cout << "wrote " << c.experiment.output << '\n';
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hybrid IRS-aided AF relay rate optimization"};
    app.require_subcommand(1);
    Flags flags;

    auto* single = app.add_subcommand("single", "optimize one channel draw and print the full trace");
    add_flags(single, flags, false);
    auto* ps = app.add_subcommand("sweep-ps", "rate versus source power");
    add_flags(ps, flags, true);
    auto* pi = app.add_subcommand("sweep-pi", "rate versus IRS power");
    add_flags(pi, flags, true);
    auto* k = app.add_subcommand("sweep-k", "rate versus number of active elements");
    add_flags(k, flags, true);
    auto* validate = app.add_subcommand("validate", "run the invariant self-checks");
    std::uint64_t validate_seed = 2024;
    validate->add_option("--seed", validate_seed, "seed of the random instances");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : config_error;
    }

    try {
        if (*single) return run_single(flags);
        if (*ps) return run_sweep(flags, SweepVariable::source_power);
        if (*pi) return run_sweep(flags, SweepVariable::irs_power);
        if (*k) return run_sweep(flags, SweepVariable::active_elements);
        if (*validate) return run_validation(std::cout, validate_seed) == 0 ? ok : invariant;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return config_error;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible (" << e.budget() << "): " << e.what() << '\n';
        return infeasible;
    } catch (const InvariantError& e) {
        std::cerr << "invariant failure: " << e.what() << '\n';
        return invariant;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return config_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return config_error;
    }
    return ok;
}

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

#include "hirs/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace hirs {

ConfigError::ConfigError(int line, std::string key, const std::string& message)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                         (key.empty() ? std::string() : key + ": ") + message),
      line_(line), key_(std::move(key)) {}

SystemParams SystemBlock::to_params() const {
    SystemParams p;
    p.relay_antennas = relay_antennas;
    p.irs_elements = irs_elements;
    p.active_elements = active_elements;
    p.source_power = dbm_to_watts(source_dbm);
    p.irs_power = dbm_to_watts(irs_dbm);
    p.relay_power = dbm_to_watts(relay_dbm);
    p.noise_power = dbm_to_watts(noise_dbm);
    return p;
}

std::vector<double> default_grid(SweepVariable variable) {
    switch (variable) {
    case SweepVariable::source_power: return {10.0, 15.0, 20.0, 25.0, 30.0};
    case SweepVariable::irs_power: return {20.0, 25.0, 30.0, 35.0, 40.0};
    case SweepVariable::active_elements: return {0.0, 1.0, 2.0, 3.0, 4.0};
    }
    return {};
}

std::vector<double> RunConfig::grid_for(SweepVariable variable) const {
    if (experiment.sweep == variable && !experiment.grid.empty()) return experiment.grid;
    return default_grid(variable);
}

bool RunConfig::operator==(const RunConfig& o) const {
    const Geometry& a = geometry;
    const Geometry& b = o.geometry;
    const bool geo = a.source == b.source && a.destination == b.destination && a.irs == b.irs &&
                     a.relay == b.relay && a.alpha_si == b.alpha_si && a.alpha_ir == b.alpha_ir &&
                     a.alpha_id == b.alpha_id && a.alpha_sr == b.alpha_sr && a.alpha_rd == b.alpha_rd &&
                     a.pl0_db == b.pl0_db && a.d0 == b.d0;
    const SystemBlock& s = system;
    const SystemBlock& t = o.system;
    const bool sys = s.relay_antennas == t.relay_antennas && s.irs_elements == t.irs_elements &&
                     s.active_elements == t.active_elements && s.source_dbm == t.source_dbm &&
                     s.irs_dbm == t.irs_dbm && s.relay_dbm == t.relay_dbm && s.noise_dbm == t.noise_dbm;
    const OptimizeOptions& p = optimizer;
    const OptimizeOptions& q = o.optimizer;
    const bool opt = p.outer_tol == q.outer_tol && p.max_outer == q.max_outer && p.inner_tol == q.inner_tol &&
                     p.max_inner == q.max_inner && p.warmup_scale == q.warmup_scale && p.qcqp.tol == q.qcqp.tol && p.qcqp.max_iter == q.qcqp.max_iter;
    const ExperimentBlock& e = experiment;
    const ExperimentBlock& f = o.experiment;
    const bool exp = e.sweep == f.sweep && e.grid == f.grid && e.trials == f.trials && e.seed == f.seed &&
                     e.threads == f.threads && e.schemes == f.schemes && e.output == f.output;
    return geo && sys && opt && exp;
}

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

struct Entry {
    int line;
    std::string key;
    std::string value;
};

double to_double(const Entry& e, const std::string& text) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
        throw ConfigError(e.line, e.key, "malformed number '" + text + "'");
    return v;
}

template <class Int>
Int to_int(const Entry& e, const std::string& text) {
    Int v{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ConfigError(e.line, e.key, "malformed integer '" + text + "'");
    return v;
}

std::string single(const Entry& e) {
    const auto w = words(e.value);
    if (w.size() != 1) throw ConfigError(e.line, e.key, "expected a single value");
    return w.front();
}

Eigen::Vector3d point(const Entry& e) {
    const auto w = words(e.value);
    if (w.size() != 3) throw ConfigError(e.line, e.key, "expected three coordinates");
    return {to_double(e, w[0]), to_double(e, w[1]), to_double(e, w[2])};
}

std::optional<SweepVariable> parse_sweep(std::string_view name) {
    if (name == "ps") return SweepVariable::source_power;
    if (name == "pi") return SweepVariable::irs_power;
    if (name == "k") return SweepVariable::active_elements;
    return std::nullopt;
}

using Setter = std::function<void(RunConfig&, const Entry&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = [] {
        std::map<std::string, Setter> t;
        auto num = [](double Geometry::*field) {
            return [field](RunConfig& c, const Entry& e) { c.geometry.*field = to_double(e, single(e)); };
        };
        t["geometry.source"] = [](RunConfig& c, const Entry& e) { c.geometry.source = point(e); };
        t["geometry.destination"] = [](RunConfig& c, const Entry& e) { c.geometry.destination = point(e); };
        t["geometry.irs"] = [](RunConfig& c, const Entry& e) { c.geometry.irs = point(e); };
        t["geometry.relay"] = [](RunConfig& c, const Entry& e) { c.geometry.relay = point(e); };
        t["geometry.alpha_si"] = num(&Geometry::alpha_si);
        t["geometry.alpha_ir"] = num(&Geometry::alpha_ir);
        t["geometry.alpha_id"] = num(&Geometry::alpha_id);
        t["geometry.alpha_sr"] = num(&Geometry::alpha_sr);
        t["geometry.alpha_rd"] = num(&Geometry::alpha_rd);
        t["geometry.pl0_db"] = num(&Geometry::pl0_db);
        t["geometry.d0"] = num(&Geometry::d0);

        auto dbm = [](double SystemBlock::*field) {
            return [field](RunConfig& c, const Entry& e) { c.system.*field = to_double(e, single(e)); };
        };
        auto count = [](Index SystemBlock::*field) {
            return [field](RunConfig& c, const Entry& e) { c.system.*field = to_int<Index>(e, single(e)); };
        };
        t["system.M"] = count(&SystemBlock::relay_antennas);
        t["system.N"] = count(&SystemBlock::irs_elements);
        t["system.K"] = count(&SystemBlock::active_elements);
        t["system.ps_dbm"] = dbm(&SystemBlock::source_dbm);
        t["system.pi_dbm"] = dbm(&SystemBlock::irs_dbm);
        t["system.pr_dbm"] = dbm(&SystemBlock::relay_dbm);
        t["system.sigma2_dbm"] = dbm(&SystemBlock::noise_dbm);

        t["optimizer.outer_tol"] = [](RunConfig& c, const Entry& e) { c.optimizer.outer_tol = to_double(e, single(e)); };
        t["optimizer.inner_tol"] = [](RunConfig& c, const Entry& e) { c.optimizer.inner_tol = to_double(e, single(e)); };
        t["optimizer.max_outer"] = [](RunConfig& c, const Entry& e) { c.optimizer.max_outer = to_int<int>(e, single(e)); };
        t["optimizer.max_inner"] = [](RunConfig& c, const Entry& e) { c.optimizer.max_inner = to_int<int>(e, single(e)); };
        t["optimizer.warmup_scale"] = [](RunConfig& c, const Entry& e) {
            c.optimizer.warmup_scale = to_double(e, single(e));
        };
        t["optimizer.qcqp_tol"] = [](RunConfig& c, const Entry& e) { c.optimizer.qcqp.tol = to_double(e, single(e)); };
        t["optimizer.qcqp_max_iter"] = [](RunConfig& c, const Entry& e) {
            c.optimizer.qcqp.max_iter = to_int<int>(e, single(e));
        };

        t["experiment.sweep"] = [](RunConfig& c, const Entry& e) {
            const auto v = parse_sweep(single(e));
            if (!v) throw ConfigError(e.line, e.key, "expected one of ps, pi, k");
            c.experiment.sweep = *v;
        };
        t["experiment.grid"] = [](RunConfig& c, const Entry& e) {
            c.experiment.grid.clear();
            for (const auto& w : words(e.value)) c.experiment.grid.push_back(to_double(e, w));
        };
        t["experiment.trials"] = [](RunConfig& c, const Entry& e) {
            c.experiment.trials = to_int<std::size_t>(e, single(e));
        };
        t["experiment.seed"] = [](RunConfig& c, const Entry& e) {
            c.experiment.seed = to_int<std::uint64_t>(e, single(e));
        };
        t["experiment.threads"] = [](RunConfig& c, const Entry& e) {
            c.experiment.threads = to_int<unsigned>(e, single(e));
        };
        t["experiment.schemes"] = [](RunConfig& c, const Entry& e) {
            c.experiment.schemes.clear();
            for (const auto& w : words(e.value)) {
                const auto s = parse_scheme(w);
                if (!s) throw ConfigError(e.line, e.key, "unknown scheme '" + w + "'");
                c.experiment.schemes.push_back(*s);
            }
        };
        t["experiment.output"] = [](RunConfig& c, const Entry& e) { c.experiment.output = trim(e.value); };
        return t;
    }();
    return table;
}

void check(const RunConfig& c, const std::map<std::string, int>& lines) {
    auto fail = [&lines](const std::string& key, const std::string& message) {
        const auto it = lines.find(key);
        throw ConfigError(it == lines.end() ? 0 : it->second, key, message);
    };
    const Geometry& g = c.geometry;
    for (auto [key, value] : {std::pair{"geometry.alpha_si", g.alpha_si}, {"geometry.alpha_ir", g.alpha_ir},
                              {"geometry.alpha_id", g.alpha_id}, {"geometry.alpha_sr", g.alpha_sr},
                              {"geometry.alpha_rd", g.alpha_rd}, {"geometry.d0", g.d0}}) {
        if (!(value > 0.0)) fail(key, "must be > 0");
    }
    try {
        g.validate();
    } catch (const std::invalid_argument& e) {
        fail("geometry", e.what());
    }
    const SystemBlock& s = c.system;
    if (s.relay_antennas < 1) fail("system.M", "must be >= 1");
    if (s.irs_elements < 0) fail("system.N", "must be >= 0");
    if (s.active_elements < 0 || s.active_elements > s.irs_elements) fail("system.K", "must lie in [0, N]");
    const OptimizeOptions& o = c.optimizer;
    if (!(o.outer_tol > 0.0)) fail("optimizer.outer_tol", "must be > 0");
    if (!(o.inner_tol > 0.0)) fail("optimizer.inner_tol", "must be > 0");
    if (o.max_outer < 1) fail("optimizer.max_outer", "must be >= 1");
    if (o.max_inner < 1) fail("optimizer.max_inner", "must be >= 1");
    if (!(o.warmup_scale >= 0.0 && o.warmup_scale <= 1.0)) fail("optimizer.warmup_scale", "must lie in [0, 1]");
    if (!(o.qcqp.tol > 0.0)) fail("optimizer.qcqp_tol", "must be > 0");
    if (o.qcqp.max_iter < 1) fail("optimizer.qcqp_max_iter", "must be >= 1");
    const ExperimentBlock& e = c.experiment;
    if (e.trials < 1) fail("experiment.trials", "must be >= 1");
    if (e.schemes.empty()) fail("experiment.schemes", "must list at least one scheme");
    if (e.output.empty()) fail("experiment.output", "must not be empty");
    if (e.sweep == SweepVariable::active_elements) {
        for (double k : e.grid)
            if (k < 0.0 || k != std::floor(k) || k > static_cast<double>(s.irs_elements))
                fail("experiment.grid", "K values must be integers in [0, N]");
    }
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_point(const Eigen::Vector3d& p) {
    return fmt_double(p.x()) + " " + fmt_double(p.y()) + " " + fmt_double(p.z());
}

} // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig config;
    std::map<std::string, int> lines;
    std::istringstream in(text);
    int number = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++number;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(number, "", "expected 'key = value'");
        Entry entry{number, trim(line.substr(0, eq)), trim(line.substr(eq + 1))};
        const auto it = setters().find(entry.key);
        if (it == setters().end()) throw ConfigError(number, entry.key, "unknown key");
        if (lines.contains(entry.key)) throw ConfigError(number, entry.key, "duplicate key");
        if (entry.value.empty() && entry.key != "experiment.grid")
            throw ConfigError(number, entry.key, "missing value");
        it->second(config, entry);
        lines[entry.key] = number;
    }
    check(config, lines);
    return config;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(0, "", "cannot read config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string serialize_config(const RunConfig& c) {
    std::ostringstream out;
    const Geometry& g = c.geometry;
    out << "# node positions [m] and log-distance path loss\n";
    out << "geometry.source = " << fmt_point(g.source) << "\n";
    out << "geometry.destination = " << fmt_point(g.destination) << "\n";
    out << "geometry.irs = " << fmt_point(g.irs) << "\n";
    out << "geometry.relay = " << fmt_point(g.relay) << "\n";
    out << "geometry.alpha_si = " << fmt_double(g.alpha_si) << "\n";
    out << "geometry.alpha_ir = " << fmt_double(g.alpha_ir) << "\n";
    out << "geometry.alpha_id = " << fmt_double(g.alpha_id) << "\n";
    out << "geometry.alpha_sr = " << fmt_double(g.alpha_sr) << "\n";
    out << "geometry.alpha_rd = " << fmt_double(g.alpha_rd) << "\n";
    out << "geometry.pl0_db = " << fmt_double(g.pl0_db) << "\n";
    out << "geometry.d0 = " << fmt_double(g.d0) << "\n\n";

    const SystemBlock& s = c.system;
    out << "# dimensions and powers [dBm]\n";
    out << "system.M = " << s.relay_antennas << "\n";
    out << "system.N = " << s.irs_elements << "\n";
    out << "system.K = " << s.active_elements << "\n";
    out << "system.ps_dbm = " << fmt_double(s.source_dbm) << "\n";
    out << "system.pi_dbm = " << fmt_double(s.irs_dbm) << "\n";
    out << "system.pr_dbm = " << fmt_double(s.relay_dbm) << "\n";
    out << "system.sigma2_dbm = " << fmt_double(s.noise_dbm) << "\n\n";

    const OptimizeOptions& o = c.optimizer;
    out << "optimizer.outer_tol = " << fmt_double(o.outer_tol) << "\n";
    out << "optimizer.max_outer = " << o.max_outer << "\n";
    out << "optimizer.inner_tol = " << fmt_double(o.inner_tol) << "\n";
    out << "optimizer.max_inner = " << o.max_inner << "\n";
    out << "optimizer.warmup_scale = " << fmt_double(o.warmup_scale) << "\n";
    out << "optimizer.qcqp_tol = " << fmt_double(o.qcqp.tol) << "\n";
    out << "optimizer.qcqp_max_iter = " << o.qcqp.max_iter << "\n\n";

    const ExperimentBlock& e = c.experiment;
    out << "experiment.sweep = " << to_string(e.sweep) << "\n";
    out << "experiment.grid =";
    for (double v : e.grid) out << " " << fmt_double(v);
    out << "\n";
    out << "experiment.trials = " << e.trials << "\n";
    out << "experiment.seed = " << e.seed << "\n";
    out << "experiment.threads = " << e.threads << "\n";
    out << "experiment.schemes =";
    for (Scheme sc : e.schemes) out << " " << to_string(sc);
    out << "\n";
    out << "experiment.output = " << e.output << "\n";
    return out.str();
}

std::string sweep_csv(const SweepResult& result, std::span<const double> grid_labels) {
    require_dims(grid_labels.size() == result.rows.size(), "sweep_csv labels vs rows");
    std::ostringstream out;
    out << "sweep_value,scheme,mean_rate_bps_hz,stderr,trials_used,trials_excluded,seed\n";
    char buf[64];
    auto num = [&buf](double v) {
        std::snprintf(buf, sizeof buf, "%.9g", v);
        return std::string(buf);
    };
    for (std::size_t r = 0; r < result.rows.size(); ++r) {
        for (const auto& s : result.rows[r].schemes) {
            out << num(grid_labels[r]) << ',' << to_string(s.scheme) << ',' << num(s.mean) << ','
                << num(s.std_error) << ',' << s.used << ',' << s.excluded << ',' << result.root_seed << '\n';
        }
    }
    return out.str();
}

} // namespace hirs

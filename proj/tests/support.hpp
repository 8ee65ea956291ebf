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
#include "hirs/forms.hpp"
#include "hirs/model.hpp"
#include "hirs/optimizer.hpp"
#include "hirs/qcqp.hpp"
#include "hirs/rng.hpp"
#include "hirs/system.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace hirs::test {

inline cvec gaussian(Index n, Engine& engine, double variance = 1.0) {
    ComplexGaussian draw(variance);
    cvec v(n);
    for (auto& z : v) z = draw(engine);
    return v;
}

inline cmat gaussian(Index rows, Index cols, Engine& engine) {
    ComplexGaussian draw;
    cmat x(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) x(i, j) = draw(engine);
    return x;
}

inline bool rel_close(double a, double b, double rel) {
    return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max({1e-300, std::abs(a), std::abs(b)}); }

// Unit-scale random instance: every channel CN(0,1), budgets of a few noise powers.
struct Instance {
    ChannelSet ch;
    HybridConfig cfg;
    Beamformer relay;
    ReflectionState refl;
};

inline Instance random_instance(Index m, Index n, Index k, std::uint64_t seed) {
    Engine engine(seed);
    Instance s;
    s.cfg.relay_antennas = m;
    s.cfg.irs_elements = n;
    s.cfg.active_mask = random_active_mask(n, k, derive_seed(seed, 99));
    s.cfg.source_power = 2.0;
    s.cfg.irs_power = 40.0;
    s.cfg.relay_power = 20.0;
    s.cfg.noise_power = 1.0;
    s.ch.h_si = gaussian(n, engine);
    s.ch.h_sr = gaussian(m, engine);
    s.ch.H_ir = gaussian(m, n, engine);
    s.ch.h_id = gaussian(n, engine);
    s.ch.h_rd = gaussian(m, engine);
    s.relay.matrix = gaussian(m, m, engine);
    s.refl.u1 = gaussian(n, engine);
    s.refl.u2 = gaussian(n, engine);
    s.refl.mode = ReflectionMode::relaxed;
    return s;
}

// Reference geometry and budgets with small dimensions.
inline Instance reference_instance(Index m, Index n, Index k, std::uint64_t seed) {
    SystemParams p;
    p.relay_antennas = m;
    p.irs_elements = n;
    p.active_elements = k;
    Instance s;
    s.cfg = p.with_mask(random_active_mask(n, k, derive_seed(seed, stream::active_mask)));
    s.ch = draw_channels(Geometry{}, s.cfg, derive_seed(seed, stream::channels));
    return s;
}

// SNR written out element by element from the link equations, sharing no
// code with the model module.
inline double snr_loops(const ChannelSet& ch, const cmat& a, const cvec& u1, const cvec& u2, const HybridConfig& cfg) {
    const Index m = ch.relay_antennas();
    const Index n = ch.irs_elements();
    cvec f = ch.h_sr;
    for (Index r = 0; r < m; ++r)
        for (Index i = 0; i < n; ++i) f(r) += ch.H_ir(r, i) * u1(i) * ch.h_si(i);
    // row vector g^H = h_rd^H + h_id^H Theta2 H_ir^H
    cvec gh(m);
    for (Index r = 0; r < m; ++r) {
        gh(r) = std::conj(ch.h_rd(r));
        for (Index i = 0; i < n; ++i) gh(r) += std::conj(ch.h_id(i)) * u2(i) * std::conj(ch.H_ir(r, i));
    }
    cvec gha(m); // g^H A
    for (Index c = 0; c < m; ++c) {
        gha(c) = 0.0;
        for (Index r = 0; r < m; ++r) gha(c) += gh(r) * a(r, c);
    }
    cplx sig = 0.0;
    for (Index c = 0; c < m; ++c) sig += gha(c) * f(c);
    double n1 = 0.0, nr = 0.0, n2 = 0.0;
    for (Index c = 0; c < m; ++c) nr += std::norm(gha(c));
    for (Index i = 0; i < n; ++i) {
        if (!cfg.is_active(i)) continue;
        cplx t = 0.0;
        for (Index c = 0; c < m; ++c) t += gha(c) * ch.H_ir(c, i);
        n1 += std::norm(t * u1(i));
        n2 += std::norm(std::conj(ch.h_id(i)) * u2(i));
    }
    return cfg.gamma_s() * std::norm(sig) / (n1 + nr + n2 + 1.0);
}

// Best SNR over the matched-filter family A = c h_rd h_sr^H when no IRS
// path exists, by a 1-D search over c up to the relay budget.
inline double matched_filter_snr(const ChannelSet& ch, const HybridConfig& cfg) {
    const cmat shape = ch.h_rd * ch.h_sr.adjoint();
    const double gs = cfg.gamma_s();
    const double unit_power = gs * (shape * ch.h_sr).squaredNorm() + shape.squaredNorm();
    const double c = std::sqrt(cfg.gamma_r() / unit_power);
    double best = 0.0;
    for (int i = 0; i <= 2000; ++i) {
        const double t = c * i / 2000.0;
        const cmat a = t * shape;
        const double sig = gs * std::norm((ch.h_rd.adjoint() * a * ch.h_sr).value());
        const double den = (ch.h_rd.adjoint() * a).squaredNorm() + 1.0;
        best = std::max(best, sig / den);
    }
    return best;
}

// Dual projected-gradient oracle for a strictly concave QCQP. The inner
// maximization of the Lagrangian has a closed form, the dual is minimized
// over lambda >= 0 with a backtracking projected-gradient method, and the
// primal value is read at the recovered point.
struct DualOracle {
    double value = 0.0;
    double dual_value = 0.0;
    rvec x;
};

inline DualOracle dual_oracle(const RealQcqp& p, int iterations = 20000) {
    const std::size_t m = p.constraints.size();
    auto lagrangian_argmax = [&](const std::vector<double>& lam) {
        // maximize y'Q0 y + 2 l0'y - sum lam (y'Qi y + 2 li'y + ci - bi)
        rmat h = -p.objective.quad;
        rvec l = p.objective.lin;
        for (std::size_t i = 0; i < m; ++i) {
            h += lam[i] * p.constraints[i].quad;
            l -= lam[i] * p.constraints[i].lin;
        }
        return rvec(h.ldlt().solve(l));
    };
    auto dual = [&](const std::vector<double>& lam, rvec& y) {
        y = lagrangian_argmax(lam);
        double d = p.objective(y);
        for (std::size_t i = 0; i < m; ++i) d -= lam[i] * (p.constraints[i](y) - p.bounds[i]);
        return d;
    };
    std::vector<double> lam(m, 0.0);
    rvec y;
    double d = dual(lam, y);
    double step = 1.0;
    for (int it = 0; it < iterations; ++it) {
        std::vector<double> grad(m);
        double gnorm = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            grad[i] = p.bounds[i] - p.constraints[i](y);
            if (lam[i] > 0.0 || grad[i] < 0.0) gnorm += grad[i] * grad[i];
        }
        if (gnorm < 1e-28) break;
        bool moved = false;
        for (int bt = 0; bt < 60; ++bt) {
            std::vector<double> trial(m);
            double decrease = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                trial[i] = std::max(0.0, lam[i] - step * grad[i]);
                decrease += grad[i] * (lam[i] - trial[i]);
            }
            rvec yt;
            const double dt = dual(trial, yt);
            if (dt <= d - 0.5 * decrease + 1e-15 * std::abs(d)) {
                moved = dt < d || trial != lam;
                lam = trial;
                d = dt;
                y = yt;
                step *= 2.0;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;
    }
    DualOracle out;
    out.dual_value = d;
    out.x = y;
    out.value = p.objective(y);
    return out;
}

} // namespace hirs::test

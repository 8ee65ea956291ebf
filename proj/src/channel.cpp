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

#include "hirs/channel.hpp"

#include "hirs/rng.hpp"

#include <cmath>

namespace hirs {

void Geometry::validate() const {
    for (double a : {alpha_si, alpha_ir, alpha_id, alpha_sr, alpha_rd}) {
        if (!(a > 0.0)) throw std::invalid_argument("path-loss exponents must be > 0");
    }
    if (!(d0 > 0.0)) throw std::invalid_argument("reference distance must be > 0");
    if (!std::isfinite(pl0_db)) throw std::invalid_argument("reference path loss must be finite");
    const std::pair<const Eigen::Vector3d*, const Eigen::Vector3d*> links[] = {
        {&source, &irs}, {&source, &relay}, {&irs, &relay}, {&irs, &destination}, {&relay, &destination}};
    for (auto [a, b] : links) {
        if (!((*a - *b).norm() > 0.0)) throw std::invalid_argument("linked nodes must not coincide");
    }
}

double path_loss_db(double distance, double alpha, const Geometry& geometry) {
    if (!(distance > 0.0)) throw std::domain_error("path_loss_db: distance must be > 0");
    return geometry.pl0_db - 10.0 * alpha * std::log10(distance / geometry.d0);
}

namespace {

double gain(const Eigen::Vector3d& a, const Eigen::Vector3d& b, double alpha, const Geometry& g) {
    return std::pow(10.0, path_loss_db((a - b).norm(), alpha, g) / 10.0);
}

} // namespace

LinkGains link_gains(const Geometry& g) {
    g.validate();
    return {gain(g.source, g.irs, g.alpha_si, g), gain(g.source, g.relay, g.alpha_sr, g),
            gain(g.irs, g.relay, g.alpha_ir, g), gain(g.irs, g.destination, g.alpha_id, g),
            gain(g.relay, g.destination, g.alpha_rd, g)};
}

ChannelSet ChannelSet::without_irs() const {
    ChannelSet out = *this;
    out.h_si.setZero();
    out.H_ir.setZero();
    out.h_id.setZero();
    return out;
}

bool ChannelSet::all_finite() const {
    return h_si.allFinite() && h_sr.allFinite() && H_ir.allFinite() && h_id.allFinite() && h_rd.allFinite();
}

ChannelSet draw_channels(const Geometry& geometry, const HybridConfig& config, std::uint64_t seed) {
    const Index m = config.relay_antennas;
    const Index n = config.irs_elements;
    if (m < 1 || n < 0) throw std::invalid_argument("draw_channels: invalid dimensions");
    const LinkGains gains = link_gains(geometry);
    Engine engine(seed);

    auto fill = [&engine](auto& x, double variance) {
        ComplexGaussian draw(variance);
        for (Index j = 0; j < x.cols(); ++j)
            for (Index i = 0; i < x.rows(); ++i) x(i, j) = draw(engine);
    };

    ChannelSet ch{cvec(n), cvec(m), cmat(m, n), cvec(n), cvec(m)};
    fill(ch.h_si, gains.si);
    fill(ch.h_sr, gains.sr);
    fill(ch.H_ir, gains.ir);
    fill(ch.h_id, gains.id);
    fill(ch.h_rd, gains.rd);
    return ch;
}

} // namespace hirs

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

#include "hirs/channel.hpp"

#include <cmath>
#include <stdexcept>

using namespace hirs;

TEST_CASE("path loss reference values") {
    const Geometry g;
    CHECK(path_loss_db(1.0, 2.0, g) == doctest::Approx(-30.0).epsilon(1e-15));
    CHECK(path_loss_db(10.0, 2.0, g) == doctest::Approx(-50.0).epsilon(1e-15));
    CHECK(path_loss_db(g.d0, 3.7, g) == doctest::Approx(g.pl0_db));
    CHECK_THROWS_AS(path_loss_db(0.0, 2.0, g), std::domain_error);
    CHECK_THROWS_AS(path_loss_db(-1.0, 2.0, g), std::domain_error);
    for (double d = 1.0; d < 200.0; d *= 1.7) CHECK(path_loss_db(d * 1.01, 2.5, g) < path_loss_db(d, 2.5, g));
}

TEST_CASE("link gains use 3-D distances of the deployment") {
    const Geometry g;
    const LinkGains lg = link_gains(g);
    const double d_si = std::sqrt(10.0 * 10.0 + 50.0 * 50.0 + 20.0 * 20.0);
    CHECK(lg.si == doctest::Approx(std::pow(10.0, (-30.0 - 20.0 * std::log10(d_si)) / 10.0)).epsilon(1e-12));
    const double d_rd = std::sqrt(10.0 * 10.0 + 50.0 * 50.0 + 10.0 * 10.0);
    CHECK(lg.rd == doctest::Approx(std::pow(10.0, (-30.0 - 30.0 * std::log10(d_rd)) / 10.0)).epsilon(1e-12));
}

TEST_CASE("draw_channels is deterministic and shaped by the config") {
    const Geometry g;
    const HybridConfig cfg = SystemParams{}.with_mask(random_active_mask(32, 4, 5));
    const ChannelSet a = draw_channels(g, cfg, 1234);
    const ChannelSet b = draw_channels(g, cfg, 1234);
    const ChannelSet c = draw_channels(g, cfg, 1235);
    CHECK(a.h_si == b.h_si);
    CHECK(a.H_ir == b.H_ir);
    CHECK(a.h_rd == b.h_rd);
    CHECK(a.h_si != c.h_si);
    CHECK(a.H_ir.rows() == 2);
    CHECK(a.H_ir.cols() == 32);
    CHECK(a.h_id.size() == 32);
    CHECK(a.all_finite());

    const ChannelSet z = a.without_irs();
    CHECK(z.H_ir.norm() == 0.0);
    CHECK(z.h_si.norm() == 0.0);
    CHECK(z.h_id.norm() == 0.0);
    CHECK(z.h_sr == a.h_sr);
}

TEST_CASE("empirical link variance matches the linear path gain") {
    const Geometry g;
    SystemParams p;
    p.irs_elements = 1;
    p.active_elements = 0;
    p.relay_antennas = 1;
    const HybridConfig cfg = p.with_mask({false});
    const LinkGains lg = link_gains(g);
    constexpr int draws = 100000;
    double si = 0.0, rd = 0.0, ir = 0.0;
    for (int t = 0; t < draws; ++t) {
        const ChannelSet ch = draw_channels(g, cfg, derive_seed(77, static_cast<std::uint64_t>(t)));
        si += std::norm(ch.h_si(0));
        rd += std::norm(ch.h_rd(0));
        ir += std::norm(ch.H_ir(0, 0));
    }
    CHECK(si / draws == doctest::Approx(lg.si).epsilon(0.02));
    CHECK(rd / draws == doctest::Approx(lg.rd).epsilon(0.02));
    CHECK(ir / draws == doctest::Approx(lg.ir).epsilon(0.02));
}

TEST_CASE("seed derivation and active masks") {
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) == derive_seed(1, 0));
    const auto m4 = random_active_mask(32, 4, 9);
    const auto m2 = random_active_mask(32, 2, 9);
    int count = 0;
    for (std::size_t i = 0; i < m4.size(); ++i) {
        count += m4[i];
        if (m2[i]) CHECK(m4[i]);
    }
    CHECK(count == 4);
    CHECK_THROWS(random_active_mask(4, 5, 1));
}

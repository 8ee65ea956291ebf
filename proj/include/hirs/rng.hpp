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

#include "hirs/types.hpp"

#include <cmath>
#include <cstdint>
#include <random>

namespace hirs {

/// Engine used for every random draw in the library.
///
/// Streams are std::mt19937_64 seeded with a 64-bit value. Child seeds are
/// derived with derive_seed(), which applies the SplitMix64 finalizer to
/// `parent + (stream + 1) * 0x9E3779B97F4A7C15`. Complex Gaussian entries are
/// drawn as two consecutive std::normal_distribution<double> samples (real
/// part first). Results are bit-reproducible for a fixed build.
using Engine = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x) noexcept;

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream) noexcept;

// Sub-stream identifiers used under a per-trial seed.
namespace stream {
inline constexpr std::uint64_t channels = 0;
inline constexpr std::uint64_t active_mask = 1;
inline constexpr std::uint64_t initial_state = 2;
inline constexpr std::uint64_t random_phase = 3;
} // namespace stream

/// Circularly symmetric complex Gaussian with E|z|^2 = variance.
class ComplexGaussian {
public:
    explicit ComplexGaussian(double variance = 1.0) : scale_(std::sqrt(variance / 2.0)) {}

    cplx operator()(Engine& engine) {
        const double re = normal_(engine);
        const double im = normal_(engine);
        return {scale_ * re, scale_ * im};
    }

private:
    double scale_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Vector of n unit-modulus entries with phases uniform on [0, 2pi).
cvec random_unit_phases(Index n, Engine& engine);

} // namespace hirs

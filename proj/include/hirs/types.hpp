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

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace hirs {

using cplx = std::complex<double>;
using cvec = Eigen::VectorXcd;
using cmat = Eigen::MatrixXcd;
using rvec = Eigen::VectorXd;
using rmat = Eigen::MatrixXd;
using Index = Eigen::Index;

// Raised when power budgets cannot be met even at the origin of a
// subproblem, or when a configuration admits no feasible operating point.
class InfeasibleError : public std::runtime_error {
public:
    InfeasibleError(std::string budget, const std::string& what)
        : std::runtime_error(what), budget_(std::move(budget)) {}

    const std::string& budget() const noexcept { return budget_; }

private:
    std::string budget_;
};

// Raised when an internal invariant (monotonicity, form equivalence, ...) is broken.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline void require_dims(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("dimension mismatch: ") + what);
}

} // namespace hirs

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

#include "hirs/forms.hpp"
#include "hirs/types.hpp"

#include <span>
#include <string>
#include <vector>

namespace hirs {

/// maximize objective(x) s.t. constraints[i].form(x) <= constraints[i].bound,
/// with a concave objective and convex constraints.
struct ComplexQcqp {
    QuadForm objective;
    std::vector<BoundedForm> constraints;

    Index dim() const { return objective.dim(); }
    /// Throws std::invalid_argument if dimensions disagree, the objective is
    /// not concave, a constraint is not convex, or a bound is not finite.
    void validate() const;
};

/// value(y) = y^T quad y + 2 lin^T y + constant over y = [Re x; Im x].
struct RealQuad {
    rmat quad;
    rvec lin;
    double constant = 0.0;

    double operator()(const rvec& y) const { return y.dot(quad * y) + 2.0 * lin.dot(y) + constant; }
    rvec gradient(const rvec& y) const { return 2.0 * (quad * y + lin); }
};

struct RealQcqp {
    RealQuad objective;
    std::vector<RealQuad> constraints;
    std::vector<double> bounds;
};

rvec embed(const cvec& x);
cvec unembed(const rvec& y);
RealQuad to_real(const QuadForm& form);
RealQcqp to_real(const ComplexQcqp& problem);

enum class QcqpStatus { optimal, max_iter, infeasible };

std::string to_string(QcqpStatus status);

/// Log-barrier interior point settings. The barrier weight on the objective
/// starts at 1 / initial_barrier and grows by barrier_decrease per outer
/// iteration until constraints / weight <= tol. The objective is normalized
/// by its magnitude at the starting point, so tol is relative.
/// Newton steps use backtracking with sufficient-decrease constant armijo
/// and step shrink factor backtrack.
struct QcqpOptions {
    double tol = 1e-9;
    int max_iter = 400; // total Newton steps
    double initial_barrier = 10.0;
    double barrier_decrease = 10.0;
    double armijo = 0.1;
    double backtrack = 0.5;
    double newton_tol = 1e-12; // half squared Newton decrement
};

struct QcqpSolution {
    cvec x;
    double objective_value = 0.0;
    double kkt_residual = 0.0;     // on the normalized problem
    int barrier_iterations = 0;
    int newton_iterations = 0;
    QcqpStatus status = QcqpStatus::infeasible;
    std::vector<double> duals;     // multipliers of the original constraints
    std::vector<double> outer_objectives; // objective after each barrier stage
};

/// Solves from x0. If x0 is not strictly feasible it is first shrunk toward
/// the origin (largest t in [0,1] with t x0 strictly feasible); if the
/// origin itself violates a bound the status is infeasible.
QcqpSolution solve(const ComplexQcqp& problem, const cvec& x0, const QcqpOptions& options = {});

/// ||grad f - sum duals_i grad g_i|| + sum |duals_i (b_i - g_i)| + sum max(g_i - b_i, 0),
/// gradients taken with respect to [Re x; Im x].
double kkt_residual(const ComplexQcqp& problem, const cvec& x, std::span<const double> duals);

} // namespace hirs

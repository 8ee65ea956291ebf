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

#include "hirs/model.hpp"
#include "hirs/types.hpp"

#include <string>
#include <vector>

namespace hirs {

/// Real-valued quadratic function of a complex vector:
///   value(x) = x^H quad x + 2 Re{lin^H x} + constant.
/// quad is symmetrized to (quad + quad^H)/2 on construction.
class QuadForm {
public:
    QuadForm() = default;
    QuadForm(cmat quad, cvec lin, double constant);

    static QuadForm zero(Index dim);
    /// weight * ||map x + offset||^2.
    static QuadForm affine_norm(const cmat& map, const cvec& offset, double weight = 1.0);
    /// sum_i weights(i) |x_i|^2 + constant.
    static QuadForm diagonal(const rvec& weights, double constant = 0.0);

    double operator()(const cvec& x) const;

    Index dim() const { return quad_.rows(); }
    const cmat& quad() const { return quad_; }
    const cvec& lin() const { return lin_; }
    double constant() const { return constant_; }

    QuadForm& operator+=(const QuadForm& other);
    QuadForm operator+(const QuadForm& other) const;
    QuadForm scaled(double factor) const;
    QuadForm shifted(double delta) const;

private:
    cmat quad_;
    cvec lin_;
    double constant_ = 0.0;
};

/// First-order Taylor minorant of a convex form at `point`:
///   2 Re{(quad point + lin)^H x} - point^H quad point + constant.
/// Lies below `convex` everywhere when quad is PSD.
QuadForm linearize_at(const QuadForm& convex, const cvec& point);

/// Column-major stacking.
cvec vec(const cmat& x);
cmat unvec(const cvec& v, Index rows, Index cols);
cmat kron(const cmat& x, const cmat& y);
cmat hadamard(const cmat& x, const cmat& y);

/// (x + x^H) / 2.
cmat hermitian_part(const cmat& x);

/// A convex form constrained by form(x) <= bound.
struct BoundedForm {
    QuadForm form;
    double bound = 0.0;
    std::string label;
};

/// max numerator(x) / denominator(x) subject to constraints, where
/// numerator is a convex quadratic and denominator a positive convex one.
struct FractionalProblem {
    QuadForm numerator;
    QuadForm denominator;
    std::vector<BoundedForm> constraints;

    double ratio(const cvec& x) const { return numerator(x) / denominator(x); }
};

// ---- A-step: variable a = vec(A) -----------------------------------------

struct AStepForms {
    cmat b1, b2, b3;
    cmat c1, c2;
    cmat d1, d2, d3;
    double noise_constant = 0.0; // ||h_id^H E_K Theta2||^2 + 1
    double irs2_constant = 0.0;  // ||E_K Theta2||_F^2
    FractionalProblem problem;   // gamma_s B1 / (B2 + B3 + const), relay and slot-2 IRS budgets
};

AStepForms build_a_step(const ChannelSet& ch, const ReflectionState& refl, const HybridConfig& cfg);

// ---- u1-step: variable u1 = diag(Theta1) ---------------------------------

struct U1StepForms {
    cvec h1;                  // signal = a + h1^H u1
    cplx a;
    rvec noise_weights;       // |diag{g^H A H_ir E_K}|^2
    double b = 0.0;           // ||g^H A||^2 + ||h_id^H E_K Theta2||^2 + 1
    cvec h2;                  // E_K Theta2 H_ir^H A h_sr
    cmat p1, p2, p3;
    double reduced_irs_budget = 0.0; // gamma_i - ||E_K Theta2 H_ir^H A||_F^2 - ||E_K Theta2||_F^2
    FractionalProblem problem;
};

U1StepForms build_u1_step(const ChannelSet& ch, const Beamformer& relay, const ReflectionState& refl,
                          const HybridConfig& cfg);

// ---- u2-step: variable v = conj(diag(Theta2)) ----------------------------
//
// With v = conj(u2) every slot-2 quantity is affine in v:
//   signal        = c + v^H h3
//   g^H A         = h_rd^H A + v^H Q2
//   g^H A H_ir E_K Theta1 = h4^H + v^H Q1
//   h_id^H E_K Theta2     = v^H Q3
// and the slot-2 IRS power is v^H P v with
//   P = gamma_s H3^H H3 + (H4 H4^H + H_ir^H A A^H H_ir + I) (.) E_K,
//   H3 = E_K diag(H_ir^H A f),  H4 = H_ir^H A H_ir E_K Theta1,
// where (.) E_K keeps the diagonal entries at active indices.

struct U2StepForms {
    cvec h3, h4;
    cmat q1, q2, q3;
    cplx c;
    cmat h3_matrix, h4_matrix;
    cmat power_matrix;
    FractionalProblem problem;
};

U2StepForms build_u2_step(const ChannelSet& ch, const Beamformer& relay, const ReflectionState& refl,
                          const HybridConfig& cfg);

inline cvec u2_to_variable(const cvec& u2) { return u2.conjugate(); }
inline cvec variable_to_u2(const cvec& v) { return v.conjugate(); }

} // namespace hirs

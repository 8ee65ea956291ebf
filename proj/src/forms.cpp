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

#include "hirs/forms.hpp"

#include <cmath>

namespace hirs {

QuadForm::QuadForm(cmat quad, cvec lin, double constant)
    : quad_(hermitian_part(quad)), lin_(std::move(lin)), constant_(constant) {
    require_dims(quad_.rows() == quad_.cols(), "QuadForm: square quadratic part");
    require_dims(lin_.size() == quad_.rows(), "QuadForm: linear part length");
}

QuadForm QuadForm::zero(Index dim) { return {cmat::Zero(dim, dim), cvec::Zero(dim), 0.0}; }

QuadForm QuadForm::affine_norm(const cmat& map, const cvec& offset, double weight) {
    require_dims(map.rows() == offset.size(), "affine_norm: map rows vs offset");
    return {weight * (map.adjoint() * map), weight * (map.adjoint() * offset), weight * offset.squaredNorm()};
}

QuadForm QuadForm::diagonal(const rvec& weights, double constant) {
    return {weights.cast<cplx>().asDiagonal().toDenseMatrix(), cvec::Zero(weights.size()), constant};
}

double QuadForm::operator()(const cvec& x) const {
    require_dims(x.size() == dim(), "QuadForm evaluation");
    return x.dot(quad_ * x).real() + 2.0 * lin_.dot(x).real() + constant_;
}

QuadForm& QuadForm::operator+=(const QuadForm& other) {
    require_dims(other.dim() == dim(), "QuadForm sum");
    quad_ += other.quad_;
    lin_ += other.lin_;
    constant_ += other.constant_;
    return *this;
}

QuadForm QuadForm::operator+(const QuadForm& other) const {
    QuadForm out = *this;
    out += other;
    return out;
}

QuadForm QuadForm::scaled(double factor) const {
    QuadForm out = *this;
    out.quad_ *= factor;
    out.lin_ *= factor;
    out.constant_ *= factor;
    return out;
}

QuadForm QuadForm::shifted(double delta) const {
    QuadForm out = *this;
    out.constant_ += delta;
    return out;
}

QuadForm linearize_at(const QuadForm& convex, const cvec& point) {
    require_dims(point.size() == convex.dim(), "linearize_at");
    const cvec slope = convex.quad() * point + convex.lin();
    const double curvature = point.dot(convex.quad() * point).real();
    return {cmat::Zero(convex.dim(), convex.dim()), slope, convex.constant() - curvature};
}

cvec vec(const cmat& x) { return Eigen::Map<const cvec>(x.data(), x.size()); }

cmat unvec(const cvec& v, Index rows, Index cols) {
    require_dims(v.size() == rows * cols, "unvec");
    return Eigen::Map<const cmat>(v.data(), rows, cols);
}

cmat kron(const cmat& x, const cmat& y) {
    cmat out(x.rows() * y.rows(), x.cols() * y.cols());
    for (Index j = 0; j < x.cols(); ++j)
        for (Index i = 0; i < x.rows(); ++i)
            out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    return out;
}

cmat hadamard(const cmat& x, const cmat& y) {
    require_dims(x.rows() == y.rows() && x.cols() == y.cols(), "hadamard");
    return x.cwiseProduct(y);
}

cmat hermitian_part(const cmat& x) {
    require_dims(x.rows() == x.cols(), "hermitian_part");
    return 0.5 * (x + x.adjoint());
}

namespace {

cvec masked(const cvec& u, const rvec& e) { return u.cwiseProduct(e.cast<cplx>()); }

// x^* x^T for a column x, i.e. the Gram factor that pairs with vec(A).
cmat conj_outer(const cmat& x) { return x.conjugate() * x.transpose(); }

std::vector<BoundedForm> passive_constraints(const HybridConfig& cfg, const char* name) {
    std::vector<BoundedForm> out;
    for (Index i = 0; i < cfg.irs_elements; ++i) {
        if (cfg.is_active(i)) continue;
        rvec unit = rvec::Zero(cfg.irs_elements);
        unit(i) = 1.0;
        out.push_back({QuadForm::diagonal(unit), 1.0, std::string(name) + "[" + std::to_string(i) + "] modulus"});
    }
    return out;
}

} // namespace

AStepForms build_a_step(const ChannelSet& ch, const ReflectionState& refl, const HybridConfig& cfg) {
    check_dims(ch, cfg);
    const Index m = cfg.relay_antennas;
    require_dims(refl.u1.size() == cfg.irs_elements && refl.u2.size() == cfg.irs_elements, "u1/u2 vs N");
    const rvec e = cfg.active_indicator();
    const double gs = cfg.gamma_s();

    const cvec f = effective_uplink(ch, refl.u1);
    const cvec g = effective_downlink(ch, refl.u2);
    const cvec ek_u1 = masked(refl.u1, e);
    const cvec ek_u2 = masked(refl.u2, e);
    const cmat active_in = ch.H_ir * ek_u1.asDiagonal();              // H_ir E_K Theta1
    const cmat active_out = ek_u2.asDiagonal() * ch.H_ir.adjoint();   // E_K Theta2 H_ir^H
    const cmat eye = cmat::Identity(m, m);
    const cmat ggh = g * g.adjoint();
    const cmat out_gram = active_out.adjoint() * active_out;

    AStepForms forms;
    forms.b1 = hermitian_part(kron(conj_outer(f), ggh));
    forms.b2 = hermitian_part(kron(conj_outer(active_in), ggh));
    forms.b3 = hermitian_part(kron(eye, ggh));
    forms.c1 = hermitian_part(kron(conj_outer(f), eye));
    forms.c2 = hermitian_part(kron(conj_outer(active_in), eye));
    forms.d1 = hermitian_part(kron(conj_outer(f), out_gram));
    forms.d2 = hermitian_part(kron(conj_outer(active_in), out_gram));
    forms.d3 = hermitian_part(kron(eye, out_gram));
    forms.noise_constant = ch.h_id.cwiseProduct(ek_u2).squaredNorm() + 1.0;
    forms.irs2_constant = ek_u2.squaredNorm();

    const Index dim = m * m;
    const cvec zero = cvec::Zero(dim);
    forms.problem.numerator = QuadForm(gs * forms.b1, zero, 0.0);
    forms.problem.denominator = QuadForm(forms.b2 + forms.b3, zero, forms.noise_constant);
    forms.problem.constraints.push_back(
        {QuadForm(gs * forms.c1 + forms.c2 + cmat::Identity(dim, dim), zero, 0.0), cfg.gamma_r(), "relay power"});
    forms.problem.constraints.push_back(
        {QuadForm(gs * forms.d1 + forms.d2 + forms.d3, zero, forms.irs2_constant), cfg.gamma_i(),
         "IRS slot-2 power"});
    return forms;
}

U1StepForms build_u1_step(const ChannelSet& ch, const Beamformer& relay, const ReflectionState& refl,
                          const HybridConfig& cfg) {
    check_dims(ch, relay, refl, cfg);
    const cmat& a = relay.matrix;
    const rvec e = cfg.active_indicator();
    const double gs = cfg.gamma_s();

    const cvec g = effective_downlink(ch, refl.u2);
    const cvec ek_u2 = masked(refl.u2, e);
    const cvec w = a.adjoint() * g;                 // (g^H A)^H
    const cvec through_irs = ch.H_ir.adjoint() * w; // (g^H A H_ir)^H
    const cmat a_hir = a * ch.H_ir;
    const cmat active_out = ek_u2.asDiagonal() * ch.H_ir.adjoint(); // E_K Theta2 H_ir^H
    const cmat out_a = active_out * a;

    U1StepForms s;
    s.h1 = ch.h_si.conjugate().cwiseProduct(through_irs);
    s.a = w.dot(ch.h_sr);
    s.noise_weights = e.cwiseProduct(through_irs.cwiseAbs2());
    s.b = w.squaredNorm() + ch.h_id.cwiseProduct(ek_u2).squaredNorm() + 1.0;
    s.h2 = out_a * ch.h_sr;
    s.p1 = a_hir * ch.h_si.asDiagonal();
    s.p2 = out_a * ch.H_ir * ch.h_si.asDiagonal();
    s.p3 = out_a * ch.H_ir;
    s.reduced_irs_budget = cfg.gamma_i() - out_a.squaredNorm() - ek_u2.squaredNorm();

    s.problem.numerator = QuadForm::affine_norm(s.h1.adjoint(), cvec::Constant(1, s.a), gs);
    s.problem.denominator = QuadForm::diagonal(s.noise_weights, s.b);
    s.problem.constraints = passive_constraints(cfg, "u1");

    const rvec source_gain = (gs * ch.h_si.cwiseAbs2()).array() + 1.0;
    s.problem.constraints.push_back({QuadForm::diagonal(e.cwiseProduct(source_gain)), cfg.gamma_i(),
                                     "IRS slot-1 power"});

    const rvec relay_leak = e.cwiseProduct(a_hir.colwise().squaredNorm().transpose());
    s.problem.constraints.push_back({QuadForm::affine_norm(s.p1, a * ch.h_sr, gs) +
                                         QuadForm::diagonal(relay_leak, a.squaredNorm()),
                                     cfg.gamma_r(), "relay power"});

    const rvec irs_leak = e.cwiseProduct(s.p3.colwise().squaredNorm().transpose());
    s.problem.constraints.push_back({QuadForm::affine_norm(s.p2, s.h2, gs) +
                                         QuadForm::diagonal(irs_leak, cfg.gamma_i() - s.reduced_irs_budget),
                                     cfg.gamma_i(), "IRS slot-2 power"});
    return s;
}

U2StepForms build_u2_step(const ChannelSet& ch, const Beamformer& relay, const ReflectionState& refl,
                          const HybridConfig& cfg) {
    check_dims(ch, relay, refl, cfg);
    const Index n = cfg.irs_elements;
    const cmat& a = relay.matrix;
    const rvec e = cfg.active_indicator();
    const double gs = cfg.gamma_s();

    const cvec f = effective_uplink(ch, refl.u1);
    const cvec ek_u1 = masked(refl.u1, e);
    const cmat hir_a = ch.H_ir.adjoint() * a;                              // H_ir^H A
    const cmat reflected = hir_a * ch.H_ir * ek_u1.asDiagonal();           // H_ir^H A H_ir E_K Theta1
    const cvec arrival = hir_a * f;                                         // H_ir^H A f
    const auto id_conj = ch.h_id.conjugate().asDiagonal();                  // diag{h_id^H}

    U2StepForms s;
    s.h3 = id_conj * arrival;
    s.h4 = (ch.h_rd.adjoint() * a * ch.H_ir * ek_u1.asDiagonal()).adjoint();
    s.q1 = id_conj * reflected;
    s.q2 = id_conj * hir_a;
    s.q3 = ch.h_id.conjugate().cwiseProduct(e.cast<cplx>()).asDiagonal();
    s.c = ch.h_rd.dot(a * f);

    // Slot-2 IRS power, straight from its definition: each active element
    // re-radiates signal, forwarded slot-1 noise, relay noise and its own noise.
    const rvec direct_weights =
        e.cwiseProduct(((gs * arrival.cwiseAbs2()) + reflected.rowwise().squaredNorm() +
                        hir_a.rowwise().squaredNorm())
                           .array()
                           .matrix() +
                       rvec::Ones(n));

    s.h3_matrix = e.cast<cplx>().cwiseProduct(arrival).asDiagonal();
    s.h4_matrix = reflected;
    const cmat active_selector = e.cast<cplx>().asDiagonal();
    s.power_matrix = hermitian_part(gs * s.h3_matrix.adjoint() * s.h3_matrix +
                                    hadamard(s.h4_matrix * s.h4_matrix.adjoint() + hir_a * hir_a.adjoint() +
                                                 cmat::Identity(n, n),
                                             active_selector));
    const cmat direct = direct_weights.cast<cplx>().asDiagonal();
    const double scale = std::max(1.0, direct.norm());
    if ((s.power_matrix - direct).norm() > 1e-10 * scale)
        throw InvariantError("u2 power matrix disagrees with the direct slot-2 IRS power expansion");

    s.problem.numerator = QuadForm::affine_norm(s.h3.adjoint(), cvec::Constant(1, std::conj(s.c)), gs);
    s.problem.denominator = QuadForm::affine_norm(s.q1.adjoint(), s.h4) +
                            QuadForm::affine_norm(s.q2.adjoint(), a.adjoint() * ch.h_rd) +
                            QuadForm::affine_norm(s.q3.adjoint(), cvec::Zero(n)).shifted(1.0);
    s.problem.constraints = passive_constraints(cfg, "u2");
    s.problem.constraints.push_back({QuadForm::diagonal(direct_weights), cfg.gamma_i(), "IRS slot-2 power"});
    return s;
}

} // namespace hirs

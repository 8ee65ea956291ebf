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

#include "hirs/qcqp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace hirs {

void ComplexQcqp::validate() const {
    const Index n = dim();
    require_dims(objective.lin().size() == n, "QCQP objective");
    const auto trace_scale = [](const cmat& m) { return std::max(1e-300, m.cwiseAbs().maxCoeff() * m.rows()); };
    if (n > 0) {
        const double top = Eigen::SelfAdjointEigenSolver<cmat>(objective.quad(), Eigen::EigenvaluesOnly)
                               .eigenvalues()
                               .maxCoeff();
        if (top > 1e-10 * trace_scale(objective.quad()))
            throw std::invalid_argument("QCQP objective is not concave");
    }
    for (const auto& c : constraints) {
        require_dims(c.form.dim() == n, "QCQP constraint");
        if (!std::isfinite(c.bound)) throw std::invalid_argument("QCQP bound is not finite: " + c.label);
        if (n == 0) continue;
        const cmat& q = c.form.quad();
        if ((q - cmat(q.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0) {
            if (q.diagonal().real().minCoeff() < -1e-10 * trace_scale(q))
                throw std::invalid_argument("QCQP constraint is not convex: " + c.label);
            continue;
        }
        const double low =
            Eigen::SelfAdjointEigenSolver<cmat>(c.form.quad(), Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
        if (low < -1e-10 * trace_scale(c.form.quad()))
            throw std::invalid_argument("QCQP constraint is not convex: " + c.label);
    }
}

rvec embed(const cvec& x) {
    rvec y(2 * x.size());
    y << x.real(), x.imag();
    return y;
}

cvec unembed(const rvec& y) {
    const Index n = y.size() / 2;
    cvec x(n);
    x.real() = y.head(n);
    x.imag() = y.tail(n);
    return x;
}

RealQuad to_real(const QuadForm& form) {
    const Index n = form.dim();
    const rmat re = form.quad().real();
    const rmat im = form.quad().imag();
    RealQuad out;
    out.quad.resize(2 * n, 2 * n);
    out.quad << re, -im, im, re;
    out.lin = embed(form.lin());
    out.constant = form.constant();
    return out;
}

RealQcqp to_real(const ComplexQcqp& problem) {
    RealQcqp out;
    out.objective = to_real(problem.objective);
    for (const auto& c : problem.constraints) {
        out.constraints.push_back(to_real(c.form));
        out.bounds.push_back(c.bound);
    }
    return out;
}

std::string to_string(QcqpStatus status) {
    switch (status) {
    case QcqpStatus::optimal: return "optimal";
    case QcqpStatus::max_iter: return "max_iter";
    case QcqpStatus::infeasible: return "infeasible";
    }
    return "unknown";
}

double kkt_residual(const ComplexQcqp& problem, const cvec& x, std::span<const double> duals) {
    require_dims(duals.size() == problem.constraints.size(), "kkt_residual duals");
    const rvec y = embed(x);
    rvec stationarity = to_real(problem.objective).gradient(y);
    double complementarity = 0.0;
    double infeasibility = 0.0;
    for (std::size_t i = 0; i < duals.size(); ++i) {
        const RealQuad g = to_real(problem.constraints[i].form);
        const double slack = problem.constraints[i].bound - g(y);
        stationarity -= duals[i] * g.gradient(y);
        complementarity += std::abs(duals[i] * slack);
        infeasibility += std::max(-slack, 0.0);
    }
    return stationarity.norm() + complementarity + infeasibility;
}

namespace {

// One normalized constraint: value(y) <= bound. Diagonal constraints
// (sum of weighted |x_i|^2 plus a constant) keep only their support.
struct Constraint {
    bool sparse = false;
    std::vector<Index> support;  // real indices
    std::vector<double> weights;
    RealQuad dense;
    double constant = 0.0;
    double bound = 0.0;
    double scale = 1.0;          // original = scale * normalized
    std::size_t source = 0;      // index in the original constraint list

    double value(const rvec& y) const {
        if (!sparse) return dense(y);
        double v = constant;
        for (std::size_t k = 0; k < support.size(); ++k) v += weights[k] * y(support[k]) * y(support[k]);
        return v;
    }
};

Constraint make_constraint(const BoundedForm& bf, std::size_t source) {
    Constraint c;
    c.source = source;
    const QuadForm& form = bf.form;
    const Index n = form.dim();
    c.scale = std::abs(bf.bound) > 0.0 ? std::abs(bf.bound) : 1.0;
    c.bound = bf.bound / c.scale;

    const cmat off = form.quad() - cmat(form.quad().diagonal().asDiagonal());
    const bool diagonal = off.cwiseAbs().maxCoeff() == 0.0 && form.lin().cwiseAbs().maxCoeff() == 0.0 &&
                          form.quad().diagonal().imag().cwiseAbs().maxCoeff() == 0.0;
    if (diagonal || n == 0) {
        c.sparse = true;
        c.constant = form.constant() / c.scale;
        for (Index i = 0; i < n; ++i) {
            const double w = form.quad()(i, i).real();
            if (w == 0.0) continue;
            c.support.push_back(i);
            c.weights.push_back(w / c.scale);
            c.support.push_back(i + n);
            c.weights.push_back(w / c.scale);
        }
    } else {
        c.dense = to_real(form);
        c.dense.quad /= c.scale;
        c.dense.lin /= c.scale;
        c.dense.constant /= c.scale;
    }
    return c;
}

bool is_vacuous(const Constraint& c) { return c.sparse && c.support.empty(); }

class Barrier {
public:
    Barrier(RealQuad objective, std::vector<Constraint> constraints)
        : obj_(std::move(objective)), cons_(std::move(constraints)) {}

    double objective(const rvec& y) const { return obj_(y); }

    // Smallest slack; -inf-like when any is violated.
    double min_slack(const rvec& y) const {
        double s = std::numeric_limits<double>::infinity();
        for (const auto& c : cons_) s = std::min(s, c.bound - c.value(y));
        return s;
    }

    double phi(const rvec& y, double t) const {
        double v = -t * obj_(y);
        for (const auto& c : cons_) {
            const double s = c.bound - c.value(y);
            if (!(s > 0.0)) return std::numeric_limits<double>::infinity();
            v -= std::log(s);
        }
        return v;
    }

    void derivatives(const rvec& y, double t, rvec& grad, rmat& hess) const {
        grad = -t * obj_.gradient(y);
        hess = -2.0 * t * obj_.quad;
        for (const auto& c : cons_) {
            const double s = c.bound - c.value(y);
            if (c.sparse) {
                for (std::size_t k = 0; k < c.support.size(); ++k) {
                    const Index i = c.support[k];
                    const double gi = 2.0 * c.weights[k] * y(i);
                    grad(i) += gi / s;
                    hess(i, i) += 2.0 * c.weights[k] / s;
                    for (std::size_t l = 0; l < c.support.size(); ++l) {
                        const Index j = c.support[l];
                        hess(i, j) += gi * 2.0 * c.weights[l] * y(j) / (s * s);
                    }
                }
            } else {
                const rvec gc = c.dense.gradient(y);
                grad += gc / s;
                hess.noalias() += gc * gc.transpose() / (s * s);
                hess.noalias() += 2.0 * c.dense.quad / s;
            }
        }
    }

    // Normalized multipliers 1 / (t s_i) at a centered point.
    std::vector<double> duals(const rvec& y, double t) const {
        std::vector<double> out;
        for (const auto& c : cons_) out.push_back(1.0 / (t * (c.bound - c.value(y))));
        return out;
    }

    rvec constraint_gradient(std::size_t i, const rvec& y) const {
        const auto& c = cons_[i];
        if (!c.sparse) return c.dense.gradient(y);
        rvec g = rvec::Zero(y.size());
        for (std::size_t k = 0; k < c.support.size(); ++k) g(c.support[k]) = 2.0 * c.weights[k] * y(c.support[k]);
        return g;
    }

    // Multipliers from a least-squares fit of the stationarity condition over
    // the nearly active constraints; empty if any comes out negative.
    std::vector<double> fitted_duals(const rvec& y, double active_slack) const {
        std::vector<std::size_t> act;
        for (std::size_t i = 0; i < cons_.size(); ++i)
            if (cons_[i].bound - cons_[i].value(y) <= active_slack) act.push_back(i);
        std::vector<double> out(cons_.size(), 0.0);
        if (act.empty()) return out;
        rmat g(y.size(), static_cast<Index>(act.size()));
        for (std::size_t k = 0; k < act.size(); ++k) g.col(static_cast<Index>(k)) = constraint_gradient(act[k], y);
        const rvec lambda = g.colPivHouseholderQr().solve(obj_.gradient(y));
        for (std::size_t k = 0; k < act.size(); ++k) {
            if (!(lambda(static_cast<Index>(k)) >= 0.0)) return {};
            out[act[k]] = lambda(static_cast<Index>(k));
        }
        return out;
    }

    double kkt(const rvec& y, const std::vector<double>& lambda) const {
        rvec stationarity = obj_.gradient(y);
        double comp = 0.0;
        double infeas = 0.0;
        for (std::size_t i = 0; i < cons_.size(); ++i) {
            const auto& c = cons_[i];
            const double s = c.bound - c.value(y);
            if (c.sparse) {
                for (std::size_t k = 0; k < c.support.size(); ++k)
                    stationarity(c.support[k]) -= lambda[i] * 2.0 * c.weights[k] * y(c.support[k]);
            } else {
                stationarity -= lambda[i] * c.dense.gradient(y);
            }
            comp += std::abs(lambda[i] * s);
            infeas += std::max(-s, 0.0);
        }
        return stationarity.norm() + comp + infeas;
    }

    const std::vector<Constraint>& constraints() const { return cons_; }
    std::size_t size() const { return cons_.size(); }

private:
    RealQuad obj_;
    std::vector<Constraint> cons_;
};

// Magnitude of the objective's terms at y, used to make tol relative.
double objective_scale(const RealQuad& f, const rvec& y) {
    double s = std::abs(y.dot(f.quad * y)) + 2.0 * std::abs(f.lin.dot(y)) + std::abs(f.constant);
    if (!(s > 0.0)) s = std::max({f.quad.cwiseAbs().maxCoeff(), f.lin.cwiseAbs().maxCoeff(), std::abs(f.constant)});
    return s > 0.0 ? s : 1.0;
}

constexpr double start_slack = 1e-9;

} // namespace

QcqpSolution solve(const ComplexQcqp& problem, const cvec& x0, const QcqpOptions& options) {
    const Index n = problem.dim();
    require_dims(x0.size() == n, "solve: start point");
    problem.validate();

    QcqpSolution sol;
    sol.duals.assign(problem.constraints.size(), 0.0);

    std::vector<Constraint> active;
    for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
        Constraint c = make_constraint(problem.constraints[i], i);
        if (is_vacuous(c)) {
            if (c.constant > c.bound) {
                sol.x = x0;
                sol.objective_value = problem.objective(x0);
                return sol; // infeasible: constant term alone exceeds the bound
            }
            continue;
        }
        active.push_back(std::move(c));
    }

    // Feasible start: shrink x0 toward the origin.
    rvec y = embed(x0);
    {
        Barrier probe(to_real(problem.objective), active);
        if (probe.min_slack(y) < start_slack) {
            const rvec origin = rvec::Zero(2 * n);
            if (probe.min_slack(origin) < start_slack) {
                sol.x = x0;
                sol.objective_value = problem.objective(x0);
                return sol;
            }
            double lo = 0.0;
            double hi = 1.0;
            for (int k = 0; k < 80; ++k) {
                const double mid = 0.5 * (lo + hi);
                (probe.min_slack(mid * y) >= start_slack ? lo : hi) = mid;
            }
            y *= lo;
        }
    }

    RealQuad objective = to_real(problem.objective);
    const double scale = objective_scale(objective, y);
    objective.quad /= scale;
    objective.lin /= scale;
    objective.constant /= scale;
    const Barrier barrier(objective, active);

    const rvec start = y;
    const double m = static_cast<double>(barrier.size());
    double t = 1.0 / options.initial_barrier;
    rvec grad;
    rmat hess;
    bool capped = false;

    for (;;) {
        // Centering by damped Newton.
        for (int inner = 0; inner < 100; ++inner) {
            if (sol.newton_iterations >= options.max_iter) {
                capped = true;
                break;
            }
            barrier.derivatives(y, t, grad, hess);
            Eigen::LDLT<rmat> ldlt(hess);
            rvec step = ldlt.solve(-grad);
            if (ldlt.info() != Eigen::Success || !step.allFinite()) {
                const double ridge = 1e-12 * std::max(1.0, hess.diagonal().cwiseAbs().maxCoeff());
                step = (hess + ridge * rmat::Identity(hess.rows(), hess.cols())).ldlt().solve(-grad);
            }
            const double decrement2 = -grad.dot(step);
            ++sol.newton_iterations;
            if (!(decrement2 > 2.0 * options.newton_tol)) break;

            double alpha = 1.0;
            while (barrier.min_slack(y + alpha * step) <= 0.0 && alpha > 1e-20) alpha *= options.backtrack;
            if (decrement2 >= 0.25) {
                const double phi0 = barrier.phi(y, t);
                while (barrier.phi(y + alpha * step, t) > phi0 - options.armijo * alpha * decrement2 &&
                       alpha > 1e-20)
                    alpha *= options.backtrack;
            }
            if (alpha <= 1e-20) break;
            y += alpha * step;
        }
        ++sol.barrier_iterations;
        sol.outer_objectives.push_back(objective(y) * scale);
        if (capped || m == 0.0 || m / t <= options.tol) break;
        t *= options.barrier_decrease;
    }

    if (objective(y) < objective(start)) y = start;

    sol.x = unembed(y);
    sol.objective_value = problem.objective(sol.x);
    std::vector<double> normalized = m > 0.0 ? barrier.duals(y, t) : std::vector<double>{};
    sol.kkt_residual = barrier.kkt(y, normalized);
    if (m > 0.0) {
        const std::vector<double> fitted = barrier.fitted_duals(y, 1e-6);
        if (!fitted.empty()) {
            const double r = barrier.kkt(y, fitted);
            if (r < sol.kkt_residual) {
                sol.kkt_residual = r;
                normalized = fitted;
            }
        }
    }
    for (std::size_t i = 0; i < normalized.size(); ++i) {
        const auto& c = barrier.constraints()[i];
        sol.duals[c.source] = normalized[i] * scale / c.scale;
    }
    sol.status = capped ? QcqpStatus::max_iter
                        : (sol.kkt_residual <= 1e-6 ? QcqpStatus::optimal : QcqpStatus::max_iter);
    return sol;
}

} // namespace hirs

/*
 Copyright 2026 The hocbf Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#include "hocbf/qp.hpp"
#include <iostream>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace hocbf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Scale used for relative feasibility decisions on one row.
double row_scale(const LinearControlConstraint& row, const Eigen::VectorXd& z) {
    return std::max({1.0, std::abs(row.c), row.a.cwiseAbs().dot(z.cwiseAbs())});
}

double worst_violation(const QpProblem& p, const Eigen::VectorXd& z) {
    double worst = 0.0;
    for (const auto& row : p.rows()) worst = std::max(worst, -row.slack(z));
    return worst;
}

// The dual iterations accumulate rounding in z. Re-solve the KKT system of
// the final working set,
//   [H  A^T] [z     ]   [-F]
//   [A  0  ] [lambda] = [ c],
// in one pivoted factorization and keep the result when it is no less
// feasible and still dual feasible.
void polish(const QpProblem& p, const std::vector<int>& working, QpSolution& s) {
    if (working.empty()) return;
    const Eigen::Index n = p.dim();
    const auto k = static_cast<Eigen::Index>(working.size());
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(n + k, n + k);
    Eigen::VectorXd rhs(n + k);
    kkt.topLeftCorner(n, n) = p.H();
    rhs.head(n) = -p.F();
    for (Eigen::Index i = 0; i < k; ++i) {
        const auto& row = p.rows()[static_cast<std::size_t>(working[i])];
        kkt.block(n + i, 0, 1, n) = row.a.transpose();
        kkt.block(0, n + i, n, 1) = row.a;
        rhs(n + i) = row.c;
    }
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
    if (!lu.isInvertible()) return;
    const Eigen::VectorXd sol = lu.solve(rhs);
    if (!sol.allFinite() || sol.tail(k).minCoeff() < 0.0) return;
    const Eigen::VectorXd z = sol.head(n);
    if (worst_violation(p, z) > std::max(worst_violation(p, s.z), 0.0)) return;
    s.z = z;
    for (Eigen::Index i = 0; i < k; ++i) s.multipliers(working[i]) = sol(n + i);
}

void finish(const QpProblem& p, QpSolution& s) {
    s.objective = p.objective(s.z);
    s.active_set.clear();
    for (std::size_t i = 0; i < p.rows().size(); ++i) {
        if (std::abs(p.rows()[i].slack(s.z)) <= kTolActive) s.active_set.push_back(static_cast<int>(i));
    }
}

}  // namespace

const char* to_string(QpStatus status) {
    return status == QpStatus::optimal ? "optimal" : "infeasible";
}

QpProblem::QpProblem(Eigen::MatrixXd H, Eigen::VectorXd F, std::vector<LinearControlConstraint> rows)
    : H_(std::move(H)), F_(std::move(F)), rows_(std::move(rows)) {
    if (H_.rows() != H_.cols() || H_.rows() != F_.size() || F_.size() == 0) {
        throw std::invalid_argument("QP Hessian must be square and match the linear term");
    }
    const double scale = std::max(1.0, H_.cwiseAbs().maxCoeff());
    if ((H_ - H_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw std::invalid_argument("QP Hessian is not symmetric");
    }
    if (!H_.allFinite() || !F_.allFinite()) throw std::invalid_argument("QP data must be finite");
    llt_.compute(H_);
    if (llt_.info() != Eigen::Success) throw std::invalid_argument("QP Hessian is not positive definite");
    for (const auto& row : rows_) {
        if (row.a.size() != F_.size()) throw std::invalid_argument("QP row has the wrong dimension");
        if (!row.a.allFinite() || !std::isfinite(row.c)) throw std::invalid_argument("QP row is not finite");
    }
}

double QpProblem::objective(const Eigen::VectorXd& z) const { return 0.5 * z.dot(H_ * z) + F_.dot(z); }

QpProblem QpProblem::with_row(LinearControlConstraint row) const {
    auto rows = rows_;
    rows.push_back(std::move(row));
    return QpProblem(H_, F_, std::move(rows));
}

// Rows a^T z <= c are handled as n^T z + c >= 0 with n = -a, following the
// Goldfarb-Idnani dual method: start from the unconstrained minimum, add the
// most violated constraint, and take primal/dual steps that keep the
// working-set multipliers nonnegative.
QpSolution solve(const QpProblem& problem) {
    const auto& rows = problem.rows();
    const auto& llt = problem.cholesky();
    const Eigen::Index n = problem.dim();
    const int nrows = static_cast<int>(rows.size());

    QpSolution sol;
    sol.z = llt.solve(-problem.F());
    sol.multipliers = Eigen::VectorXd::Zero(nrows);

    std::vector<int> working;
    std::vector<double> u;  // multipliers aligned with `working`
    const int max_iterations = 50 * (nrows + 1) * static_cast<int>(n + 1);

    auto slack = [&](int j) { return rows[j].slack(sol.z); };

    while (true) {
        // Step 1: most violated row, measured relative to the row norm.
        int p = -1;
        double worst = 0.0;
        for (int j = 0; j < nrows; ++j) {
            if (std::find(working.begin(), working.end(), j) != working.end()) continue;
            const double s = slack(j);
            if (s >= -1e-12 * row_scale(rows[j], sol.z)) continue;
            const double norm = rows[j].a.norm();
            const double measure = norm > 0.0 ? s / norm : s;
            if (p < 0 || measure < worst) {
                p = j;
                worst = measure;
            }
        }
        if (p < 0) break;

        const Eigen::VectorXd n_plus = -rows[p].a;
        double u_plus = 0.0;

        while (true) {
            if (++sol.iterations > max_iterations) {
                sol.status = QpStatus::infeasible;
                sol.certificate.resize(0);
                finish(problem, sol);
                return sol;
            }
            // Step 2(a): primal direction z and dual direction -r.
            const auto k = static_cast<Eigen::Index>(working.size());
            Eigen::MatrixXd N(n, k);
            for (Eigen::Index i = 0; i < k; ++i) N.col(i) = -rows[working[i]].a;
            const Eigen::VectorXd ginv_np = llt.solve(n_plus);
            Eigen::VectorXd r = Eigen::VectorXd::Zero(k);
            Eigen::VectorXd step = ginv_np;
            if (k > 0) {
                const Eigen::MatrixXd ginv_N = llt.solve(N);
                const Eigen::MatrixXd M = N.transpose() * ginv_N;
                r = M.ldlt().solve(N.transpose() * ginv_np);
                step = ginv_np - ginv_N * r;
            }
            const bool zero_step = step.norm() <= 1e-12 * std::max(1.0, ginv_np.norm());

            // Step 2(b): partial (dual) and full (primal) step lengths.
            double t1 = kInf;
            int drop = -1;
            for (Eigen::Index i = 0; i < k; ++i) {
                if (r(i) > 1e-14) {
                    const double ratio = u[i] / r(i);
                    if (ratio < t1) {
                        t1 = ratio;
                        drop = static_cast<int>(i);
                    }
                }
            }
            double t2 = kInf;
            if (!zero_step) t2 = -(n_plus.dot(sol.z) + rows[p].c) / step.dot(n_plus);

            // Step 2(c).
            if (t1 == kInf && t2 == kInf) {
                sol.status = QpStatus::infeasible;
                sol.certificate = Eigen::VectorXd::Zero(nrows);
                sol.certificate(p) = 1.0;
                for (Eigen::Index i = 0; i < k; ++i) sol.certificate(working[i]) = std::max(0.0, -r(i));
                finish(problem, sol);
                return sol;
            }
            if (t2 == kInf) {
                for (Eigen::Index i = 0; i < k; ++i) u[i] -= t1 * r(i);
                u_plus += t1;
                working.erase(working.begin() + drop);
                u.erase(u.begin() + drop);
                continue;
            }
            const double t = std::min(t1, t2);
            sol.z += t * step;
            for (Eigen::Index i = 0; i < k; ++i) u[i] -= t * r(i);
            u_plus += t;
            if (t2 <= t1) {
                working.push_back(p);
                u.push_back(u_plus);
                break;
            }
            working.erase(working.begin() + drop);
            u.erase(u.begin() + drop);
        }
    }

    sol.status = QpStatus::optimal;
    for (std::size_t i = 0; i < working.size(); ++i) sol.multipliers(working[i]) = std::max(0.0, u[i]);
    polish(problem, working, sol);
    finish(problem, sol);
    return sol;
}

namespace {

struct Candidate {
    bool found = false;
    Eigen::VectorXd z;
    Eigen::VectorXd lambda;
    double objective = kInf;
};

Candidate enumerate(const Eigen::MatrixXd& H, const Eigen::VectorXd& F,
                    const std::vector<LinearControlConstraint>& rows) {
    const Eigen::Index n = F.size();
    const int m = static_cast<int>(rows.size());
    Candidate best;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        std::vector<int> set;
        for (int i = 0; i < m; ++i) {
            if (mask & (1u << i)) set.push_back(i);
        }
        const auto k = static_cast<Eigen::Index>(set.size());
        if (k > n) continue;
        Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(n + k, n + k);
        Eigen::VectorXd rhs(n + k);
        kkt.topLeftCorner(n, n) = H;
        rhs.head(n) = -F;
        for (Eigen::Index i = 0; i < k; ++i) {
            kkt.block(n + i, 0, 1, n) = rows[set[i]].a.transpose();
            kkt.block(0, n + i, n, 1) = rows[set[i]].a;
            rhs(n + i) = rows[set[i]].c;
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
        lu.setThreshold(1e-10);
        if (!lu.isInvertible()) continue;
        const Eigen::VectorXd sol = lu.solve(rhs);
        const Eigen::VectorXd z = sol.head(n);
        const Eigen::VectorXd lambda_set = sol.tail(k);

        const double lscale = k > 0 ? std::max(1.0, lambda_set.cwiseAbs().maxCoeff()) : 1.0;
        if (k > 0 && lambda_set.minCoeff() < -1e-9 * lscale) continue;
        bool feasible = true;
        for (const auto& row : rows) {
            if (row.slack(z) < -1e-9 * row_scale(row, z)) {
                feasible = false;
                break;
            }
        }
        if (!feasible) continue;
        const double obj = 0.5 * z.dot(H * z) + F.dot(z);
        if (!best.found || obj < best.objective) {
            best.found = true;
            best.z = z;
            best.objective = obj;
            best.lambda = Eigen::VectorXd::Zero(m);
            for (Eigen::Index i = 0; i < k; ++i) best.lambda(set[i]) = std::max(0.0, lambda_set(i));
        }
    }
    return best;
}

}  // namespace

QpSolution solve_oracle(const QpProblem& problem) {
    if (static_cast<int>(problem.rows().size()) > kOracleMaxRows) {
        throw std::length_error("solve_oracle enumerates at most 12 rows");
    }
    QpSolution sol;
    const Candidate c = enumerate(problem.H(), problem.F(), problem.rows());
    if (c.found) {
        sol.status = QpStatus::optimal;
        sol.z = c.z;
        sol.multipliers = c.lambda;
        finish(problem, sol);
        return sol;
    }
    // Phase 1: the projection of the origin onto the rows exists iff they are feasible.
    const Eigen::Index n = problem.dim();
    const Candidate phase1 = enumerate(Eigen::MatrixXd::Identity(n, n), Eigen::VectorXd::Zero(n), problem.rows());
    if (phase1.found) throw std::runtime_error("oracle found a feasible point but no optimal active set");
    sol.status = QpStatus::infeasible;
    sol.z = Eigen::VectorXd::Zero(n);
    sol.multipliers = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(problem.rows().size()));
    finish(problem, sol);
    return sol;
}

KktResiduals kkt_residuals(const QpProblem& problem, const QpSolution& s) {
    KktResiduals out;
    Eigen::VectorXd grad = problem.H() * s.z + problem.F();
    out.min_multiplier = s.multipliers.size() ? s.multipliers.minCoeff() : 0.0;
    for (std::size_t i = 0; i < problem.rows().size(); ++i) {
        const auto& row = problem.rows()[i];
        const double lambda = s.multipliers(static_cast<Eigen::Index>(i));
        grad += lambda * row.a;
        const double violation = -row.slack(s.z);
        out.primal = std::max(out.primal, violation);
        out.complementarity = std::max(out.complementarity, std::abs(lambda * violation));
    }
    out.stationarity = grad.cwiseAbs().maxCoeff();
    return out;
}

}  // namespace hocbf

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
#ifndef HOCBF_QP_HPP
#define HOCBF_QP_HPP

#include <vector>

#include <Eigen/Dense>

#include "hocbf/hocbf.hpp"

namespace hocbf {

/// Rows are reported satisfied within this residual.
inline constexpr double kTolFeas = 1e-8;
/// Rows with |a^T z - c| within this are reported active.
inline constexpr double kTolActive = 1e-7;

/**
 * @brief minimize 0.5 z^T H z + F^T z subject to a_i^T z <= c_i.
 *
 * H must be symmetric positive definite; this is checked on construction so
 * an invalid problem never reaches a solver.
 */
class QpProblem {
public:
    QpProblem(Eigen::MatrixXd H, Eigen::VectorXd F, std::vector<LinearControlConstraint> rows);

    Eigen::Index dim() const noexcept { return F_.size(); }
    const Eigen::MatrixXd& H() const noexcept { return H_; }
    const Eigen::VectorXd& F() const noexcept { return F_; }
    const std::vector<LinearControlConstraint>& rows() const noexcept { return rows_; }
    const Eigen::LLT<Eigen::MatrixXd>& cholesky() const noexcept { return llt_; }

    double objective(const Eigen::VectorXd& z) const;
    QpProblem with_row(LinearControlConstraint row) const;

private:
    Eigen::MatrixXd H_;
    Eigen::VectorXd F_;
    std::vector<LinearControlConstraint> rows_;
    Eigen::LLT<Eigen::MatrixXd> llt_;
};

enum class QpStatus { optimal, infeasible };

const char* to_string(QpStatus status);

struct QpSolution {
    QpStatus status = QpStatus::infeasible;
    Eigen::VectorXd z;
    double objective = 0.0;
    std::vector<int> active_set;
    /// One multiplier per row, zero for rows outside the working set.
    Eigen::VectorXd multipliers;
    /// For infeasible problems: y >= 0 with sum y_i a_i = 0 and sum y_i c_i < 0.
    /// Empty when infeasibility was declared by exhausting the search.
    Eigen::VectorXd certificate;
    int iterations = 0;
};

/// Dual active-set solve (Goldfarb-Idnani).
QpSolution solve(const QpProblem& problem);

/// Maximum number of rows solve_oracle enumerates.
inline constexpr int kOracleMaxRows = 12;

/// Reference solve by enumerating every candidate active set. Exponential in
/// the number of rows; for tests only.
QpSolution solve_oracle(const QpProblem& problem);

struct KktResiduals {
    double stationarity = 0.0;     ///< ||H z + F + A^T lambda||_inf
    double primal = 0.0;           ///< max(0, max_i a_i^T z - c_i)
    double min_multiplier = 0.0;   ///< min_i lambda_i
    double complementarity = 0.0;  ///< max_i |lambda_i (a_i^T z - c_i)|
};

KktResiduals kkt_residuals(const QpProblem& problem, const QpSolution& solution);

}  // namespace hocbf

#endif  // HOCBF_QP_HPP

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
#ifndef HOCBF_TESTS_QP_GEN_HPP
#define HOCBF_TESTS_QP_GEN_HPP

#include <Eigen/Dense>

#include "hocbf/qp.hpp"
#include "oracles.hpp"

namespace hocbf::test {

inline LinearControlConstraint random_row(Rng& rng, Eigen::Index n) {
    Eigen::VectorXd a(n);
    for (Eigen::Index j = 0; j < n; ++j) a(j) = uniform(rng, -1.0, 1.0);
    return {a, uniform(rng, -1.5, 1.0), ConstraintTag::control_limit};
}

/// Whether every set of at most n rows is comfortably linearly independent
/// (smallest singular value of the normalized rows >= 0.05). Nearly parallel
/// rows make the optimum itself ill-conditioned, and no double-precision
/// solver can then meet absolute 1e-8 KKT residuals. `skip_pair` exempts the
/// deliberately contradictory rows 0 and 1.
inline bool general_position(const std::vector<LinearControlConstraint>& rows, Eigen::Index n, bool skip_pair) {
    const int m = static_cast<int>(rows.size());
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
        const int k = __builtin_popcount(mask);
        if (k > n) continue;
        if (skip_pair && (mask & 3u) == 3u) continue;
        Eigen::MatrixXd A(k, n);
        int r = 0;
        for (int i = 0; i < m; ++i) {
            if (mask & (1u << i)) A.row(r++) = rows[static_cast<std::size_t>(i)].a.normalized().transpose();
        }
        const Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
        if (svd.singularValues()(k - 1) < 0.05) return false;
    }
    return true;
}

/// Random PD QP with n <= 3 and at most 6 rows in general position. About one
/// in five instances with two or more rows gets a contradictory pair so
/// infeasible cases are well represented.
inline QpProblem random_qp(Rng& rng) {
    const auto n = static_cast<Eigen::Index>(std::uniform_int_distribution<int>(1, 3)(rng));
    const int m = std::uniform_int_distribution<int>(0, 6)(rng);
    Eigen::MatrixXd M(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) M(i, j) = uniform(rng, -1.0, 1.0);
    }
    Eigen::MatrixXd H = M.transpose() * M + 0.1 * Eigen::MatrixXd::Identity(n, n);
    H = (0.5 * (H + H.transpose())).eval();
    Eigen::VectorXd F(n);
    for (Eigen::Index j = 0; j < n; ++j) F(j) = uniform(rng, -2.0, 2.0);
    const bool contradictory = m >= 2 && uniform(rng, 0.0, 1.0) < 0.2;
    std::vector<LinearControlConstraint> rows;
    do {
        rows.clear();
        for (int i = 0; i < m; ++i) rows.push_back(random_row(rng, n));
        if (contradictory) {
            // a^T z <= c and -a^T z <= -c - gap
            rows[1].a = -rows[0].a;
            rows[1].c = -rows[0].c - uniform(rng, 0.1, 1.0);
        }
    } while (n > 1 && !general_position(rows, n, contradictory));
    return QpProblem(H, F, rows);
}

}  // namespace hocbf::test

#endif  // HOCBF_TESTS_QP_GEN_HPP

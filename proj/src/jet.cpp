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
#include "hocbf/jet.hpp"

#include <array>
#include <string>
#include <utility>

namespace hocbf {

namespace {

void check_order(int order) {
    if (order < 0) throw ArityError("jet order must be nonnegative");
    if (order > Jet::kMaxOrder) {
        throw ArityError("jet order " + std::to_string(order) + " exceeds the supported maximum of " +
                         std::to_string(Jet::kMaxOrder));
    }
}

Eigen::VectorXd add_rows(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    if (a.size() == 0) return b;
    if (b.size() == 0) return a;
    if (a.size() != b.size()) throw ArityError("jet input rows have different control dimensions");
    return a + b;
}

constexpr int kBellSize = Jet::kMaxOrder + 1;
using BellTable = std::array<std::array<double, kBellSize>, kBellSize>;

// Partial Bell polynomials B[n][k](x1, ..., x_{n-k+1}) via
// B[n][k] = sum_{i=1}^{n-k+1} C(n-1, i-1) x_i B[n-i][k-1].
BellTable bell_table(const std::vector<double>& x, int order) {
    BellTable binom{};
    for (int n = 0; n < kBellSize; ++n) {
        binom[n][0] = 1.0;
        for (int k = 1; k <= n; ++k) binom[n][k] = binom[n - 1][k - 1] + (k < n ? binom[n - 1][k] : 0.0);
    }
    BellTable bell{};
    bell[0][0] = 1.0;
    for (int n = 1; n <= order; ++n) {
        for (int k = 1; k <= n; ++k) {
            double sum = 0.0;
            for (int i = 1; i <= n - k + 1; ++i) sum += binom[n - 1][i - 1] * x[i] * bell[n - i][k - 1];
            bell[n][k] = sum;
        }
    }
    return bell;
}

}  // namespace

Jet::Jet(std::vector<double> coeffs, Eigen::VectorXd top_input)
    : coeffs_(std::move(coeffs)), top_input_(std::move(top_input)) {
    if (coeffs_.empty()) throw ArityError("jet needs at least one coefficient");
    check_order(order());
}

Jet Jet::constant(double value, int order) {
    check_order(order);
    std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
    c[0] = value;
    return Jet(std::move(c));
}

Jet jet_shift(const Jet& j) {
    if (j.order() < 1) throw ArityError("cannot differentiate an order-0 jet");
    std::vector<double> c(j.coeffs().begin() + 1, j.coeffs().end());
    return Jet(std::move(c), j.top_input());
}

Jet jet_truncate(const Jet& j, int order) {
    check_order(order);
    if (order > j.order()) throw ArityError("cannot extend a jet by truncation");
    if (order == j.order()) return j;
    std::vector<double> c(j.coeffs().begin(), j.coeffs().begin() + order + 1);
    return Jet(std::move(c));
}

Jet jet_compose_classk(const ClassK& alpha, const Jet& j, bool* guarded) {
    const int r = j.order();
    if (r == 0 && j.has_input()) {
        throw ArityError("class-K composition of an order-0 jet carrying the control is not affine");
    }
    const ClassKDerivs d = alpha.eval_derivs(j[0], r);
    if (guarded) *guarded = d.guarded;
    const BellTable bell = bell_table(j.coeffs(), r);

    std::vector<double> out(static_cast<std::size_t>(r) + 1, 0.0);
    out[0] = d.values[0];
    for (int n = 1; n <= r; ++n) {
        double sum = 0.0;
        for (int k = 1; k <= n; ++k) sum += d.values[k] * bell[n][k];
        out[n] = sum;
    }
    // The input row only rides on x_r, which appears solely in B[r][1] = x_r.
    Eigen::VectorXd input;
    if (r >= 1 && j.top_input().size() > 0) input = d.values[1] * j.top_input();
    return Jet(std::move(out), std::move(input));
}

Jet jet_add(const Jet& a, const Jet& b) {
    if (a.order() != b.order()) {
        throw ArityError("jet order mismatch: " + std::to_string(a.order()) + " vs " +
                         std::to_string(b.order()));
    }
    std::vector<double> c(a.coeffs());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] += b.coeffs()[k];
    return Jet(std::move(c), add_rows(a.top_input(), b.top_input()));
}

Jet jet_scale(const Jet& a, double k) {
    std::vector<double> c(a.coeffs());
    for (double& x : c) x *= k;
    Eigen::VectorXd input = a.top_input();
    if (input.size() > 0) input *= k;
    return Jet(std::move(c), std::move(input));
}

}  // namespace hocbf

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
#ifndef HOCBF_JET_HPP
#define HOCBF_JET_HPP

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "hocbf/classk.hpp"

namespace hocbf {

/// Raised on order mismatches, order caps, and operations that would make the
/// control enter a jet nonlinearly.
class ArityError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/**
 * @brief Truncated jet (c0, c1, ..., cr) of total time derivatives of a
 *        scalar along the closed-loop flow.
 *
 * The control enters affinely and only in the top slot: the r-th derivative
 * is c_r + top_input . u, where c_r is stored control-free. A zero-sized
 * top_input stands for the zero row of any dimension.
 */
class Jet {
public:
    static constexpr int kMaxOrder = 6;

    explicit Jet(std::vector<double> coeffs, Eigen::VectorXd top_input = Eigen::VectorXd());

    static Jet constant(double value, int order);

    int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    double operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
    const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    const Eigen::VectorXd& top_input() const noexcept { return top_input_; }
    bool has_input() const { return top_input_.size() > 0 && !top_input_.isZero(0.0); }

private:
    std::vector<double> coeffs_;
    Eigen::VectorXd top_input_;
};

/// Time derivative of the jet: drops c0, keeps the input row on the new top.
Jet jet_shift(const Jet& j);

/// Keeps slots 0..order. Cutting below the top discards the input row.
Jet jet_truncate(const Jet& j, int order);

/**
 * Jet of alpha(psi) where psi has jet j, to the same order, by Faa di Bruno
 * with partial Bell polynomials. The input row of the result is
 * alpha'(c0) * j.top_input() (order >= 1). `guarded`, when given, reports
 * whether a fractional-power derivative was evaluated at the floor.
 */
Jet jet_compose_classk(const ClassK& alpha, const Jet& j, bool* guarded = nullptr);

Jet jet_add(const Jet& a, const Jet& b);
Jet jet_scale(const Jet& a, double k);

inline Jet operator+(const Jet& a, const Jet& b) { return jet_add(a, b); }
inline Jet operator*(double k, const Jet& a) { return jet_scale(a, k); }

}  // namespace hocbf

#endif  // HOCBF_JET_HPP

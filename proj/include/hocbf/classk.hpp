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
#ifndef HOCBF_CLASSK_HPP
#define HOCBF_CLASSK_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace hocbf {

/// Thrown when a class-K function is evaluated at a negative argument.
class ClassKDomainError : public std::domain_error {
public:
    explicit ClassKDomainError(double argument);
    double argument() const noexcept { return argument_; }

private:
    double argument_;
};

/// Derivatives (alpha, alpha', ..., alpha^(order)) of a penalty-scaled class-K
/// function. `guarded` is set when the derivative argument was lifted to
/// ClassK::kDerivativeFloor because the true derivative is unbounded at 0.
struct ClassKDerivs {
    std::vector<double> values;
    bool guarded = false;
};

/**
 * @brief Strictly increasing scalar function with alpha(0) = 0, scaled by a
 *        positive penalty p.
 *
 * Three families are supported:
 *   - linear:     alpha(s) = p * k * s,                  k > 0
 *   - power:      alpha(s) = p * s^e,                    e > 0
 *   - polynomial: alpha(s) = p * (c1 s + c2 s^2 + ...),  c_i >= 0, some c_i > 0
 *
 * Nonnegative polynomial coefficients keep the function strictly increasing
 * on the whole half line. Instances are immutable.
 */
class ClassK {
public:
    enum class Kind { linear, power, polynomial };

    /// Derivative arguments below this are lifted for fractional powers.
    static constexpr double kDerivativeFloor = 1e-12;

    static ClassK linear(double gain, double penalty = 1.0);
    static ClassK power(double exponent, double penalty = 1.0);
    static ClassK polynomial(std::vector<double> coefficients, double penalty = 1.0);

    Kind kind() const noexcept { return kind_; }
    double penalty() const noexcept { return penalty_; }
    /// Gain for linear, exponent for power; unused for polynomial.
    double parameter() const noexcept { return parameter_; }
    /// Coefficients of s^1, s^2, ... (polynomial kind only).
    const std::vector<double>& coefficients() const noexcept { return coefficients_; }

    ClassK with_penalty(double penalty) const;

    /// p * alpha(s). Throws ClassKDomainError for s < 0.
    double eval(double s) const;

    /// Analytic derivatives of p * alpha at s, length order + 1.
    ClassKDerivs eval_derivs(double s, int order) const;

    std::string describe() const;

private:
    ClassK(Kind kind, double parameter, std::vector<double> coefficients, double penalty);

    double raw_derivative(double s, int k) const;

    Kind kind_;
    double parameter_;
    std::vector<double> coefficients_;
    double penalty_;
};

}  // namespace hocbf

#endif  // HOCBF_CLASSK_HPP

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
#include "hocbf/classk.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace hocbf {

ClassKDomainError::ClassKDomainError(double argument)
    : std::domain_error("class-K function evaluated at negative argument " +
                        std::to_string(argument)),
      argument_(argument) {}

namespace {

void require_positive(double value, const char* what) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw std::invalid_argument(std::string(what) + " must be positive");
    }
}

bool is_integer(double x) { return std::floor(x) == x; }

}  // namespace

ClassK::ClassK(Kind kind, double parameter, std::vector<double> coefficients, double penalty)
    : kind_(kind), parameter_(parameter), coefficients_(std::move(coefficients)), penalty_(penalty) {}

ClassK ClassK::linear(double gain, double penalty) {
    require_positive(gain, "linear gain");
    require_positive(penalty, "penalty");
    return ClassK(Kind::linear, gain, {}, penalty);
}

ClassK ClassK::power(double exponent, double penalty) {
    require_positive(exponent, "power exponent");
    require_positive(penalty, "penalty");
    return ClassK(Kind::power, exponent, {}, penalty);
}

ClassK ClassK::polynomial(std::vector<double> coefficients, double penalty) {
    require_positive(penalty, "penalty");
    bool any_positive = false;
    for (double c : coefficients) {
        if (!(c >= 0.0) || !std::isfinite(c)) {
            throw std::invalid_argument("polynomial class-K coefficients must be nonnegative");
        }
        any_positive = any_positive || c > 0.0;
    }
    if (!any_positive) {
        throw std::invalid_argument("polynomial class-K needs a positive coefficient");
    }
    return ClassK(Kind::polynomial, 0.0, std::move(coefficients), penalty);
}

ClassK ClassK::with_penalty(double penalty) const {
    require_positive(penalty, "penalty");
    ClassK copy = *this;
    copy.penalty_ = penalty;
    return copy;
}

double ClassK::raw_derivative(double s, int k) const {
    switch (kind_) {
    case Kind::linear:
        if (k == 0) return parameter_ * s;
        return k == 1 ? parameter_ : 0.0;
    case Kind::power: {
        double factor = 1.0;
        for (int i = 0; i < k; ++i) factor *= parameter_ - i;
        if (factor == 0.0) return 0.0;
        return factor * std::pow(s, parameter_ - k);
    }
    case Kind::polynomial: {
        // Horner over sum_{j>=k} c_j j!/(j-k)! s^(j-k); the j >= 1 floor leaves one s for k = 0.
        const int lowest = std::max(k, 1);
        double acc = 0.0;
        for (int j = static_cast<int>(coefficients_.size()); j >= lowest; --j) {
            double falling = 1.0;
            for (int i = 0; i < k; ++i) falling *= j - i;
            acc = acc * s + coefficients_[j - 1] * falling;
        }
        return lowest > k ? acc * s : acc;
    }
    }
    return 0.0;
}

double ClassK::eval(double s) const {
    if (s < 0.0) throw ClassKDomainError(s);
    if (s == 0.0) return 0.0;
    return penalty_ * raw_derivative(s, 0);
}

ClassKDerivs ClassK::eval_derivs(double s, int order) const {
    if (s < 0.0) throw ClassKDomainError(s);
    if (order < 0) throw std::invalid_argument("derivative order must be nonnegative");
    ClassKDerivs out;
    out.values.resize(static_cast<std::size_t>(order) + 1);
    out.values[0] = eval(s);
    double ds = s;
    if (kind_ == Kind::power && !is_integer(parameter_) && order > parameter_ &&
        s < kDerivativeFloor) {
        ds = kDerivativeFloor;
        out.guarded = true;
    }
    for (int k = 1; k <= order; ++k) {
        out.values[k] = penalty_ * raw_derivative(ds, k);
    }
    return out;
}

std::string ClassK::describe() const {
    std::ostringstream os;
    switch (kind_) {
    case Kind::linear: os << "linear(k=" << parameter_ << ")"; break;
    case Kind::power: os << "power(e=" << parameter_ << ")"; break;
    case Kind::polynomial: {
        os << "polynomial(";
        for (std::size_t i = 0; i < coefficients_.size(); ++i) os << (i ? "," : "") << coefficients_[i];
        os << ")";
        break;
    }
    }
    os << "*p=" << penalty_;
    return os.str();
}

}  // namespace hocbf

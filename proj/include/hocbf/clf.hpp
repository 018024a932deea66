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
#ifndef HOCBF_CLF_HPP
#define HOCBF_CLF_HPP

#include <functional>

#include <Eigen/Dense>

#include "hocbf/hocbf.hpp"

namespace hocbf {

/// V, L_f V and L_g V at one state.
struct LyapunovEval {
    double value = 0.0;
    double lf = 0.0;
    Eigen::VectorXd lg;
};

/**
 * Relaxed exponential CLF L_f V + L_g V u + eps V <= delta. The relaxation
 * delta is a decision variable appended after u and penalized by
 * relax_weight * delta^2 in the QP objective.
 */
class ClfSpec {
public:
    ClfSpec(std::function<LyapunovEval(const State&)> lyapunov, double epsilon, double relax_weight);

    double epsilon() const noexcept { return epsilon_; }
    double relax_weight() const noexcept { return relax_weight_; }
    LyapunovEval evaluate(const State& state) const;

private:
    std::function<LyapunovEval(const State&)> lyapunov_;
    double epsilon_;
    double relax_weight_;
};

/// Row [L_g V, -1] (u, delta) <= -L_f V - eps V over the q + 1 decision vector.
LinearControlConstraint clf_constraint(const ClfSpec& spec, const State& state);

}  // namespace hocbf

#endif  // HOCBF_CLF_HPP

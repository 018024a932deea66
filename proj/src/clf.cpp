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
#include "hocbf/clf.hpp"

#include <stdexcept>
#include <utility>

namespace hocbf {

ClfSpec::ClfSpec(std::function<LyapunovEval(const State&)> lyapunov, double epsilon, double relax_weight)
    : lyapunov_(std::move(lyapunov)), epsilon_(epsilon), relax_weight_(relax_weight) {
    if (!lyapunov_) throw std::invalid_argument("CLF needs a Lyapunov function");
    if (!(epsilon_ > 0.0)) throw std::invalid_argument("CLF rate epsilon must be positive");
    if (!(relax_weight_ > 0.0)) throw std::invalid_argument("CLF relaxation weight must be positive");
}

LyapunovEval ClfSpec::evaluate(const State& state) const {
    LyapunovEval ev = lyapunov_(state);
    if (ev.value < 0.0) throw std::domain_error("Lyapunov function returned a negative value");
    return ev;
}

LinearControlConstraint clf_constraint(const ClfSpec& spec, const State& state) {
    const LyapunovEval ev = spec.evaluate(state);
    const Eigen::Index q = ev.lg.size();
    LinearControlConstraint row{Eigen::VectorXd::Zero(q + 1), -ev.lf - spec.epsilon() * ev.value,
                                ConstraintTag::clf};
    row.a.head(q) = ev.lg;
    row.a(q) = -1.0;
    return row;
}

}  // namespace hocbf

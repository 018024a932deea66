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
#include "hocbf/hocbf.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace hocbf {

const char* to_string(ConstraintTag tag) {
    switch (tag) {
    case ConstraintTag::hocbf_safety: return "hocbf-safety";
    case ConstraintTag::cbf_speed_max: return "cbf-speed-max";
    case ConstraintTag::cbf_speed_min: return "cbf-speed-min";
    case ConstraintTag::clf: return "clf";
    case ConstraintTag::control_limit: return "control-limit";
    }
    return "unknown";
}

LinearControlConstraint LinearControlConstraint::padded(Eigen::Index n) const {
    if (n < a.size()) throw std::invalid_argument("cannot pad a constraint row to a shorter length");
    LinearControlConstraint out{Eigen::VectorXd::Zero(n), c, tag};
    out.a.head(a.size()) = a;
    return out;
}

PsiDomainError::PsiDomainError(int index, double value) : ClassKDomainError(value), index_(index) {}

HocbfSpec::HocbfSpec(LieJetProvider provider, std::vector<ClassK> alphas)
    : provider_(std::move(provider)), alphas_(std::move(alphas)) {
    if (provider_.relative_degree < 1) throw std::invalid_argument("relative degree must be >= 1");
    if (provider_.relative_degree > Jet::kMaxOrder) {
        throw std::invalid_argument("relative degree exceeds the supported maximum");
    }
    if (!provider_.evaluate) throw std::invalid_argument("Lie jet provider has no evaluate function");
    if (static_cast<int>(alphas_.size()) != provider_.relative_degree) {
        throw std::invalid_argument("number of class-K functions must equal the relative degree");
    }
}

namespace {

Jet seed_jet(const HocbfSpec& spec, const State& state) {
    LieJet lj = spec.provider().evaluate(state);
    if (static_cast<int>(lj.lie.size()) != spec.relative_degree() + 1) {
        throw std::invalid_argument("Lie jet length must be relative degree + 1");
    }
    return Jet(std::move(lj.lie), std::move(lj.input_row));
}

// Jet of psi_{i-1} below its top slot, with c0 adjusted per policy.
Jet class_k_argument(const Jet& prev, int index, PsiPolicy policy, std::vector<PsiEvent>* events) {
    std::vector<double> c(prev.coeffs().begin(), prev.coeffs().end() - 1);
    if (c[0] < 0.0) {
        if (policy == PsiPolicy::strict) throw PsiDomainError(index, c[0]);
        if (events) {
            const auto kind = c[0] >= -kPsiJitter ? PsiEvent::Kind::jitter_clamped : PsiEvent::Kind::violation;
            events->push_back({kind, index, c[0]});
        }
        c[0] = 0.0;
    }
    return Jet(std::move(c));
}

}  // namespace

PsiChain build_psi_chain(const HocbfSpec& spec, const State& state, PsiPolicy policy) {
    const int m = spec.relative_degree();
    Jet jet = seed_jet(spec, state);
    PsiChain out{PsiValues{std::vector<double>(static_cast<std::size_t>(m))}, jet, {}, false};
    out.values.psi[0] = jet[0];
    for (int i = 1; i <= m; ++i) {
        const Jet arg = class_k_argument(jet, i - 1, policy, &out.events);
        bool guarded = false;
        try {
            jet = jet_shift(jet) + jet_compose_classk(spec.alphas()[i - 1], arg, &guarded);
        } catch (const ClassKDomainError& e) {
            throw PsiDomainError(i - 1, e.argument());
        }
        out.derivative_guarded = out.derivative_guarded || guarded;
        if (i < m) out.values.psi[i] = jet[0];
    }
    out.final_jet = std::move(jet);
    return out;
}

LinearControlConstraint hocbf_constraint(const HocbfSpec& spec, const State& state, PsiPolicy policy) {
    const PsiChain chain = build_psi_chain(spec, state, policy);
    return {-chain.final_jet.top_input(), chain.final_jet[0], ConstraintTag::hocbf_safety};
}

bool MembershipReport::member() const { return !first_failing().has_value(); }

std::optional<int> MembershipReport::first_failing() const {
    for (std::size_t k = 0; k < in_set.size(); ++k) {
        if (!in_set[k]) return static_cast<int>(k);
    }
    return std::nullopt;
}

std::string MembershipReport::describe() const {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t k = 0; k < psi.size(); ++k) {
        if (k) os << ", ";
        os << "psi" << k << "=" << psi[k] << (in_set[k] ? "" : " (negative)");
    }
    return os.str();
}

MembershipReport check_initial_membership(const HocbfSpec& spec, const State& state) {
    const PsiChain chain = build_psi_chain(spec, state, PsiPolicy::clamp);
    MembershipReport report;
    report.psi = chain.values.psi;
    for (double v : report.psi) report.in_set.push_back(v >= 0.0);
    return report;
}

LinearControlConstraint exponential_cbf_constraint(const LieJetProvider& provider,
                                                   std::span<const double> gains,
                                                   const State& state) {
    std::vector<ClassK> alphas;
    for (double k : gains) {
        if (!(k > 0.0)) throw std::invalid_argument("exponential CBF gains must be positive");
        alphas.push_back(ClassK::linear(k));
    }
    return hocbf_constraint(HocbfSpec(provider, std::move(alphas)), state);
}

std::vector<LinearControlConstraint> hocbf_constraints(const HocbfSpec& spec,
                                                       std::span<const State> states,
                                                       Execution exec, PsiPolicy policy) {
    std::vector<LinearControlConstraint> rows(states.size());
    parallel_for(states.size(), exec,
                 [&](std::size_t i) { rows[i] = hocbf_constraint(spec, states[i], policy); });
    return rows;
}

}  // namespace hocbf

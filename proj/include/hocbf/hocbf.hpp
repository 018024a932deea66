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
#ifndef HOCBF_HOCBF_HPP
#define HOCBF_HOCBF_HPP

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hocbf/classk.hpp"
#include "hocbf/jet.hpp"
#include "hocbf/parallel.hpp"

namespace hocbf {

using State = Eigen::VectorXd;

/// Analytic Lie jet of a constraint function at one state:
/// lie = (b, L_f b, ..., L_f^m b) and input_row = L_g L_f^{m-1} b.
struct LieJet {
    std::vector<double> lie;
    Eigen::VectorXd input_row;
};

/// Scenario-supplied Lie derivatives of b. L_g L_f^k b must vanish for k < m-1.
struct LieJetProvider {
    int relative_degree = 1;
    std::function<LieJet(const State&)> evaluate;
};

enum class ConstraintTag { hocbf_safety, cbf_speed_max, cbf_speed_min, clf, control_limit };

const char* to_string(ConstraintTag tag);

/// One QP row a^T u <= c.
struct LinearControlConstraint {
    Eigen::VectorXd a;
    double c = 0.0;
    ConstraintTag tag = ConstraintTag::hocbf_safety;

    /// Row over a longer decision vector, zero-filled on the right.
    LinearControlConstraint padded(Eigen::Index n) const;
    /// c - a^T z; nonnegative when satisfied.
    double slack(const Eigen::VectorXd& z) const { return c - a.dot(z); }
};

class HocbfSpec {
public:
    /// alphas[i] is alpha_{i+1}; its length must equal the relative degree.
    HocbfSpec(LieJetProvider provider, std::vector<ClassK> alphas);

    int relative_degree() const noexcept { return provider_.relative_degree; }
    const LieJetProvider& provider() const noexcept { return provider_; }
    const std::vector<ClassK>& alphas() const noexcept { return alphas_; }

private:
    LieJetProvider provider_;
    std::vector<ClassK> alphas_;
};

/// psi_0, ..., psi_{m-1} at a state.
struct PsiValues {
    std::vector<double> psi;
};

/// strict: a negative psi fed to a class-K function throws PsiDomainError.
/// clamp: the argument is clamped to 0 and an event is recorded.
enum class PsiPolicy { strict, clamp };

/// Tolerance below zero still treated as round-off under PsiPolicy::clamp.
inline constexpr double kPsiJitter = 1e-9;

class PsiDomainError : public ClassKDomainError {
public:
    PsiDomainError(int index, double value);
    int index() const noexcept { return index_; }

private:
    int index_;
};

struct PsiEvent {
    enum class Kind { jitter_clamped, violation };
    Kind kind;
    int index;
    double value;
};

struct PsiChain {
    PsiValues values;
    Jet final_jet;  ///< order-0 jet of psi_m: constant part plus input row.
    std::vector<PsiEvent> events;
    bool derivative_guarded = false;
};

PsiChain build_psi_chain(const HocbfSpec& spec, const State& state,
                         PsiPolicy policy = PsiPolicy::strict);

/// psi_m >= 0 written as a^T u <= c with a = -L_g L_f^{m-1} b.
LinearControlConstraint hocbf_constraint(const HocbfSpec& spec, const State& state,
                                         PsiPolicy policy = PsiPolicy::strict);

struct MembershipReport {
    std::vector<double> psi;
    std::vector<bool> in_set;  ///< in_set[k] <=> psi_k >= 0

    bool member() const;
    /// Index of the first negative psi, if any.
    std::optional<int> first_failing() const;
    std::string describe() const;
};

/// Whether the state lies in C_1 ∩ ... ∩ C_m. Never throws on negative psi:
/// later psi values are computed with negative arguments clamped to 0.
MembershipReport check_initial_membership(const HocbfSpec& spec, const State& state);

/// HOCBF row with alpha_i(s) = k_i s, the exponential-CBF special case.
LinearControlConstraint exponential_cbf_constraint(const LieJetProvider& provider,
                                                   std::span<const double> gains,
                                                   const State& state);

/// Rows for many states at once; the serial path is the reference.
std::vector<LinearControlConstraint> hocbf_constraints(const HocbfSpec& spec,
                                                       std::span<const State> states,
                                                       Execution exec = Execution::parallel,
                                                       PsiPolicy policy = PsiPolicy::strict);

}  // namespace hocbf

#endif  // HOCBF_HOCBF_HPP

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
#ifndef HOCBF_SIM_HPP
#define HOCBF_SIM_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hocbf/hocbf.hpp"
#include "hocbf/qp.hpp"

namespace hocbf {

/// Control-affine plant x' = f(x) + g(x) u.
struct Plant {
    int state_dim = 0;
    int control_dim = 0;
    std::function<Eigen::VectorXd(const State&)> drift;
    std::function<Eigen::MatrixXd(const State&)> input_matrix;

    Eigen::VectorXd dynamics(const State& x, const Eigen::VectorXd& u) const;
};

struct SimConfig {
    double dt = 0.1;
    double horizon = 30.0;
    int rk4_substeps = 4;
    double violation_tol = 1e-6;
    /// Apply the problem's fallback control instead of stopping when a QP is
    /// infeasible. Such runs are flagged degraded.
    bool continue_on_infeasible = false;

    void validate() const;
    int step_count() const;
};

/// Integrates the plant over dt with u held constant, using `substeps` RK4 steps.
State integrate_held(const Plant& plant, const State& x, const Eigen::VectorXd& u, double dt, int substeps);

/**
 * A closed-loop problem: the plant, where it starts, the barriers to monitor,
 * and the per-step QP builder. The QP decision vector starts with the
 * control_dim entries of u; anything after is a relaxation variable.
 */
struct ControlProblem {
    Plant plant;
    State initial_state;
    std::vector<HocbfSpec> barriers;
    std::function<QpProblem(const State&)> assemble;
    std::function<Eigen::VectorXd(const State&)> fallback;
};

struct StepResult {
    QpSolution qp;
    Eigen::VectorXd u;
    Eigen::VectorXd relax;
    State next_state;
    std::vector<PsiValues> psi;  ///< per barrier, at the frozen pre-step state
    std::vector<std::pair<int, PsiEvent>> events;  ///< (barrier index, event)
    std::vector<ConstraintTag> tags;
    std::vector<double> slack;
    std::vector<bool> active;
    bool degraded = false;
};

/// One zero-order-hold control interval. On QP infeasibility without a
/// permitted fallback, u and next_state are left empty.
StepResult step(const ControlProblem& problem, const State& x, const SimConfig& config);

struct StepRecord {
    double t = 0.0;
    State state;
    Eigen::VectorXd u;
    Eigen::VectorXd relax;
    std::vector<std::vector<double>> psi;
    std::vector<ConstraintTag> tags;
    std::vector<double> slack;
    std::vector<bool> active;
    QpStatus status = QpStatus::optimal;
    bool degraded = false;
};

struct TimedPsiEvent {
    double t;
    int barrier;
    PsiEvent event;
};

struct TrajectoryRecord {
    std::vector<StepRecord> steps;
    State final_state;  ///< state at the end of the last logged interval
    double min_u = 0.0;
    double max_u = 0.0;
    std::vector<std::vector<double>> min_psi;  ///< [barrier][k]
    std::optional<double> infeasible_at;
    bool degraded = false;
    std::vector<TimedPsiEvent> events;
};

/// The initial state is outside C_1 ∩ ... ∩ C_m of some barrier.
class InitialMembershipError : public std::runtime_error {
public:
    InitialMembershipError(int barrier, MembershipReport report);
    int barrier() const noexcept { return barrier_; }
    const MembershipReport& report() const noexcept { return report_; }

private:
    int barrier_;
    MembershipReport report_;
};

/// Closed loop over the horizon. Stops at the first infeasible QP (unless a
/// fallback is permitted) and records the time in infeasible_at.
TrajectoryRecord run(const ControlProblem& problem, const SimConfig& config);

struct InvarianceReport {
    struct Barrier {
        std::vector<double> min_psi;
        std::optional<std::size_t> first_offending_step;
    };
    std::vector<Barrier> barriers;
    bool pass = true;
};

/// Recomputes psi at every logged state; passes iff every psi_k >= -tol.
InvarianceReport verify_invariance(const TrajectoryRecord& record, const std::vector<HocbfSpec>& barriers,
                                   double tol);

}  // namespace hocbf

#endif  // HOCBF_SIM_HPP

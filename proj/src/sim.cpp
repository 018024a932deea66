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
#include "hocbf/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace hocbf {

Eigen::VectorXd Plant::dynamics(const State& x, const Eigen::VectorXd& u) const {
    return drift(x) + input_matrix(x) * u;
}

void SimConfig::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(horizon >= dt * (1.0 - 1e-12))) throw std::invalid_argument("horizon must be at least dt");
    if (rk4_substeps < 1) throw std::invalid_argument("rk4 substeps must be >= 1");
    if (!(violation_tol >= 0.0)) throw std::invalid_argument("violation tolerance must be nonnegative");
}

int SimConfig::step_count() const { return static_cast<int>(std::floor(horizon / dt + 1e-9)); }

State integrate_held(const Plant& plant, const State& x, const Eigen::VectorXd& u, double dt, int substeps) {
    const double h = dt / substeps;
    State s = x;
    for (int i = 0; i < substeps; ++i) {
        const Eigen::VectorXd k1 = plant.dynamics(s, u);
        const Eigen::VectorXd k2 = plant.dynamics(s + 0.5 * h * k1, u);
        const Eigen::VectorXd k3 = plant.dynamics(s + 0.5 * h * k2, u);
        const Eigen::VectorXd k4 = plant.dynamics(s + h * k3, u);
        s += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return s;
}

StepResult step(const ControlProblem& problem, const State& x, const SimConfig& config) {
    if (!x.allFinite()) throw std::domain_error("simulation state is not finite");
    StepResult out;
    for (std::size_t b = 0; b < problem.barriers.size(); ++b) {
        PsiChain chain = build_psi_chain(problem.barriers[b], x, PsiPolicy::clamp);
        out.psi.push_back(std::move(chain.values));
        for (const auto& e : chain.events) out.events.emplace_back(static_cast<int>(b), e);
    }

    const QpProblem qp = problem.assemble(x);
    out.qp = solve(qp);
    for (const auto& row : qp.rows()) out.tags.push_back(row.tag);

    const int q = problem.plant.control_dim;
    if (out.qp.status == QpStatus::optimal) {
        out.u = out.qp.z.head(q);
        out.relax = out.qp.z.tail(qp.dim() - q);
    } else if (config.continue_on_infeasible && problem.fallback) {
        out.u = problem.fallback(x);
        out.relax = Eigen::VectorXd::Zero(qp.dim() - q);
        out.degraded = true;
    } else {
        return out;
    }

    Eigen::VectorXd z(qp.dim());
    z << out.u, out.relax;
    for (std::size_t i = 0; i < qp.rows().size(); ++i) {
        const double s = qp.rows()[i].slack(z);
        out.slack.push_back(s);
        out.active.push_back(out.qp.status == QpStatus::optimal && std::abs(s) <= kTolActive);
    }
    out.next_state = integrate_held(problem.plant, x, out.u, config.dt, config.rk4_substeps);
    return out;
}

InitialMembershipError::InitialMembershipError(int barrier, MembershipReport report)
    : std::runtime_error("initial state is outside the safe set of barrier " + std::to_string(barrier) +
                         ": psi" + std::to_string(report.first_failing().value_or(-1)) +
                         " is negative (" + report.describe() + ")"),
      barrier_(barrier),
      report_(std::move(report)) {}

TrajectoryRecord run(const ControlProblem& problem, const SimConfig& config) {
    config.validate();
    for (std::size_t b = 0; b < problem.barriers.size(); ++b) {
        MembershipReport report = check_initial_membership(problem.barriers[b], problem.initial_state);
        if (!report.member()) throw InitialMembershipError(static_cast<int>(b), std::move(report));
    }

    TrajectoryRecord rec;
    rec.min_u = std::numeric_limits<double>::infinity();
    rec.max_u = -std::numeric_limits<double>::infinity();
    for (const auto& barrier : problem.barriers) {
        rec.min_psi.emplace_back(static_cast<std::size_t>(barrier.relative_degree()),
                                 std::numeric_limits<double>::infinity());
    }

    State x = problem.initial_state;
    const int steps = config.step_count();
    rec.steps.reserve(static_cast<std::size_t>(steps));
    for (int k = 0; k < steps; ++k) {
        const double t = k * config.dt;
        StepResult r = step(problem, x, config);
        if (r.u.size() == 0) {
            rec.infeasible_at = t;
            break;
        }
        StepRecord sr;
        sr.t = t;
        sr.state = x;
        sr.u = r.u;
        sr.relax = r.relax;
        for (std::size_t b = 0; b < r.psi.size(); ++b) {
            for (std::size_t i = 0; i < r.psi[b].psi.size(); ++i) {
                rec.min_psi[b][i] = std::min(rec.min_psi[b][i], r.psi[b].psi[i]);
            }
            sr.psi.push_back(std::move(r.psi[b].psi));
        }
        for (const auto& [b, e] : r.events) rec.events.push_back({t, b, e});
        sr.tags = std::move(r.tags);
        sr.slack = std::move(r.slack);
        sr.active = std::move(r.active);
        sr.status = r.qp.status;
        sr.degraded = r.degraded;
        rec.degraded = rec.degraded || r.degraded;
        rec.min_u = std::min(rec.min_u, r.u.minCoeff());
        rec.max_u = std::max(rec.max_u, r.u.maxCoeff());
        rec.steps.push_back(std::move(sr));
        x = std::move(r.next_state);
    }
    rec.final_state = x;
    return rec;
}

InvarianceReport verify_invariance(const TrajectoryRecord& record, const std::vector<HocbfSpec>& barriers,
                                   double tol) {
    InvarianceReport report;
    for (const auto& barrier : barriers) {
        InvarianceReport::Barrier entry;
        entry.min_psi.assign(static_cast<std::size_t>(barrier.relative_degree()),
                             std::numeric_limits<double>::infinity());
        for (std::size_t s = 0; s < record.steps.size(); ++s) {
            const MembershipReport m = check_initial_membership(barrier, record.steps[s].state);
            for (std::size_t k = 0; k < m.psi.size(); ++k) {
                entry.min_psi[k] = std::min(entry.min_psi[k], m.psi[k]);
                if (m.psi[k] < -tol && !entry.first_offending_step) entry.first_offending_step = s;
            }
        }
        report.pass = report.pass && !entry.first_offending_step;
        report.barriers.push_back(std::move(entry));
    }
    return report;
}

}  // namespace hocbf

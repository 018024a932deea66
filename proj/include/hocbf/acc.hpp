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
#ifndef HOCBF_ACC_HPP
#define HOCBF_ACC_HPP

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hocbf/clf.hpp"
#include "hocbf/hocbf.hpp"
#include "hocbf/parallel.hpp"
#include "hocbf/qp.hpp"
#include "hocbf/sim.hpp"

namespace hocbf::acc {

/// Class-K pair used for the gap constraint.
enum class Form {
    sqrt,       ///< alpha1 linear, alpha2 square root
    linear,     ///< both linear
    quadratic,  ///< both quadratic
};

const char* to_string(Form form);
Form parse_form(std::string_view name);

/// Vehicle, scenario and controller parameters. Defaults are the `table1` preset.
struct AccParams {
    double v0_i = 20.0;   ///< initial ego speed, m/s
    double z0 = 100.0;    ///< initial gap, m
    double delta = 10.0;  ///< minimum gap, m
    double v_ip = 13.89;  ///< preceding vehicle speed, m/s
    double mass = 1650.0;
    double grav = 9.81;
    double f0 = 0.1;   ///< N
    double f1 = 5.0;   ///< N s/m
    double f2 = 0.25;  ///< N s^2/m
    double v_max = 30.0;
    double v_min = 0.0;
    double dt = 0.1;
    double eps = 10.0;  ///< CLF rate
    double c_a = 0.4;
    double c_d = 0.4;
    double p_acc = 1.0;
    double v_d = 24.0;  ///< desired speed (not part of the published table)
    double p = 1.0;     ///< penalty shared by both class-K functions
    std::optional<double> p1;  ///< overrides p for alpha1
    std::optional<double> p2;  ///< overrides p for alpha2
    Form form = Form::linear;

    static AccParams table1() { return {}; }

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;

    double penalty1() const { return p1.value_or(p); }
    double penalty2() const { return p2.value_or(p); }
    /// c_a m g, the only control bound placed in the QP.
    double accel_cap() const { return c_a * mass * grav; }
    /// -c_d m g, deliberately left out of the QP.
    double brake_limit() const { return -c_d * mass * grav; }
};

/// (z, v): gap to the preceding vehicle and ego speed.
struct AccState {
    double z = 0.0;
    double v = 0.0;

    State to_state() const;
    static AccState from(const State& x);
};

/// Rolling resistance f0 sgn(v) + f1 v + f2 v^2, with sgn(0) = 0.
double resistance(double v, const AccParams& params);

/// z' = v_ip - v, v' = (u - F_r(v)) / m.
Plant acc_plant(const AccParams& params);

/// Lie jet of b = z - delta (relative degree 2).
LieJetProvider safety_lie_jet(const AccParams& params);

std::vector<ClassK> form_alphas(Form form, double penalty1, double penalty2);

/// Gap HOCBF with the class-K pair of params.form.
HocbfSpec safety_hocbf(const AccParams& params);

/// V = (v - v_d)^2 with epsilon = eps and relaxation weight p_acc.
ClfSpec acc_clf(const AccParams& params);

/// Max-speed and min-speed CBF rows (relative degree 1, unit linear alpha)
/// and the acceleration cap u <= c_a m g, all over u alone.
std::array<LinearControlConstraint, 3> speed_limit_constraints(const AccParams& params, const State& x);

/**
 * The per-step QP over (u, delta_acc): energy objective plus CLF relaxation
 * penalty, with rows in the order clf, max speed, min speed, accel cap,
 * gap HOCBF. There is no braking-bound row.
 */
QpProblem assemble_acc_qp(const AccParams& params, const State& x, PsiPolicy policy = PsiPolicy::clamp);

/// Closed-loop problem from params; the fallback applies full braking.
ControlProblem acc_problem(const AccParams& params);

// Simplified scenario: double integrator z' = v_ip - v, v' = u with quadratic
// class-K functions on both levels. Uses z0, v0_i, delta, v_ip, v_d, eps,
// p_acc and the penalties of AccParams.
Plant sacc_plant(const AccParams& params);
LieJetProvider sacc_lie_jet(const AccParams& params);
HocbfSpec sacc_hocbf(const AccParams& params);
QpProblem assemble_sacc_qp(const AccParams& params, const State& x, PsiPolicy policy = PsiPolicy::clamp);
ControlProblem sacc_problem(const AccParams& params);

enum class Scenario { acc, sacc };

/// Everything one run needs: which scenario, its parameters, and the loop settings.
struct RunSpec {
    Scenario scenario = Scenario::acc;
    AccParams params;
    double horizon = 30.0;
    int substeps = 4;
    bool continue_on_infeasible = false;

    void validate() const;
    /// Loop settings; the control interval is params.dt.
    SimConfig sim_config() const;
    ControlProblem problem() const;
};

/// Bad key or value in a run configuration.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string key, const std::string& message);
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// Names accepted by set_field, in documentation order.
const std::vector<std::string>& field_names();

/// Sets one field from its text form. Throws ConfigError for unknown keys or
/// values that do not parse as the field's type.
void set_field(RunSpec& spec, std::string_view key, std::string_view value);

std::string format_number(double value);

struct RunSummary {
    double min_u = 0.0;
    double min_b = 0.0;
    double min_psi1 = 0.0;
    double max_v = 0.0;
    double terminal_v = 0.0;
    std::optional<double> infeasible_at;
    bool reached_vd = false;        ///< max_t v(t) >= v_d - 0.1
    bool braking_conflict = false;  ///< min_u < -c_d m g, or the run went infeasible
};

RunSummary summarize(const TrajectoryRecord& record, const AccParams& params);

/// First time the gap-HOCBF row is active, and b at that time.
struct Activation {
    double t = 0.0;
    double b = 0.0;
    std::size_t step = 0;
};
std::optional<Activation> first_hocbf_activation(const TrajectoryRecord& record);

/// b = psi_0 at the logged step closest to time t.
double b_at(const TrajectoryRecord& record, double t);

/// Runs base with `field` set to each value; results keep the order of values.
std::vector<RunSummary> sweep(const RunSpec& base, std::string_view field, std::span<const double> values,
                              Execution exec = Execution::parallel);

}  // namespace hocbf::acc

#endif  // HOCBF_ACC_HPP

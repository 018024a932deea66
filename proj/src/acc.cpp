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
#include "hocbf/acc.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

namespace hocbf::acc {

const char* to_string(Form form) {
    switch (form) {
    case Form::sqrt: return "sqrt";
    case Form::linear: return "linear";
    case Form::quadratic: return "quadratic";
    }
    return "unknown";
}

Form parse_form(std::string_view name) {
    if (name == "sqrt") return Form::sqrt;
    if (name == "linear") return Form::linear;
    if (name == "quadratic") return Form::quadratic;
    throw ConfigError("form", "form must be one of sqrt, linear, quadratic (got '" + std::string(name) + "')");
}

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument(message);
}

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

void AccParams::validate() const {
    require(finite_positive(p) && (!p1 || finite_positive(*p1)) && (!p2 || finite_positive(*p2)),
            "penalty must be positive");
    require(finite_positive(mass), "mass must be positive");
    require(finite_positive(grav), "grav must be positive");
    require(finite_positive(f0) && finite_positive(f1) && finite_positive(f2),
            "resistance coefficients f0, f1, f2 must be positive");
    require(finite_positive(dt), "dt must be positive");
    require(finite_positive(eps), "eps must be positive");
    require(finite_positive(c_a) && finite_positive(c_d), "c_a and c_d must be positive");
    require(finite_positive(p_acc), "p_acc must be positive");
    require(finite_positive(delta), "delta must be positive");
    require(std::isfinite(z0) && std::isfinite(v_ip) && std::isfinite(v_d), "z0, v_ip and v_d must be finite");
    require(std::isfinite(v_min) && v_min >= 0.0 && std::isfinite(v_max) && v_max > v_min,
            "speed limits must satisfy 0 <= v_min < v_max");
    require(std::isfinite(v0_i) && v0_i >= v_min && v0_i <= v_max, "v0_i must lie in [v_min, v_max]");
}

State AccState::to_state() const {
    State x(2);
    x << z, v;
    return x;
}

AccState AccState::from(const State& x) {
    if (x.size() != 2) throw std::invalid_argument("ACC state has two entries (z, v)");
    return {x(0), x(1)};
}

double resistance(double v, const AccParams& params) {
    const double sgn = v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
    return params.f0 * sgn + params.f1 * v + params.f2 * v * v;
}

Plant acc_plant(const AccParams& params) {
    Plant plant;
    plant.state_dim = 2;
    plant.control_dim = 1;
    plant.drift = [params](const State& x) {
        Eigen::VectorXd f(2);
        f << params.v_ip - x(1), -resistance(x(1), params) / params.mass;
        return f;
    };
    plant.input_matrix = [params](const State&) {
        Eigen::MatrixXd g(2, 1);
        g << 0.0, 1.0 / params.mass;
        return g;
    };
    return plant;
}

LieJetProvider safety_lie_jet(const AccParams& params) {
    return {2, [params](const State& x) {
                const AccState s = AccState::from(x);
                LieJet lj;
                lj.lie = {s.z - params.delta, params.v_ip - s.v, resistance(s.v, params) / params.mass};
                lj.input_row = Eigen::VectorXd::Constant(1, -1.0 / params.mass);
                return lj;
            }};
}

std::vector<ClassK> form_alphas(Form form, double penalty1, double penalty2) {
    switch (form) {
    case Form::sqrt: return {ClassK::linear(1.0, penalty1), ClassK::power(0.5, penalty2)};
    case Form::linear: return {ClassK::linear(1.0, penalty1), ClassK::linear(1.0, penalty2)};
    case Form::quadratic: return {ClassK::power(2.0, penalty1), ClassK::power(2.0, penalty2)};
    }
    throw std::invalid_argument("unknown class-K form");
}

HocbfSpec safety_hocbf(const AccParams& params) {
    return HocbfSpec(safety_lie_jet(params), form_alphas(params.form, params.penalty1(), params.penalty2()));
}

ClfSpec acc_clf(const AccParams& params) {
    return ClfSpec(
        [params](const State& x) {
            const double v = x(1);
            const double e = v - params.v_d;
            LyapunovEval ev;
            ev.value = e * e;
            ev.lf = -2.0 * e * resistance(v, params) / params.mass;
            ev.lg = Eigen::VectorXd::Constant(1, 2.0 * e / params.mass);
            return ev;
        },
        params.eps, params.p_acc);
}

namespace {

LinearControlConstraint speed_row(const AccParams& params, const State& x, bool upper) {
    LieJetProvider provider{1, [params, upper](const State& s) {
                                const double v = s(1);
                                const double fr = resistance(v, params) / params.mass;
                                LieJet lj;
                                if (upper) {
                                    lj.lie = {params.v_max - v, fr};
                                    lj.input_row = Eigen::VectorXd::Constant(1, -1.0 / params.mass);
                                } else {
                                    lj.lie = {v - params.v_min, -fr};
                                    lj.input_row = Eigen::VectorXd::Constant(1, 1.0 / params.mass);
                                }
                                return lj;
                            }};
    // Outside the speed band the row still has to be produced, so clamp.
    LinearControlConstraint row =
        hocbf_constraint(HocbfSpec(std::move(provider), {ClassK::linear(1.0)}), x, PsiPolicy::clamp);
    row.tag = upper ? ConstraintTag::cbf_speed_max : ConstraintTag::cbf_speed_min;
    return row;
}

}  // namespace

std::array<LinearControlConstraint, 3> speed_limit_constraints(const AccParams& params, const State& x) {
    return {speed_row(params, x, true), speed_row(params, x, false),
            LinearControlConstraint{Eigen::VectorXd::Constant(1, 1.0), params.accel_cap(),
                                    ConstraintTag::control_limit}};
}

QpProblem assemble_acc_qp(const AccParams& params, const State& x, PsiPolicy policy) {
    const double m = params.mass;
    const double fr = resistance(x(1), params);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(2, 2);
    H(0, 0) = 2.0 / (m * m);
    H(1, 1) = 2.0 * params.p_acc;
    Eigen::VectorXd F(2);
    F << -2.0 * fr / (m * m), 0.0;

    std::vector<LinearControlConstraint> rows;
    rows.reserve(5);
    rows.push_back(clf_constraint(acc_clf(params), x));
    for (const auto& row : speed_limit_constraints(params, x)) rows.push_back(row.padded(2));
    rows.push_back(hocbf_constraint(safety_hocbf(params), x, policy).padded(2));
    return QpProblem(std::move(H), std::move(F), std::move(rows));
}

ControlProblem acc_problem(const AccParams& params) {
    params.validate();
    ControlProblem problem;
    problem.plant = acc_plant(params);
    problem.initial_state = AccState{params.z0, params.v0_i}.to_state();
    problem.barriers = {safety_hocbf(params)};
    problem.assemble = [params](const State& x) { return assemble_acc_qp(params, x); };
    problem.fallback = [params](const State&) { return Eigen::VectorXd::Constant(1, params.brake_limit()); };
    return problem;
}

Plant sacc_plant(const AccParams& params) {
    Plant plant;
    plant.state_dim = 2;
    plant.control_dim = 1;
    plant.drift = [params](const State& x) {
        Eigen::VectorXd f(2);
        f << params.v_ip - x(1), 0.0;
        return f;
    };
    plant.input_matrix = [](const State&) {
        Eigen::MatrixXd g(2, 1);
        g << 0.0, 1.0;
        return g;
    };
    return plant;
}

LieJetProvider sacc_lie_jet(const AccParams& params) {
    return {2, [params](const State& x) {
                LieJet lj;
                lj.lie = {x(0) - params.delta, params.v_ip - x(1), 0.0};
                lj.input_row = Eigen::VectorXd::Constant(1, -1.0);
                return lj;
            }};
}

HocbfSpec sacc_hocbf(const AccParams& params) {
    return HocbfSpec(sacc_lie_jet(params), form_alphas(Form::quadratic, params.penalty1(), params.penalty2()));
}

QpProblem assemble_sacc_qp(const AccParams& params, const State& x, PsiPolicy policy) {
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(2, 2);
    H(0, 0) = 2.0;
    H(1, 1) = 2.0 * params.p_acc;
    const ClfSpec clf(
        [params](const State& s) {
            const double e = s(1) - params.v_d;
            return LyapunovEval{e * e, 0.0, Eigen::VectorXd::Constant(1, 2.0 * e)};
        },
        params.eps, params.p_acc);
    std::vector<LinearControlConstraint> rows{clf_constraint(clf, x),
                                              hocbf_constraint(sacc_hocbf(params), x, policy).padded(2)};
    return QpProblem(std::move(H), Eigen::VectorXd::Zero(2), std::move(rows));
}

ControlProblem sacc_problem(const AccParams& params) {
    params.validate();
    ControlProblem problem;
    problem.plant = sacc_plant(params);
    problem.initial_state = AccState{params.z0, params.v0_i}.to_state();
    problem.barriers = {sacc_hocbf(params)};
    problem.assemble = [params](const State& x) { return assemble_sacc_qp(params, x); };
    return problem;
}

void RunSpec::validate() const {
    params.validate();
    sim_config().validate();
}

SimConfig RunSpec::sim_config() const {
    SimConfig cfg;
    cfg.dt = params.dt;
    cfg.horizon = horizon;
    cfg.rk4_substeps = substeps;
    cfg.continue_on_infeasible = continue_on_infeasible;
    return cfg;
}

ControlProblem RunSpec::problem() const {
    validate();
    return scenario == Scenario::acc ? acc_problem(params) : sacc_problem(params);
}

ConfigError::ConfigError(std::string key, const std::string& message)
    : std::invalid_argument(message), key_(std::move(key)) {}

namespace {

double parse_double(std::string_view key, std::string_view text) {
    double value = 0.0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty()) {
        throw ConfigError(std::string(key), "value '" + std::string(text) + "' for '" + std::string(key) +
                                                "' is not a number");
    }
    return value;
}

int parse_int(std::string_view key, std::string_view text) {
    int value = 0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty()) {
        throw ConfigError(std::string(key), "value '" + std::string(text) + "' for '" + std::string(key) +
                                                "' is not an integer");
    }
    return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
    if (text == "1" || text == "true") return true;
    if (text == "0" || text == "false") return false;
    throw ConfigError(std::string(key), "value '" + std::string(text) + "' for '" + std::string(key) +
                                            "' is not a boolean");
}

using Setter = std::function<void(RunSpec&, std::string_view, std::string_view)>;

Setter number(double AccParams::*field) {
    return [field](RunSpec& s, std::string_view k, std::string_view v) { s.params.*field = parse_double(k, v); };
}

Setter optional_number(std::optional<double> AccParams::*field) {
    return [field](RunSpec& s, std::string_view k, std::string_view v) { s.params.*field = parse_double(k, v); };
}

const std::vector<std::pair<std::string, Setter>>& setters() {
    static const std::vector<std::pair<std::string, Setter>> table = {
        {"scenario",
         [](RunSpec& s, std::string_view k, std::string_view v) {
             if (v == "acc") s.scenario = Scenario::acc;
             else if (v == "sacc") s.scenario = Scenario::sacc;
             else throw ConfigError(std::string(k), "scenario must be acc or sacc (got '" + std::string(v) + "')");
         }},
        {"v0_i", number(&AccParams::v0_i)},
        {"z0", number(&AccParams::z0)},
        {"delta", number(&AccParams::delta)},
        {"v_ip", number(&AccParams::v_ip)},
        {"mass", number(&AccParams::mass)},
        {"grav", number(&AccParams::grav)},
        {"f0", number(&AccParams::f0)},
        {"f1", number(&AccParams::f1)},
        {"f2", number(&AccParams::f2)},
        {"v_max", number(&AccParams::v_max)},
        {"v_min", number(&AccParams::v_min)},
        {"dt", number(&AccParams::dt)},
        {"eps", number(&AccParams::eps)},
        {"c_a", number(&AccParams::c_a)},
        {"c_d", number(&AccParams::c_d)},
        {"p_acc", number(&AccParams::p_acc)},
        {"v_d", number(&AccParams::v_d)},
        {"p", number(&AccParams::p)},
        {"p1", optional_number(&AccParams::p1)},
        {"p2", optional_number(&AccParams::p2)},
        {"form", [](RunSpec& s, std::string_view, std::string_view v) { s.params.form = parse_form(v); }},
        {"horizon", [](RunSpec& s, std::string_view k, std::string_view v) { s.horizon = parse_double(k, v); }},
        {"substeps", [](RunSpec& s, std::string_view k, std::string_view v) { s.substeps = parse_int(k, v); }},
        {"continue_on_infeasible",
         [](RunSpec& s, std::string_view k, std::string_view v) { s.continue_on_infeasible = parse_bool(k, v); }},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& field_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, setter] : setters()) out.push_back(name);
        return out;
    }();
    return names;
}

void set_field(RunSpec& spec, std::string_view key, std::string_view value) {
    for (const auto& [name, setter] : setters()) {
        if (name == key) {
            setter(spec, key, value);
            return;
        }
    }
    throw ConfigError(std::string(key), "unknown key '" + std::string(key) + "'");
}

std::string format_number(double value) {
    std::ostringstream os;
    os.precision(17);
    os << value;
    return os.str();
}

RunSummary summarize(const TrajectoryRecord& record, const AccParams& params) {
    RunSummary s;
    constexpr double inf = std::numeric_limits<double>::infinity();
    s.min_b = inf;
    s.min_psi1 = inf;
    s.max_v = -inf;
    s.min_u = record.steps.empty() ? 0.0 : record.min_u;
    for (const auto& step : record.steps) {
        s.min_b = std::min(s.min_b, step.psi.at(0).at(0));
        if (step.psi.at(0).size() > 1) s.min_psi1 = std::min(s.min_psi1, step.psi[0][1]);
        s.max_v = std::max(s.max_v, step.state(1));
    }
    if (record.final_state.size() == 2) s.max_v = std::max(s.max_v, record.final_state(1));
    s.terminal_v = record.final_state.size() == 2 ? record.final_state(1) : 0.0;
    s.infeasible_at = record.infeasible_at;
    s.reached_vd = s.max_v >= params.v_d - 0.1;
    // In the ACC QP the only lower bound on u is the min-speed row, so a run
    // that stops infeasible needed more braking than even that row allows.
    s.braking_conflict =
        record.infeasible_at.has_value() || (!record.steps.empty() && s.min_u < params.brake_limit());
    return s;
}

std::optional<Activation> first_hocbf_activation(const TrajectoryRecord& record) {
    for (std::size_t i = 0; i < record.steps.size(); ++i) {
        const auto& st = record.steps[i];
        for (std::size_t r = 0; r < st.tags.size(); ++r) {
            if (st.tags[r] == ConstraintTag::hocbf_safety && st.active[r]) {
                return Activation{st.t, st.psi.at(0).at(0), i};
            }
        }
    }
    return std::nullopt;
}

double b_at(const TrajectoryRecord& record, double t) {
    if (record.steps.empty()) throw std::out_of_range("empty trajectory");
    auto best = record.steps.begin();
    for (auto it = record.steps.begin(); it != record.steps.end(); ++it) {
        if (std::abs(it->t - t) < std::abs(best->t - t)) best = it;
    }
    return best->psi.at(0).at(0);
}

std::vector<RunSummary> sweep(const RunSpec& base, std::string_view field, std::span<const double> values,
                              Execution exec) {
    std::vector<RunSpec> specs(values.size(), base);
    for (std::size_t i = 0; i < values.size(); ++i) {
        set_field(specs[i], field, format_number(values[i]));
        specs[i].validate();
    }
    std::vector<RunSummary> out(values.size());
    parallel_for(values.size(), exec, [&](std::size_t i) {
        const TrajectoryRecord rec = run(specs[i].problem(), specs[i].sim_config());
        out[i] = summarize(rec, specs[i].params);
    });
    return out;
}

}  // namespace hocbf::acc

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
#include "hocbf/cli.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "hocbf/csv.hpp"

namespace hocbf::cli {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

// Opens `path` for writing, or hands back `fallback` for "-".
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (path != "-") {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open output file '" + path + "'");
            stream_ = &file_;
        }
    }
    std::ostream& stream() { return *stream_; }
    bool is_stdout() const { return stream_ != &file_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

}  // namespace

Assignment parse_assignment(const std::string& text, const std::string& origin) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
        throw acc::ConfigError(trim(text), origin + ": expected key=value, got '" + text + "'");
    }
    Assignment a{trim(std::string_view(text).substr(0, eq)), trim(std::string_view(text).substr(eq + 1)), origin};
    if (a.key.empty()) throw acc::ConfigError("", origin + ": missing key in '" + text + "'");
    return a;
}

std::vector<Assignment> parse_config(std::istream& in, const std::string& name) {
    std::vector<Assignment> out;
    std::string line;
    for (std::size_t n = 1; std::getline(in, line); ++n) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        out.push_back(parse_assignment(line, name + ":" + std::to_string(n)));
    }
    return out;
}

Sweep parse_sweep(const std::string& text) {
    const Assignment a = parse_assignment(text, "--sweep");
    Sweep sweep{a.key, {}};
    std::string_view rest = a.value;
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string cell = trim(rest.substr(0, comma));
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
        if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
            throw acc::ConfigError(a.key, "--sweep: value '" + cell + "' for '" + a.key + "' is not a number");
        }
        sweep.values.push_back(value);
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    if (sweep.values.empty()) throw acc::ConfigError(a.key, "--sweep: no values given for '" + a.key + "'");
    return sweep;
}

acc::RunSpec build_spec(const std::string& preset, const std::vector<Assignment>& assignments) {
    if (preset != "table1") throw acc::ConfigError("preset", "unknown preset '" + preset + "'");
    acc::RunSpec spec;
    spec.params = acc::AccParams::table1();
    for (const auto& a : assignments) {
        try {
            acc::set_field(spec, a.key, a.value);
        } catch (const acc::ConfigError& e) {
            throw acc::ConfigError(a.key, a.origin + ": " + e.what());
        }
    }
    return spec;
}

int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err) {
    TrajectoryRecord record;
    try {
        record = run(config.spec.problem(), config.spec.sim_config());
    } catch (const InitialMembershipError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    }

    try {
        Sink sink(config.output, out);
        csv::write_trajectory(sink.stream(), record);
        std::ostream& summary = sink.is_stdout() ? err : out;
        const acc::RunSummary s = acc::summarize(record, config.spec.params);
        summary << "summary: steps=" << record.steps.size() << " min_u=" << acc::format_number(s.min_u)
                << " min_b=" << acc::format_number(s.min_b) << " min_psi1=" << acc::format_number(s.min_psi1)
                << " terminal_v=" << acc::format_number(s.terminal_v)
                << (record.degraded ? " degraded=1" : "") << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    }

    if (record.infeasible_at) {
        err << "infeasible: QP has no solution at t=" << acc::format_number(*record.infeasible_at) << '\n';
        return kInfeasible;
    }
    return kOk;
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
    if (!config.sweep) {
        err << "error: sweep needs --sweep field=v1,v2,...\n";
        return kConfigError;
    }
    std::vector<acc::RunSummary> rows;
    try {
        rows = acc::sweep(config.spec, config.sweep->field, config.sweep->values,
                          config.serial ? Execution::serial : Execution::parallel);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    }
    try {
        Sink sink(config.output, out);
        csv::write_sweep(sink.stream(), config.sweep->values, rows);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    }
    return kOk;
}

int cmd_verify(const std::string& path, double tol, std::ostream& out, std::ostream& err) {
    std::ifstream in(path);
    if (!in) {
        err << "error: cannot open '" << path << "'\n";
        return kConfigError;
    }
    std::vector<csv::TrajectoryRow> rows;
    try {
        rows = csv::read_trajectory(in);
    } catch (const csv::CsvError& e) {
        err << "error: " << path << ": " << e.what() << '\n';
        return kConfigError;
    }
    if (rows.empty()) {
        err << "error: " << path << ": no data rows\n";
        return kConfigError;
    }

    double min_b = rows[0].b;
    double min_psi1 = rows[0].psi1;
    std::optional<std::size_t> offending;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        min_b = std::min(min_b, rows[i].b);
        min_psi1 = std::min(min_psi1, rows[i].psi1);
        if (!offending && (rows[i].b < -tol || rows[i].psi1 < -tol)) offending = i;
    }
    out << "min_b=" << acc::format_number(min_b) << " min_psi1=" << acc::format_number(min_psi1)
        << " tol=" << acc::format_number(tol) << '\n';
    if (tol < 0.0) {
        out << "FAIL: negative tolerance is an unattainable bar\n";
        return kInvarianceFailure;
    }
    if (offending) {
        const auto& r = rows[*offending];
        // +2: one-based, after the header line.
        out << "FAIL: data row " << *offending + 1 << " (line " << *offending + 2
            << ", t=" << acc::format_number(r.t) << ") has b=" << acc::format_number(r.b)
            << " psi1=" << acc::format_number(r.psi1) << '\n';
        return kInvarianceFailure;
    }
    out << "PASS\n";
    return kOk;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"High-order control barrier function toolkit"};
    app.require_subcommand(1);

    std::string scenario;
    std::string preset = "table1";
    std::string config_path;
    std::vector<std::string> sets;
    std::string output = "-";
    std::string sweep_text;
    bool serial = false;
    std::string verify_path;
    double tol = 1e-6;

    auto add_run_options = [&](CLI::App* sub) {
        sub->add_option("--scenario", scenario, "acc or sacc");
        sub->add_option("--preset", preset, "parameter preset (table1)");
        sub->add_option("--config", config_path, "key=value configuration file");
        sub->add_option("--set", sets, "override key=value (repeatable)")->take_all();
        sub->add_option("--output", output, "output CSV path, '-' for stdout");
    };
    CLI::App* simulate = app.add_subcommand("simulate", "run one closed-loop simulation");
    add_run_options(simulate);
    CLI::App* sweep = app.add_subcommand("sweep", "run one simulation per value of a numeric field");
    add_run_options(sweep);
    sweep->add_option("--sweep", sweep_text, "field=v1,v2,...")->required();
    sweep->add_flag("--serial", serial, "run sweep points one after another");
    CLI::App* verify = app.add_subcommand("verify", "check b and psi1 of a trajectory CSV");
    verify->add_option("csv", verify_path, "trajectory CSV written by simulate")->required();
    verify->add_option("--tol", tol, "allowed negative excursion");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kConfigError;
    }

    if (verify->parsed()) return cmd_verify(verify_path, tol, out, err);

    RunConfig config;
    try {
        std::vector<Assignment> assignments;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw acc::ConfigError("config", "cannot open config file '" + config_path + "'");
            assignments = parse_config(in, config_path);
        }
        if (!scenario.empty()) assignments.push_back({"scenario", scenario, "--scenario"});
        for (const auto& s : sets) assignments.push_back(parse_assignment(s, "--set"));
        config.spec = build_spec(preset, assignments);
        config.spec.validate();
        config.output = output;
        config.serial = serial;
        if (sweep->parsed()) config.sweep = parse_sweep(sweep_text);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    }
    return simulate->parsed() ? cmd_simulate(config, out, err) : cmd_sweep(config, out, err);
}

}  // namespace hocbf::cli

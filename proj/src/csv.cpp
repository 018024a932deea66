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
#include "hocbf/csv.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace hocbf::csv {

CsvError::CsvError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

double row_slack(const StepRecord& step, ConstraintTag tag, bool* active) {
    for (std::size_t i = 0; i < step.tags.size(); ++i) {
        if (step.tags[i] == tag) {
            *active = step.active[i];
            return step.slack[i];
        }
    }
    *active = false;
    return 0.0;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        out.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

double parse_cell(std::string_view cell, std::size_t line, const char* column) {
    double value = 0.0;
    const char* end = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(cell.data(), end, value);
    if (cell.empty() || ec != std::errc() || ptr != end) {
        throw CsvError(line, std::string("column '") + column + "' is not a number: '" + std::string(cell) + "'");
    }
    return value;
}

bool parse_flag(std::string_view cell, std::size_t line, const char* column) {
    if (cell == "1") return true;
    if (cell == "0") return false;
    throw CsvError(line, std::string("column '") + column + "' must be 0 or 1");
}

}  // namespace

void write_trajectory(std::ostream& out, const TrajectoryRecord& record) {
    out << kTrajectoryHeader << '\n';
    std::ostringstream line;
    line.precision(17);
    for (const auto& step : record.steps) {
        bool active_hocbf = false;
        bool active_clf = false;
        const double hocbf_slack = row_slack(step, ConstraintTag::hocbf_safety, &active_hocbf);
        const double clf_slack = row_slack(step, ConstraintTag::clf, &active_clf);
        const double psi1 = step.psi.at(0).size() > 1 ? step.psi[0][1] : 0.0;
        line.str("");
        line << step.t << ',' << step.state(0) << ',' << step.state(1) << ',' << step.u(0) << ','
             << (step.relax.size() ? step.relax(0) : 0.0) << ',' << step.psi.at(0).at(0) << ',' << psi1 << ','
             << hocbf_slack << ',' << clf_slack << ',' << (active_hocbf ? 1 : 0) << ',' << (active_clf ? 1 : 0)
             << ',' << (step.degraded ? "degraded" : to_string(step.status)) << '\n';
        out << line.str();
    }
}

std::vector<TrajectoryRow> read_trajectory(std::istream& in) {
    std::string text;
    std::size_t line_no = 1;
    if (!std::getline(in, text)) throw CsvError(line_no, "empty file");
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text != kTrajectoryHeader) throw CsvError(line_no, "unexpected header '" + text + "'");

    std::vector<TrajectoryRow> rows;
    while (std::getline(in, text)) {
        ++line_no;
        if (!text.empty() && text.back() == '\r') text.pop_back();
        if (text.empty()) continue;
        const auto cells = split(text);
        if (cells.size() != 12) {
            throw CsvError(line_no, "expected 12 columns, found " + std::to_string(cells.size()));
        }
        TrajectoryRow r;
        r.t = parse_cell(cells[0], line_no, "t");
        r.z = parse_cell(cells[1], line_no, "z");
        r.v = parse_cell(cells[2], line_no, "v");
        r.u = parse_cell(cells[3], line_no, "u");
        r.delta_acc = parse_cell(cells[4], line_no, "delta_acc");
        r.b = parse_cell(cells[5], line_no, "b");
        r.psi1 = parse_cell(cells[6], line_no, "psi1");
        r.hocbf_slack = parse_cell(cells[7], line_no, "hocbf_slack");
        r.clf_slack = parse_cell(cells[8], line_no, "clf_slack");
        r.active_hocbf = parse_flag(cells[9], line_no, "active_hocbf");
        r.active_clf = parse_flag(cells[10], line_no, "active_clf");
        r.qp_status = std::string(cells[11]);
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_sweep(std::ostream& out, std::span<const double> values, std::span<const acc::RunSummary> rows) {
    out << kSweepHeader << '\n';
    std::ostringstream line;
    line.precision(17);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        line.str("");
        line << values[i] << ',' << r.min_u << ',' << r.min_b << ',' << r.min_psi1 << ',';
        if (r.infeasible_at) line << *r.infeasible_at;
        line << ',' << (r.reached_vd ? 1 : 0) << ',' << (r.braking_conflict ? 1 : 0) << '\n';
        out << line.str();
    }
}

}  // namespace hocbf::csv

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
#ifndef HOCBF_CSV_HPP
#define HOCBF_CSV_HPP

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hocbf/acc.hpp"
#include "hocbf/sim.hpp"

namespace hocbf::csv {

inline constexpr const char* kTrajectoryHeader =
    "t,z,v,u,delta_acc,b,psi1,hocbf_slack,clf_slack,active_hocbf,active_clf,qp_status";
inline constexpr const char* kSweepHeader = "value,min_u,min_b,min_psi1,infeasible_at,reached_vd,braking_conflict";

class CsvError : public std::runtime_error {
public:
    CsvError(std::size_t line, const std::string& message);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

struct TrajectoryRow {
    double t = 0.0;
    double z = 0.0;
    double v = 0.0;
    double u = 0.0;
    double delta_acc = 0.0;
    double b = 0.0;
    double psi1 = 0.0;
    double hocbf_slack = 0.0;
    double clf_slack = 0.0;
    bool active_hocbf = false;
    bool active_clf = false;
    std::string qp_status;
};

/// One line per logged step, 17 significant digits.
void write_trajectory(std::ostream& out, const TrajectoryRecord& record);

/// Parses what write_trajectory produced; the header must match exactly.
std::vector<TrajectoryRow> read_trajectory(std::istream& in);

void write_sweep(std::ostream& out, std::span<const double> values, std::span<const acc::RunSummary> rows);

}  // namespace hocbf::csv

#endif  // HOCBF_CSV_HPP

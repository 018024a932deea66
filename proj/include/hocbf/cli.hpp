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
#ifndef HOCBF_CLI_HPP
#define HOCBF_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hocbf/acc.hpp"

namespace hocbf::cli {

/// Process exit codes shared by all subcommands.
enum ExitCode : int {
    kOk = 0,
    kConfigError = 1,
    kInfeasible = 2,
    kInvarianceFailure = 3,
};

struct Sweep {
    std::string field;
    std::vector<double> values;
};

struct RunConfig {
    acc::RunSpec spec;
    std::string output = "-";  ///< "-" writes to stdout
    std::optional<Sweep> sweep;
    bool serial = false;
};

/// One `key = value` assignment with where it came from, for diagnostics.
struct Assignment {
    std::string key;
    std::string value;
    std::string origin;
};

/// Parses a flat config file: `key = value` per line, `#` comments, blank
/// lines ignored. Throws acc::ConfigError whose message names the line.
std::vector<Assignment> parse_config(std::istream& in, const std::string& name);

/// Parses `key=value`.
Assignment parse_assignment(const std::string& text, const std::string& origin);

/// `field=v1,v2,...`
Sweep parse_sweep(const std::string& text);

/// Applies the named preset (only `table1` exists) then the assignments in order.
acc::RunSpec build_spec(const std::string& preset, const std::vector<Assignment>& assignments);

int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& path, double tol, std::ostream& out, std::ostream& err);

/// Entry point behind the `hocbf` executable.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hocbf::cli

#endif  // HOCBF_CLI_HPP

/*
   Copyright 2026 The sublevel-kit Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slk/budget.hpp"

namespace slk {

enum class Command {
    volume,
    area,
    glint,
    check_main,
    check_coarea,
    check_piecewise,
    check_dilation,
    loja_fit,
    report,
};

enum class OutputFormat { csv, json, both };

/// Explicit list "a,b,c" or range "[lin:|log:]lo:hi:count".
struct LevelSpec {
    std::vector<double> explicit_levels;
    double lo = 0.0;
    double hi = 0.0;
    int count = 0;
    bool log = false;

    std::vector<double> resolve() const;
};

struct RunConfig {
    Command command = Command::report;
    std::string field_id;
    std::optional<LevelSpec> levels;
    Budget budget;
    std::string out_prefix = "slk_out";
    OutputFormat format = OutputFormat::both;
    int threads = 0;
    /// glint / check-coarea density name.
    std::string density;
    /// "mesh", "shell_mc", "grid" or "mc"; empty selects the default.
    std::string method;
    /// report: comma-separated substrings matched against corpus ids; empty
    /// selects the whole corpus.
    std::optional<std::string> filter;
};

Command parse_command(const std::string& name);
const char* to_string(Command c);
LevelSpec parse_levels(const std::string& text);
/// "N" (sample cap) or "samples=N,res2=R,res3=R,resn=R".
void apply_budget(const std::string& text, Budget& budget);
OutputFormat parse_format(const std::string& name);

/// Sets one key of a config (keys: command, field, levels, budget, seed,
/// threads, out, format, density, method, filter).
void set_config_value(RunConfig& config, const std::string& key, const std::string& value);
/// Reads "key = value" lines; '#' starts a comment.
void load_config_file(RunConfig& config, const std::string& path);

struct ReportRow {
    std::string field;
    std::string check;
    double discrepancy = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
};

struct RunResult {
    /// 0 all checks within tolerance, 1 check failure, 2 usage/config error.
    int exit_code = 0;
    std::string message;
    std::vector<std::string> files;
    std::vector<ReportRow> rows;
};

/// Runs the consolidated acceptance checks over the (filtered) corpus. A
/// check that throws is recorded as a failing row.
std::vector<ReportRow> run_report(const Budget& budget,
                                  const std::optional<std::string>& filter = std::nullopt);

/// Dispatches one command, writes <out>.csv and/or <out>.json, and never
/// throws: configuration errors map to exit code 2.
RunResult run(const RunConfig& config);

} // namespace slk

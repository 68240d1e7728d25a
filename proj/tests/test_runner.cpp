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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "slk/error.hpp"
#include "slk/runner.hpp"

using namespace slk;
namespace fs = std::filesystem;

namespace {

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode{};
}

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "slk_runner_test";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("level specifications") {
    const auto lin = parse_levels("0.5:1.5:21").resolve();
    REQUIRE(lin.size() == 21);
    CHECK(lin[10] == doctest::Approx(1.0));
    const auto lg = parse_levels("log:0.01:0.1:15").resolve();
    REQUIRE(lg.size() == 15);
    CHECK(lg.back() == doctest::Approx(0.1));
    const auto ex = parse_levels("0.5, 1, 1.5").resolve();
    CHECK(ex == std::vector<double>{0.5, 1.0, 1.5});
    for (const char* bad : {"", "1:2", "a:b:3", "log:0:1:5", "1,,2", "lin:1:2:x"}) {
        CAPTURE(bad);
        CHECK(code_of([&] { parse_levels(bad); }) == ErrorCode::parameter);
    }
}

TEST_CASE("budget specifications") {
    Budget b;
    apply_budget("5000", b);
    CHECK(b.samples == 5000);
    apply_budget("samples=20000,res2=128,res3=64,resn=20", b);
    CHECK(b.samples == 20000);
    CHECK(b.resolution(2) == 128);
    CHECK(b.resolution(3) == 64);
    CHECK(b.resolution(5) == 20);
    apply_budget("0", b);
    CHECK(code_of([&] { b.validate(); }) == ErrorCode::budget);
    CHECK(code_of([&] { apply_budget("bogus=1", b); }) == ErrorCode::parameter);
    CHECK(code_of([&] { apply_budget("12x", b); }) == ErrorCode::parameter);
}

TEST_CASE("config keys and files") {
    RunConfig c;
    set_config_value(c, "command", "loja-fit");
    CHECK(c.command == Command::loja_fit);
    set_config_value(c, "seed", "7");
    CHECK(c.budget.seed == 7u);
    set_config_value(c, "format", "json");
    CHECK(c.format == OutputFormat::json);
    CHECK(code_of([&] { set_config_value(c, "colour", "red"); }) == ErrorCode::parameter);
    CHECK(code_of([&] { set_config_value(c, "command", "plot"); }) == ErrorCode::parameter);
    CHECK(code_of([&] { set_config_value(c, "format", "xml"); }) == ErrorCode::parameter);

    const fs::path file = scratch_dir() / "config.txt";
    std::ofstream(file) << "# sweep\nfield = squared_norm:2\nlevels = 1:2:5  # five\n\nseed=99\n";
    RunConfig d;
    load_config_file(d, file.string());
    CHECK(d.field_id == "squared_norm:2");
    CHECK(d.levels->resolve().size() == 5);
    CHECK(d.budget.seed == 99u);
    CHECK(code_of([&] { load_config_file(d, (scratch_dir() / "missing.txt").string()); }) == ErrorCode::io);
    std::ofstream(file) << "field squared_norm:2\n";
    CHECK(code_of([&] { load_config_file(d, file.string()); }) == ErrorCode::parameter);
}

TEST_CASE("run maps errors to exit codes") {
    RunConfig c;
    c.command = Command::volume;
    c.field_id = "unknown:9";
    c.out_prefix = (scratch_dir() / "bad").string();
    RunResult r = run(c);
    CHECK(r.exit_code == 2);
    CHECK(r.message.find("euclidean_norm:2") != std::string::npos);
    c.field_id = "squared_norm:2";
    c.levels = parse_levels("1,100");
    CHECK(run(c).exit_code == 2);
    c.levels.reset();
    c.out_prefix = "/nonexistent-dir/x";
    CHECK(run(c).exit_code == 2);
}

TEST_CASE("volume command writes CSV and JSON") {
    RunConfig c;
    c.command = Command::volume;
    c.field_id = "squared_norm:2";
    c.levels = parse_levels("1:3:5");
    c.method = "mc";
    c.budget.samples = 100'000;
    c.out_prefix = (scratch_dir() / "vol").string();
    const RunResult r = run(c);
    CHECK(r.exit_code == 0);
    REQUIRE(r.files.size() == 2);
    const std::string csv = slurp(c.out_prefix + ".csv");
    CHECK(csv.rfind("t,V,V_err,dVdt,dVdt_err\n", 0) == 0);
    const auto doc = nlohmann::json::parse(slurp(c.out_prefix + ".json"));
    CHECK(doc["rows"].size() == 5);
    CHECK(doc["seed"] == 42);
    // Identical configuration gives identical bytes.
    const std::string first = slurp(c.out_prefix + ".json");
    run(c);
    CHECK(slurp(c.out_prefix + ".json") == first);
    c.budget.seed = 43;
    run(c);
    CHECK(slurp(c.out_prefix + ".json") != first);
}

TEST_CASE("loja-fit command reports the exponent") {
    RunConfig c;
    c.command = Command::loja_fit;
    c.field_id = "squared_norm:2";
    c.levels = parse_levels("log:0.01:0.1:15");
    c.format = OutputFormat::json;
    c.out_prefix = (scratch_dir() / "fit").string();
    const RunResult r = run(c);
    CHECK(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(slurp(c.out_prefix + ".json"));
    CHECK(doc["nu"].get<double>() == doctest::Approx(0.5).epsilon(0.1));
    CHECK(!fs::exists(c.out_prefix + ".csv"));
}

TEST_CASE("report edge cases") {
    RunConfig c;
    c.command = Command::report;
    c.filter = "no-such-field";
    c.out_prefix = (scratch_dir() / "empty").string();
    RunResult r = run(c);
    CHECK(r.exit_code == 0);
    CHECK(r.rows.empty());
    CHECK(slurp(c.out_prefix + ".csv") == "field,check,discrepancy,tolerance,pass,note\n");

    c.filter.reset();
    apply_budget("0", c.budget);
    c.out_prefix = (scratch_dir() / "zero").string();
    r = run(c);
    CHECK(r.exit_code == 1);
    REQUIRE(!r.rows.empty());
    for (const auto& row : r.rows) {
        CHECK(!row.pass);
        CHECK(row.note.find("budget") != std::string::npos);
    }
}

TEST_CASE("report on one field") {
    RunConfig c;
    c.command = Command::report;
    c.filter = "weighted_l1:2";
    c.out_prefix = (scratch_dir() / "one").string();
    const RunResult r = run(c);
    bool saw_count = false;
    for (const auto& row : r.rows) {
        CHECK(row.field == "weighted_l1:2");
        saw_count = saw_count || row.check == "component_count";
    }
    CHECK(saw_count);
    const auto doc = nlohmann::json::parse(slurp(c.out_prefix + ".json"));
    CHECK(doc["rows"].size() == r.rows.size());
}

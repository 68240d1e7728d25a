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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

fs::path work_dir() {
    const fs::path dir = fs::temp_directory_path() / "slk_cli_test";
    fs::create_directories(dir);
    return dir;
}

int run_cli(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + "\"" SLK_CLI_PATH "\" " + args +
                            " >" + (work_dir() / "stdout.txt").string() + " 2>" +
                            (work_dir() / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string out(const std::string& name) { return (work_dir() / name).string(); }

} // namespace

TEST_CASE("unknown field exits with 2 and lists the corpus") {
    CHECK(run_cli("volume unknown:9 --out " + out("u")) == 2);
    CHECK(slurp(work_dir() / "stderr.txt").find("euclidean_norm:3") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli("") == 2);
    CHECK(run_cli("frobnicate") == 2);
    CHECK(run_cli("volume") == 2);
    CHECK(run_cli("volume squared_norm:2 --levels 1:2") == 2);
    CHECK(run_cli("volume squared_norm:2 --format xml") == 2);
    CHECK(run_cli("volume squared_norm:2 --config " + out("missing.cfg")) == 2);
    CHECK(run_cli("--help") == 0);
}

TEST_CASE("check-main on the sphere") {
    CHECK(run_cli("check-main euclidean_norm:3 --levels 0.5:1.5:21 --out " + out("cm")) == 0);
    std::istringstream csv(slurp(out("cm") + ".csv"));
    std::string header;
    std::getline(csv, header);
    CHECK(header.rfind("t,Vprime,A,grad_norm_xi,residual", 0) == 0);
    int rows = 0;
    for (std::string line; std::getline(csv, line);) ++rows;
    CHECK(rows == 21);
}

TEST_CASE("loja-fit JSON") {
    CHECK(run_cli("loja-fit squared_norm:2 --levels log:0.01:0.1:15 --format json --out " + out("lf")) == 0);
    const auto doc = nlohmann::json::parse(slurp(out("lf") + ".json"));
    CHECK(std::abs(doc["nu"].get<double>() - 0.5) <= 0.05);
}

TEST_CASE("seed precedence") {
    const std::string base = "volume squared_norm:2 --method mc --levels 1:3:5 --format json ";
    REQUIRE(run_cli(base + "--out " + out("s_default")) == 0);
    REQUIRE(run_cli(base + "--out " + out("s_env"), "SUBLEVEL_KIT_SEED=7") == 0);
    REQUIRE(run_cli(base + "--seed 7 --out " + out("s_flag")) == 0);
    std::ofstream(out("seed.cfg")) << "seed = 9\n";
    REQUIRE(run_cli(base + "--config " + out("seed.cfg") + " --out " + out("s_cfg"), "SUBLEVEL_KIT_SEED=7") == 0);
    REQUIRE(run_cli(base + "--config " + out("seed.cfg") + " --seed 7 --out " + out("s_both")) == 0);
    auto seed = [](const std::string& p) { return nlohmann::json::parse(slurp(p + ".json"))["seed"].get<int>(); };
    CHECK(seed(out("s_default")) == 42);
    CHECK(seed(out("s_env")) == 7);
    CHECK(seed(out("s_flag")) == 7);
    CHECK(seed(out("s_cfg")) == 9);
    CHECK(seed(out("s_both")) == 7);
    CHECK(slurp(out("s_env") + ".json") == slurp(out("s_flag") + ".json"));
    CHECK(slurp(out("s_env") + ".json") != slurp(out("s_default") + ".json"));
}

TEST_CASE("report filter and degenerate budget") {
    CHECK(run_cli("report --filter nothing-matches --out " + out("r_empty")) == 0);
    CHECK(slurp(out("r_empty") + ".csv") == "field,check,discrepancy,tolerance,pass,note\n");
    CHECK(run_cli("report --budget 0 --out " + out("r_zero")) == 1);
    const auto doc = nlohmann::json::parse(slurp(out("r_zero") + ".json"));
    REQUIRE(!doc["rows"].empty());
    for (const auto& row : doc["rows"]) CHECK(row["pass"] == false);
}

TEST_CASE("thread count does not change results") {
    const std::string base = "area anisotropic_quadratic:3 --method shell_mc --levels 1,2 --budget 200000 --format csv ";
    REQUIRE(run_cli(base + "--threads 1 --out " + out("t1")) == 0);
    REQUIRE(run_cli(base + "--threads 3 --out " + out("t3")) == 0);
    CHECK(slurp(out("t1") + ".csv") == slurp(out("t3") + ".csv"));
}

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

#include <cstdio>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "slk/slk.h"

namespace {

struct Options {
    std::string field;
    std::string levels;
    std::string budget;
    std::string seed;
    std::string threads;
    std::string out;
    std::string format;
    std::string config;
    std::string density;
    std::string method;
    std::string filter;
};

const char* const kCommands[] = {"volume",          "area",           "glint",
                                 "check-main",      "check-coarea",   "check-piecewise",
                                 "check-dilation",  "loja-fit",       "report"};

int fail_usage(const std::string& msg) {
    std::fprintf(stderr, "slk: %s\n", msg.c_str());
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sublevel-set volume, fiber area and Gelfand-Leray checks"};
    app.require_subcommand(1, 1);
    Options opt;

    for (const char* name : kCommands) {
        const std::string cmd = name;
        CLI::App* sub = app.add_subcommand(cmd, "run " + cmd);
        if (cmd != "report") sub->add_option("field", opt.field, "corpus field id, e.g. squared_norm:2");
        sub->add_option("--levels", opt.levels, "a,b,c or [lin:|log:]lo:hi:count");
        sub->add_option("--budget", opt.budget, "sample cap N or samples=N,res2=R,res3=R,resn=R");
        sub->add_option("--seed", opt.seed, "RNG seed (fallback: SUBLEVEL_KIT_SEED, then 42)");
        sub->add_option("--threads", opt.threads, "worker threads (0: hardware)");
        sub->add_option("--out", opt.out, "output path prefix");
        sub->add_option("--format", opt.format, "csv, json or both");
        sub->add_option("--config", opt.config, "key=value config file");
        sub->add_option("--density", opt.density, "one, zero, x0, bump, tilted_bump");
        sub->add_option("--method", opt.method, "mesh, shell_mc, grid or mc");
        if (cmd == "report") sub->add_option("--filter", opt.filter, "comma-separated id substrings");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    if (command != "report" && opt.field.empty()) return fail_usage(command + ": missing field id");

    slk_run_config* cfg = nullptr;
    if (slk_run_config_create(&cfg) != SLK_OK) return fail_usage(slk_last_error());

    // Precedence: flag > config file > environment > default.
    std::vector<std::pair<std::string, std::string>> settings;
    if (const char* env = std::getenv("SUBLEVEL_KIT_SEED"); env && *env) settings.emplace_back("seed", env);
    settings.emplace_back("command", command);
    bool ok = true;
    for (const auto& [k, v] : settings)
        if (slk_run_config_set(cfg, k.c_str(), v.c_str()) != SLK_OK) ok = false;
    if (ok && !opt.config.empty() && slk_run_config_load_file(cfg, opt.config.c_str()) != SLK_OK) ok = false;

    const std::pair<const char*, const std::string*> flags[] = {
        {"field", &opt.field},     {"levels", &opt.levels},   {"budget", &opt.budget},
        {"seed", &opt.seed},       {"threads", &opt.threads}, {"out", &opt.out},
        {"format", &opt.format},   {"density", &opt.density}, {"method", &opt.method},
        {"filter", &opt.filter},
    };
    for (const auto& [key, value] : flags) {
        if (!ok) break;
        if (value->empty()) continue;
        if (slk_run_config_set(cfg, key, value->c_str()) != SLK_OK) ok = false;
    }
    if (!ok) {
        const int code = fail_usage(slk_last_error());
        slk_run_config_destroy(cfg);
        return code;
    }

    const int code = slk_run(cfg);
    slk_run_config_destroy(cfg);
    std::fprintf(code == 0 ? stdout : stderr, "%s: %s\n", command.c_str(), slk_last_error());
    return code;
}

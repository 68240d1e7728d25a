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

#include "slk/runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "slk/asymptotics.hpp"
#include "slk/error.hpp"
#include "slk/field.hpp"
#include "slk/format.hpp"
#include "slk/gelfand_leray.hpp"
#include "slk/geometry.hpp"
#include "slk/parallel.hpp"
#include "slk/piecewise.hpp"
#include "slk/volume.hpp"

namespace slk {

using nlohmann::json;

namespace {

struct CommandName {
    Command command;
    const char* name;
};

constexpr CommandName kCommands[] = {
    {Command::volume, "volume"},
    {Command::area, "area"},
    {Command::glint, "glint"},
    {Command::check_main, "check-main"},
    {Command::check_coarea, "check-coarea"},
    {Command::check_piecewise, "check-piecewise"},
    {Command::check_dilation, "check-dilation"},
    {Command::loja_fit, "loja-fit"},
    {Command::report, "report"},
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(trim(cur));
    return out;
}

double to_double(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        fail(ErrorCode::parameter, "malformed " + what + " '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v))
        fail(ErrorCode::parameter, "malformed " + what + " '" + s + "'");
    return v;
}

long long to_integer(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        fail(ErrorCode::parameter, "malformed " + what + " '" + s + "'");
    }
    if (used != s.size()) fail(ErrorCode::parameter, "malformed " + what + " '" + s + "'");
    return v;
}

int to_int(const std::string& s, const std::string& what) {
    const long long v = to_integer(s, what);
    if (v < -(1LL << 30) || v > (1LL << 30)) fail(ErrorCode::parameter, what + " out of range");
    return static_cast<int>(v);
}

} // namespace

Command parse_command(const std::string& name) {
    for (const auto& c : kCommands)
        if (name == c.name) return c.command;
    fail(ErrorCode::parameter, "unknown command '" + name + "'");
}

const char* to_string(Command c) {
    for (const auto& k : kCommands)
        if (k.command == c) return k.name;
    return "?";
}

std::vector<double> LevelSpec::resolve() const {
    if (!explicit_levels.empty()) return explicit_levels;
    return log ? log_levels(lo, hi, count) : linear_levels(lo, hi, count);
}

LevelSpec parse_levels(const std::string& text) {
    LevelSpec spec;
    std::string body = trim(text);
    if (body.empty()) fail(ErrorCode::parameter, "empty level specification");
    if (body.find(':') == std::string::npos) {
        for (const auto& part : split(body, ',')) spec.explicit_levels.push_back(to_double(part, "level"));
        return spec;
    }
    if (body.rfind("log:", 0) == 0) {
        spec.log = true;
        body = body.substr(4);
    } else if (body.rfind("lin:", 0) == 0) {
        body = body.substr(4);
    }
    const auto parts = split(body, ':');
    if (parts.size() != 3) fail(ErrorCode::parameter, "level range must be [lin:|log:]lo:hi:count");
    spec.lo = to_double(parts[0], "level");
    spec.hi = to_double(parts[1], "level");
    spec.count = to_int(parts[2], "level count");
    spec.resolve();  // validates
    return spec;
}

void apply_budget(const std::string& text, Budget& budget) {
    const std::string body = trim(text);
    if (body.find('=') == std::string::npos) {
        const long long v = to_integer(body, "budget");
        budget.samples = v;
        if (v <= 0) {
            budget.resolution_2d = budget.resolution_3d = budget.resolution_nd = 0;
        }
        return;
    }
    for (const auto& item : split(body, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) fail(ErrorCode::parameter, "malformed budget item '" + item + "'");
        const std::string key = trim(item.substr(0, eq));
        const std::string value = trim(item.substr(eq + 1));
        if (key == "samples")
            budget.samples = to_integer(value, "budget samples");
        else if (key == "res2")
            budget.resolution_2d = to_int(value, "budget res2");
        else if (key == "res3")
            budget.resolution_3d = to_int(value, "budget res3");
        else if (key == "resn")
            budget.resolution_nd = to_int(value, "budget resn");
        else
            fail(ErrorCode::parameter, "unknown budget key '" + key + "'");
    }
}

OutputFormat parse_format(const std::string& name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    if (name == "both") return OutputFormat::both;
    fail(ErrorCode::parameter, "unknown format '" + name + "' (csv, json, both)");
}

void set_config_value(RunConfig& config, const std::string& key, const std::string& raw) {
    const std::string value = trim(raw);
    if (key == "command")
        config.command = parse_command(value);
    else if (key == "field")
        config.field_id = value;
    else if (key == "levels")
        config.levels = parse_levels(value);
    else if (key == "budget")
        apply_budget(value, config.budget);
    else if (key == "seed")
        config.budget.seed = static_cast<std::uint64_t>(to_integer(value, "seed"));
    else if (key == "threads")
        config.threads = to_int(value, "threads");
    else if (key == "out")
        config.out_prefix = value;
    else if (key == "format")
        config.format = parse_format(value);
    else if (key == "density")
        config.density = value;
    else if (key == "method")
        config.method = value;
    else if (key == "filter")
        config.filter = value;
    else
        fail(ErrorCode::parameter, "unknown config key '" + key + "'");
}

void load_config_file(RunConfig& config, const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::io, "cannot read config file " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(ErrorCode::parameter, path + ":" + std::to_string(lineno) + ": expected key = value");
        set_config_value(config, trim(line.substr(0, eq)), line.substr(eq + 1));
    }
}

namespace {

json budget_json(const Budget& b) {
    return {{"samples", b.samples},
            {"resolution_2d", b.resolution_2d},
            {"resolution_3d", b.resolution_3d},
            {"resolution_nd", b.resolution_nd}};
}

double nan_to_null_guard(double v) { return v; }

json number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return nan_to_null_guard(v);
}

class Outputs {
public:
    Outputs(const RunConfig& config, RunResult& result) : config_(config), result_(result) {}

    void csv(const std::function<void(std::ostream&)>& body) {
        if (config_.format == OutputFormat::json) return;
        write(config_.out_prefix + ".csv", body);
    }

    void json_doc(const json& doc) {
        if (config_.format == OutputFormat::csv) return;
        write(config_.out_prefix + ".json", [&](std::ostream& out) { out << doc.dump(2) << '\n'; });
    }

private:
    void write(const std::string& path, const std::function<void(std::ostream&)>& body) {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorCode::io, "cannot write " + path);
        body(out);
        out.flush();
        if (!out) fail(ErrorCode::io, "failed writing " + path);
        result_.files.push_back(path);
    }

    const RunConfig& config_;
    RunResult& result_;
};

std::vector<double> default_levels(Command c, const ScalarField& f) {
    const double eps = f.t_max();
    switch (c) {
        case Command::check_piecewise: return linear_levels(0.25 * eps, 0.75 * eps, 5);
        case Command::check_dilation: return {0.5, 1.0, 1.5};
        case Command::loja_fit: return log_levels(eps / 100.0, eps / 10.0, 15);
        default: return linear_levels(0.25 * eps, 0.75 * eps, 21);
    }
}

FiberMethod fiber_method(const std::string& name, int dim) {
    if (name.empty()) return default_fiber_method(dim);
    if (name == "mesh") return FiberMethod::mesh;
    if (name == "shell_mc" || name == "shell") return FiberMethod::shell_mc;
    fail(ErrorCode::parameter, "unknown fiber method '" + name + "' (mesh, shell_mc)");
}

VolumeMethod volume_method(const std::string& name) {
    if (name.empty() || name == "grid") return VolumeMethod::grid;
    if (name == "mc") return VolumeMethod::mc;
    fail(ErrorCode::parameter, "unknown volume method '" + name + "' (grid, mc)");
}

json summary(const RunConfig& config, const std::vector<double>& levels) {
    return {{"command", to_string(config.command)},
            {"field", config.field_id},
            {"levels", levels},
            {"budget", budget_json(config.budget)},
            {"seed", config.budget.seed}};
}

int command_volume(const RunConfig& config, const CorpusEntry& e, const std::vector<double>& levels,
                   Outputs& out) {
    const VolumeMethod method = volume_method(config.method);
    VolumeCurve curve;
    if (levels.size() >= 5) {
        curve = volume_curve(e.field, levels, method, config.budget);
    } else {
        config.budget.validate();
        curve.method = method;
        for (std::size_t i = 0; i < levels.size(); ++i) {
            const VolumeEstimate v =
                method == VolumeMethod::grid
                    ? volume_grid(e.field, levels[i], config.budget.resolution(e.field.dim()))
                    : volume_mc(e.field, levels[i], config.budget.samples,
                                derive_seed(config.budget.seed, "volume-" + std::to_string(i)));
            curve.levels.push_back(levels[i]);
            curve.volumes.push_back(v.value);
            curve.errors.push_back(v.error);
            curve.derivative.push_back(NAN);
            curve.derivative_error.push_back(NAN);
        }
    }
    out.csv([&](std::ostream& os) { write_csv(os, curve); });
    json doc = summary(config, levels);
    doc["method"] = to_string(method);
    json rows = json::array();
    for (std::size_t i = 0; i < curve.levels.size(); ++i)
        rows.push_back({{"t", curve.levels[i]},
                        {"V", curve.volumes[i]},
                        {"V_err", curve.errors[i]},
                        {"dVdt", number(curve.derivative[i])},
                        {"dVdt_err", number(curve.derivative_error[i])},
                        {"V_oracle", e.oracle.volume ? number((*e.oracle.volume)(curve.levels[i]))
                                                     : json(nullptr)}});
    doc["rows"] = rows;
    doc["warnings"] = curve.warnings;
    out.json_doc(doc);
    return 0;
}

int command_fiber(const RunConfig& config, const CorpusEntry& e, const std::vector<double>& levels,
                  Outputs& out, bool gelfand_leray) {
    const ScalarField& f = e.field;
    const FiberMethod method = fiber_method(config.method, f.dim());
    const std::string dens = config.density.empty() ? "one" : config.density;
    const Density g = make_density(dens, f, levels.front(), levels.back());
    std::vector<FiberEstimate> est;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        Budget b = config.budget;
        b.seed = derive_seed(config.budget.seed, "fiber-" + std::to_string(i));
        if (gelfand_leray) {
            const GLIntegralResult r = gl_integral(f, levels[i], g, method, b);
            FiberEstimate fe;
            fe.level = r.level;
            fe.value = r.j_value;
            fe.error = r.error;
            fe.method = r.method;
            est.push_back(fe);
        } else {
            est.push_back(fiber_integral(f, levels[i], [](PointView) { return 1.0; }, method, b));
        }
    }
    const char* col = gelfand_leray ? "J" : "A";
    out.csv([&](std::ostream& os) {
        os << "t," << col << ',' << col << "_err\n";
        for (const auto& x : est)
            os << format_double(x.level) << ',' << format_double(x.value) << ','
               << format_double(x.error) << '\n';
    });
    json doc = summary(config, levels);
    doc["method"] = to_string(method);
    if (gelfand_leray) doc["density"] = dens;
    json rows = json::array();
    for (const auto& x : est) {
        json r = {{"t", x.level}, {col, x.value}, {std::string(col) + "_err", x.error}};
        if (!gelfand_leray && e.oracle.area) r["A_oracle"] = number((*e.oracle.area)(x.level));
        rows.push_back(r);
    }
    doc["rows"] = rows;
    out.json_doc(doc);
    return 0;
}

int command_check_main(const RunConfig& config, const CorpusEntry& e,
                       const std::vector<double>& levels, Outputs& out) {
    constexpr double kTolerance = 0.03;
    const MainCheckReport rep = check_main(e.field, levels, config.budget);
    out.csv([&](std::ostream& os) { write_csv(os, rep); });
    const bool pass = rep.max_residual <= kTolerance && rep.max_witness_residual <= kMeanValueTolerance;
    json doc = summary(config, levels);
    doc["max_rel_discrepancy"] = rep.max_residual;
    doc["max_witness_residual"] = rep.max_witness_residual;
    doc["tolerance"] = kTolerance;
    doc["witness_tolerance"] = kMeanValueTolerance;
    doc["pass"] = pass;
    out.json_doc(doc);
    return pass ? 0 : 1;
}

int command_check_coarea(const RunConfig& config, const CorpusEntry& e,
                         const std::vector<double>& levels, Outputs& out) {
    constexpr double kTolerance = 0.01;
    const double lo = *std::min_element(levels.begin(), levels.end());
    const double hi = *std::max_element(levels.begin(), levels.end());
    const std::string dens = config.density.empty() ? "tilted_bump" : config.density;
    const CoareaReport rep = check_coarea(e.field, make_density(dens, e.field, lo, hi), lo, hi,
                                          config.budget);
    out.csv([&](std::ostream& os) { write_csv(os, rep); });
    const bool pass = rep.rel_discrepancy <= kTolerance;
    json doc = summary(config, levels);
    doc["density"] = dens;
    doc["lhs"] = rep.lhs;
    doc["lhs_err"] = rep.lhs_error;
    doc["rhs"] = rep.rhs;
    doc["rhs_err"] = rep.rhs_error;
    doc["max_rel_discrepancy"] = number(rep.rel_discrepancy);
    doc["within_error_bars"] = rep.consistent;
    doc["tolerance"] = kTolerance;
    doc["pass"] = pass;
    out.json_doc(doc);
    return pass ? 0 : 1;
}

int command_check_piecewise(const RunConfig& config, const CorpusEntry& e,
                            const std::vector<double>& levels, Outputs& out) {
    constexpr double kTolerance = 0.02;
    const PiecewiseReport rep = check_piecewise_theorem(e.field, levels, config.budget);
    out.csv([&](std::ostream& os) { write_csv(os, rep); });
    const bool pass = rep.max_rel_discrepancy <= kTolerance;
    json doc = summary(config, levels);
    json rows = json::array();
    for (const auto& r : rep.rows)
        rows.push_back({{"t", r.level},
                        {"Vprime", r.v_prime},
                        {"Vprime_err", r.v_prime_error},
                        {"sum_contributions", r.contribution_sum},
                        {"m", r.decomposition.m},
                        {"rel_discrepancy", r.rel_discrepancy}});
    doc["rows"] = rows;
    doc["max_rel_discrepancy"] = rep.max_rel_discrepancy;
    doc["tolerance"] = kTolerance;
    doc["pass"] = pass;
    out.json_doc(doc);
    return pass ? 0 : 1;
}

std::vector<double> weights_of(const std::string& id) {
    const auto parts = split(id, ':');
    if (parts.empty() || parts[0] != "weighted_l1")
        fail(ErrorCode::parameter, "check-dilation needs a weighted_l1 field");
    const int n = to_int(parts.size() > 1 ? parts[1] : "", "dimension");
    if (parts.size() < 3) return std::vector<double>(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> w;
    for (const auto& p : split(parts[2], ',')) w.push_back(to_double(p, "weight"));
    return w;
}

int command_check_dilation(const RunConfig& config, const std::vector<double>& levels,
                           Outputs& out) {
    constexpr double kTolerance = 0.02;
    const auto w = weights_of(config.field_id);
    const DilationReport rep = check_dilation(w, levels, config.budget);
    out.csv([&](std::ostream& os) { write_csv(os, rep); });
    const bool pass = rep.max_rel_discrepancy <= kTolerance;
    json doc = summary(config, levels);
    doc["max_rel_discrepancy"] = rep.max_rel_discrepancy;
    doc["tolerance"] = kTolerance;
    doc["pass"] = pass;
    out.json_doc(doc);
    return pass ? 0 : 1;
}

int command_loja_fit(const RunConfig& config, const CorpusEntry& e,
                     const std::vector<double>& levels, Outputs& out) {
    constexpr double kExponentTolerance = 0.05;
    const ExponentFit fit = fit_exponent(e.field, levels, config.budget, e.oracle.loja_exponent);
    const DecayBoundReport decay = check_decay_bound(fit, e.field, levels, config.budget);
    out.csv([&](std::ostream& os) {
        os << "t,A,Vprime,ratio,V,tightness\n";
        for (std::size_t i = 0; i < fit.samples.size(); ++i) {
            const auto& s = fit.samples[i];
            os << format_double(s.level) << ',' << format_double(s.area) << ','
               << format_double(s.v_prime) << ',' << format_double(s.ratio) << ','
               << format_double(decay.volumes[i]) << ',' << format_double(decay.tightness[i]) << '\n';
        }
    });
    bool pass = fit.certified && decay.holds_empirical && decay.holds_fit;
    if (fit.oracle_nu) pass = pass && std::abs(fit.nu - *fit.oracle_nu) <= kExponentTolerance;
    json doc = summary(config, levels);
    doc["nu"] = fit.nu;
    doc["C"] = number(fit.c_constant);
    doc["C_empirical"] = decay.c_empirical;
    doc["residual"] = fit.residual;
    doc["oracle_nu"] = fit.oracle_nu ? json(*fit.oracle_nu) : json(nullptr);
    doc["tightness"] = decay.tightness;
    doc["certified"] = fit.certified;
    doc["decay_bound_holds"] = decay.holds_empirical && decay.holds_fit;
    doc["area_tends_to_zero"] = fit.area_tends_to_zero;
    doc["warnings"] = fit.warnings;
    doc["pass"] = pass;
    out.json_doc(doc);
    return pass ? 0 : 1;
}

bool matches(const std::string& id, const std::optional<std::string>& filter) {
    if (!filter) return true;
    for (const auto& part : split(*filter, ','))
        if (!part.empty() && id.find(part) != std::string::npos) return true;
    return false;
}

bool is_usage_error(ErrorCode c) {
    return c == ErrorCode::parameter || c == ErrorCode::unknown_field || c == ErrorCode::level ||
           c == ErrorCode::io || c == ErrorCode::domain;
}

} // namespace

std::vector<ReportRow> run_report(const Budget& budget, const std::optional<std::string>& filter) {
    std::vector<ReportRow> rows;
    for (const std::string& id : corpus_ids()) {
        if (!matches(id, filter)) continue;
        const CorpusEntry e = make_field(id);
        const ScalarField& f = e.field;
        const int n = f.dim();
        const double eps = f.t_max();
        const auto five = linear_levels(0.25 * eps, 0.75 * eps, 5);

        auto check = [&](const std::string& name, double tol, const std::function<double(Budget&)>& fn) {
            ReportRow row{id, name, NAN, tol, false, ""};
            try {
                budget.validate();
                Budget b = budget;
                b.seed = derive_seed(budget.seed, id + "/" + name);
                row.discrepancy = fn(b);
                row.pass = row.discrepancy <= tol;
            } catch (const Error& err) {
                row.note = err.what();
            } catch (const std::exception& err) {
                row.note = std::string("internal error: ") + err.what();
            }
            rows.push_back(row);
        };

        check("crossval_volume", 1.0, [&](Budget& b) {
            double worst = 0.0;
            for (double t : five) {
                const VolumeEstimate g = volume_grid(f, t, b.resolution(n));
                const VolumeEstimate m = volume_mc(f, t, b.samples, derive_seed(b.seed, format_double(t)));
                worst = std::max(worst, std::abs(g.value - m.value) / (g.error + m.error));
            }
            return worst;
        });
        if (n <= 3) {
            check("crossval_area", 1.0, [&](Budget& b) {
                double worst = 0.0;
                for (double t : five) {
                    const FiberEstimate m = area(f, t, FiberMethod::mesh, b.resolution(n));
                    const FiberEstimate s = area(f, t, FiberMethod::shell_mc, b.samples,
                                                 derive_seed(b.seed, format_double(t)));
                    worst = std::max(worst, std::abs(m.value - s.value) / (m.error + s.error));
                }
                return worst;
            });
        }
        check("sandwich", 1e-12, [&](Budget& b) {
            double worst = 0.0;
            for (double t : five) {
                double a = 0.0, j = 0.0, lo = INFINITY, hi = 0.0;
                if (n <= 3) {
                    const LevelSetMesh mesh = extract_levelset(f, t, b.resolution(n));
                    for (const Facet& fc : mesh.facets) {
                        a += fc.area;
                        j += fc.area / fc.grad_norm;
                        lo = std::min(lo, fc.grad_norm);
                        hi = std::max(hi, fc.grad_norm);
                    }
                } else {
                    const Integrand one = [](PointView) { return 1.0; };
                    const std::uint64_t s = derive_seed(b.seed, format_double(t));
                    const FiberEstimate fa =
                        fiber_integral_shell(f, t, one, default_shell_delta(t), b.samples, s);
                    const FiberEstimate fj =
                        shell_integral_unweighted(f, t, one, default_shell_delta(t), b.samples, s);
                    a = fa.value;
                    j = fj.value;
                    lo = fa.grad_norm_min;
                    hi = fa.grad_norm_max;
                }
                const double ratio = a / j;
                worst = std::max({worst, (lo - ratio) / ratio, (ratio - hi) / ratio});
            }
            return worst;
        });
        if (e.oracle.volume) {
            check("oracle_volume", 0.01, [&](Budget& b) {
                double worst = 0.0;
                for (double t : five) {
                    const double v = volume_grid(f, t, b.resolution(n)).value;
                    const double o = (*e.oracle.volume)(t);
                    worst = std::max(worst, std::abs(v - o) / o);
                }
                return worst;
            });
        }
        if (e.oracle.area) {
            check("oracle_area", 0.02, [&](Budget& b) {
                double worst = 0.0;
                for (double t : five) {
                    const double a = fiber_integral(f, t, [](PointView) { return 1.0; },
                                                    default_fiber_method(n), b)
                                         .value;
                    const double o = (*e.oracle.area)(t);
                    worst = std::max(worst, std::abs(a - o) / o);
                }
                return worst;
            });
        }
        const bool smooth = !f.piecewise();
        if (smooth && n <= 3) {
            check("v_prime_equals_j", 0.02,
                  [&](Budget& b) { return check_v_prime_equals_j(f, five, b).max_rel_discrepancy; });
        }
        if (id.rfind("euclidean_norm", 0) == 0 && n <= 3) {
            check("ball_corollary", 0.02, [&](Budget& b) {
                const auto levels = linear_levels(0.5, 1.5, 21);
                const auto deriv = volume_derivatives(f, levels, VolumeMethod::grid, b);
                double worst = 0.0;
                for (std::size_t i = 0; i < levels.size(); ++i) {
                    const double a = area(f, levels[i], FiberMethod::mesh, b.resolution(n)).value;
                    worst = std::max(worst, std::abs(deriv[i].value - a) / a);
                }
                return worst;
            });
        }
        if (smooth && n <= 3 && id.rfind("euclidean_norm", 0) != 0) {
            MainCheckReport main;
            check("main_theorem", 0.03, [&](Budget& b) {
                main = check_main(f, five, b);
                return main.max_residual;
            });
            check("mean_value_witness", kMeanValueTolerance, [&](Budget&) {
                if (main.rows.empty()) fail(ErrorCode::precondition, "main_theorem check did not run");
                return main.max_witness_residual;
            });
        }
        if (smooth && n == 2) {
            check("coarea", 0.01, [&](Budget& b) {
                const Density g = make_density("tilted_bump", f, 0.5, 1.5);
                return check_coarea(f, g, 0.5, 1.5, b).rel_discrepancy;
            });
        }
        if (f.piecewise()) {
            check("component_count", 0.0, [&](Budget& b) {
                const LevelSetMesh mesh = extract_levelset(f, 1.0, b.resolution(n));
                return std::abs(static_cast<double>(mesh.component_count - (1 << n)));
            });
            check("piecewise_theorem", 0.02, [&](Budget& b) {
                return check_piecewise_theorem(f, five, b).max_rel_discrepancy;
            });
            check("dilation", 0.02, [&](Budget& b) {
                return check_dilation(weights_of(id), std::vector<double>{0.5, 1.0, 1.5}, b)
                    .max_rel_discrepancy;
            });
        }
        if (e.oracle.loja_exponent) {
            const auto levels = log_levels(eps / 100.0, eps / 10.0, 15);
            std::optional<ExponentFit> fit;
            check("exponent", 0.05, [&](Budget& b) {
                fit = fit_exponent(f, levels, b, e.oracle.loja_exponent);
                return std::abs(fit->nu - *e.oracle.loja_exponent);
            });
            check("certified_bound", 0.0, [&](Budget&) {
                if (!fit) fail(ErrorCode::precondition, "exponent fit did not run");
                return fit->certified ? 0.0 : 1.0;
            });
            check("decay_bound", 0.0, [&](Budget& b) {
                if (!fit) fail(ErrorCode::precondition, "exponent fit did not run");
                const DecayBoundReport d = check_decay_bound(*fit, f, levels, b);
                return d.holds_empirical && d.holds_fit ? 0.0 : 1.0;
            });
        }
    }
    return rows;
}

RunResult run(const RunConfig& config) {
    RunResult result;
    try {
        set_thread_count(config.threads);
        Outputs out(config, result);
        if (config.command == Command::report) {
            result.rows = run_report(config.budget, config.filter);
            bool all = true;
            for (const auto& r : result.rows) all = all && r.pass;
            out.csv([&](std::ostream& os) {
                os << "field,check,discrepancy,tolerance,pass,note\n";
                for (const auto& r : result.rows) {
                    std::string note = r.note;
                    std::replace(note.begin(), note.end(), ',', ';');
                    std::replace(note.begin(), note.end(), '\n', ' ');
                    os << r.field << ',' << r.check << ',' << format_double(r.discrepancy) << ','
                       << format_double(r.tolerance) << ',' << (r.pass ? "pass" : "fail") << ','
                       << note << '\n';
                }
            });
            json rows = json::array();
            for (const auto& r : result.rows)
                rows.push_back({{"field", r.field},
                                {"check", r.check},
                                {"discrepancy", number(r.discrepancy)},
                                {"tolerance", r.tolerance},
                                {"pass", r.pass},
                                {"note", r.note}});
            out.json_doc({{"rows", rows},
                          {"all_pass", all},
                          {"budget", budget_json(config.budget)},
                          {"seed", config.budget.seed}});
            result.exit_code = all ? 0 : 1;
            result.message = std::to_string(result.rows.size()) + " checks, " +
                             (all ? "all pass" : "some failed");
            return result;
        }

        if (config.field_id.empty()) fail(ErrorCode::parameter, "no field given");
        const CorpusEntry e = make_field(config.field_id);
        const std::vector<double> levels =
            config.levels ? config.levels->resolve() : default_levels(config.command, e.field);
        switch (config.command) {
            case Command::volume: result.exit_code = command_volume(config, e, levels, out); break;
            case Command::area: result.exit_code = command_fiber(config, e, levels, out, false); break;
            case Command::glint: result.exit_code = command_fiber(config, e, levels, out, true); break;
            case Command::check_main: result.exit_code = command_check_main(config, e, levels, out); break;
            case Command::check_coarea:
                result.exit_code = command_check_coarea(config, e, levels, out);
                break;
            case Command::check_piecewise:
                result.exit_code = command_check_piecewise(config, e, levels, out);
                break;
            case Command::check_dilation:
                result.exit_code = command_check_dilation(config, levels, out);
                break;
            case Command::loja_fit: result.exit_code = command_loja_fit(config, e, levels, out); break;
            case Command::report: break;
        }
        result.message = result.exit_code == 0 ? "pass" : "check failed";
    } catch (const Error& err) {
        result.exit_code = is_usage_error(err.code()) ? 2 : 1;
        result.message = err.what();
    } catch (const std::exception& err) {
        result.exit_code = 1;
        result.message = std::string("internal error: ") + err.what();
    }
    return result;
}

} // namespace slk

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

// Acceptance run: one PASS/FAIL line per criterion at the release tolerances
// and default budgets. Exit status is non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "slk/asymptotics.hpp"
#include "slk/error.hpp"
#include "slk/field.hpp"
#include "slk/format.hpp"
#include "slk/gelfand_leray.hpp"
#include "slk/geometry.hpp"
#include "slk/parallel.hpp"
#include "slk/piecewise.hpp"
#include "slk/runner.hpp"
#include "slk/volume.hpp"

using namespace slk;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

struct Outcome {
    bool pass = true;
    std::vector<std::string> details;

    void require(bool ok, const std::string& what) {
        pass = pass && ok;
        details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    }
};

int failures = 0;

void criterion(int number, const std::string& name, const std::function<void(Outcome&)>& body) {
    Outcome out;
    const auto start = Clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.require(false, std::string("raised: ") + e.what());
    }
    for (const auto& d : out.details) std::printf("    %s\n", d.c_str());
    std::printf("%s criterion %d: %s (%.1f s)\n", out.pass ? "PASS" : "FAIL", number, name.c_str(),
                seconds_since(start));
    std::fflush(stdout);
    failures += !out.pass;
}

double relative(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::vector<double> five_levels(const ScalarField& f) {
    return linear_levels(0.25 * f.t_max(), 0.75 * f.t_max(), 5);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

int main() {
    const Budget budget;  // resolution 512 (n = 2) / 256 (n = 3), 1e6 samples, seed 42

    criterion(1, "ball corollary V' = A, 21 levels on [0.5, 1.5], 2%, 60 s per field", [&](Outcome& out) {
        for (const char* id : {"euclidean_norm:2", "euclidean_norm:3"}) {
            const auto start = Clock::now();
            const auto e = make_field(id);
            const auto levels = linear_levels(0.5, 1.5, 21);
            const auto deriv = volume_derivatives(e.field, levels, VolumeMethod::grid, budget);
            double worst = 0.0;
            for (std::size_t i = 0; i < levels.size(); ++i) {
                const double a = area(e.field, levels[i], FiberMethod::mesh, budget.resolution(e.field.dim())).value;
                worst = std::max(worst, relative(deriv[i].value, a));
            }
            const double secs = seconds_since(start);
            out.require(worst <= 0.02, std::string(id) + ": max |V'-A|/A = " + fmt(worst));
            out.require(secs <= 60.0, std::string(id) + ": " + fmt(secs) + " s");
        }
    });

    criterion(2, "main identity V' |grad f(xi)| = A within 3%, witness 1e-3, 120 s per field", [&](Outcome& out) {
        for (const char* id : {"squared_norm:2", "squared_norm:3", "anisotropic_quadratic:2",
                               "anisotropic_quadratic:3"}) {
            const auto start = Clock::now();
            const auto e = make_field(id);
            const auto levels = linear_levels(0.25 * e.field.t_max(), 0.75 * e.field.t_max(), 21);
            const MainCheckReport r = check_main(e.field, levels, budget);
            const double secs = seconds_since(start);
            out.require(r.max_residual <= 0.03, std::string(id) + ": max residual " + fmt(r.max_residual));
            out.require(r.max_witness_residual <= kMeanValueTolerance,
                        std::string(id) + ": max witness residual " + fmt(r.max_witness_residual));
            out.require(secs <= 120.0, std::string(id) + ": " + fmt(secs) + " s");
        }
    });

    criterion(3, "coarea factorization within 1% at 1e7 samples, 60 s", [&](Outcome& out) {
        const auto start = Clock::now();
        const auto e = make_field("squared_norm:2");
        Budget b = budget;
        b.samples = 10'000'000;
        const CoareaReport r =
            check_coarea(e.field, make_density("bump", e.field, 0.5, 1.5), 0.5, 1.5, b);
        const double secs = seconds_since(start);
        out.require(r.rel_discrepancy <= 0.01, "lhs " + fmt(r.lhs) + ", rhs " + fmt(r.rhs) +
                                                   ", relative discrepancy " + fmt(r.rel_discrepancy));
        out.require(secs <= 60.0, fmt(secs) + " s");
    });

    criterion(4, "piecewise theorem and cross-polytope oracles at 5 levels", [&](Outcome& out) {
        for (const char* id : {"weighted_l1:2", "weighted_l1:3"}) {
            const auto e = make_field(id);
            const int n = e.field.dim();
            const auto levels = five_levels(e.field);
            const PiecewiseReport r = check_piecewise_theorem(e.field, levels, budget);
            bool counts = true;
            for (const auto& row : r.rows) counts = counts && row.decomposition.m == (1 << n);
            out.require(counts, std::string(id) + ": component count 2^n at every level");
            out.require(r.max_rel_discrepancy <= 0.02,
                        std::string(id) + ": max |V' - sum A_k/|grad f(xi_k)||/V' = " + fmt(r.max_rel_discrepancy));
            std::vector<double> w(n, 1.0 / std::sqrt(static_cast<double>(n)));
            const PolytopeOracle o = polytope_oracle(w);
            double worst_v = 0.0, worst_a = 0.0;
            for (double t : levels) {
                worst_v = std::max(worst_v, relative(volume_grid(e.field, t, budget.resolution(n)).value, o.volume(t)));
                worst_a = std::max(worst_a, relative(area(e.field, t, FiberMethod::mesh, budget.resolution(n)).value, o.area(t)));
            }
            out.require(worst_v <= 0.01, std::string(id) + ": volume vs oracle " + fmt(worst_v));
            out.require(worst_a <= 0.02, std::string(id) + ": area vs oracle " + fmt(worst_a));
        }
    });

    criterion(5, "dilation of the octahedron V' = A within 2%", [&](Outcome& out) {
        const double r3 = 1.0 / std::sqrt(3.0);
        const DilationReport r =
            check_dilation(std::vector<double>{r3, r3, r3}, std::vector<double>{0.5, 1.0, 1.5}, budget);
        for (const auto& row : r.rows)
            out.require(row.rel_discrepancy <= 0.02, "t = " + fmt(row.level) + ": V' " + fmt(row.v_prime) +
                                                         ", A " + fmt(row.area) + ", relative " +
                                                         fmt(row.rel_discrepancy));
    });

    criterion(6, "exponent recovery within 0.05 with certified and decay bounds", [&](Outcome& out) {
        for (const char* id : {"squared_norm:2", "even_power:2:2"}) {
            const auto e = make_field(id);
            const double eps = e.field.t_max();
            const auto levels = log_levels(eps / 100.0, eps / 10.0, 15);
            const ExponentFit fit = fit_exponent(e.field, levels, budget, e.oracle.loja_exponent);
            const DecayBoundReport d = check_decay_bound(fit, e.field, levels, budget);
            out.require(std::abs(fit.nu - *e.oracle.loja_exponent) <= 0.05,
                        std::string(id) + ": nu " + fmt(fit.nu) + " vs " + fmt(*e.oracle.loja_exponent));
            out.require(fit.certified, std::string(id) + ": V'(t) t^nu <= 1.05 A(t) at every level");
            out.require(d.holds_empirical && d.holds_fit,
                        std::string(id) + ": V(t) <= C t^(1-nu) with C = " + fmt(d.c_empirical));
        }
    });

    criterion(7, "estimator cross-validation within summed error bars", [&](Outcome& out) {
        int compared = 0, outside = 0;
        for (const std::string& id : corpus_ids()) {
            const auto e = make_field(id);
            const ScalarField& f = e.field;
            const int n = f.dim();
            double worst_v = 0.0, worst_a = 0.0;
            for (double t : five_levels(f)) {
                const std::uint64_t seed = derive_seed(budget.seed, "acceptance/" + id + "/" + format_double(t));
                const VolumeEstimate g = volume_grid(f, t, budget.resolution(n));
                const VolumeEstimate m = volume_mc(f, t, budget.samples, seed);
                worst_v = std::max(worst_v, std::abs(g.value - m.value) / (g.error + m.error));
                if (n <= 3) {
                    const FiberEstimate a = area(f, t, FiberMethod::mesh, budget.resolution(n));
                    const FiberEstimate s = area(f, t, FiberMethod::shell_mc, budget.samples, seed);
                    const double z = std::abs(a.value - s.value) / (a.error + s.error);
                    worst_a = std::max(worst_a, z);
                    ++compared;
                    outside += z > 1.0;
                }
            }
            out.require(worst_v <= 1.0, id + ": volume grid vs mc, max |diff|/(err sum) " + fmt(worst_v));
            if (n <= 3) out.require(worst_a <= 1.0, id + ": area mesh vs shell, max |diff|/(err sum) " + fmt(worst_a));
        }
        out.details.push_back("note area comparisons outside bars: " + std::to_string(outside) + " of " +
                              std::to_string(compared) + " (95% shell intervals)");
    });

    criterion(8, "sandwich min |grad f| <= A/J <= max |grad f| across the corpus", [&](Outcome& out) {
        const Integrand one = [](PointView) { return 1.0; };
        for (const std::string& id : corpus_ids()) {
            const auto e = make_field(id);
            const ScalarField& f = e.field;
            bool ok = true;
            double worst = 0.0;
            for (double t : five_levels(f)) {
                double a = 0.0, j = 0.0, lo = INFINITY, hi = 0.0;
                if (f.dim() <= 3) {
                    const LevelSetMesh mesh = extract_levelset(f, t, budget.resolution(f.dim()));
                    for (const Facet& fc : mesh.facets) {
                        a += fc.area;
                        j += fc.area / fc.grad_norm;
                        lo = std::min(lo, fc.grad_norm);
                        hi = std::max(hi, fc.grad_norm);
                    }
                } else {
                    const std::uint64_t seed = derive_seed(budget.seed, "acceptance-sandwich/" + format_double(t));
                    const FiberEstimate fa = fiber_integral_shell(f, t, one, default_shell_delta(t), budget.samples, seed);
                    const FiberEstimate fj = shell_integral_unweighted(f, t, one, default_shell_delta(t), budget.samples, seed);
                    a = fa.value;
                    j = fj.value;
                    lo = fa.grad_norm_min;
                    hi = fa.grad_norm_max;
                }
                const double ratio = a / j;
                const double slack = 1e-12 * ratio;
                ok = ok && lo - slack <= ratio && ratio <= hi + slack;
                worst = std::max({worst, (lo - ratio) / ratio, (ratio - hi) / ratio});
            }
            out.require(ok, id + ": worst relative violation " + fmt(worst));
        }
    });

    criterion(9, "repeated report runs are byte-identical", [&](Outcome& out) {
        const fs::path dir = fs::temp_directory_path() / "slk_acceptance";
        fs::create_directories(dir);
        RunConfig c;
        c.command = Command::report;
        c.out_prefix = (dir / "first").string();
        const RunResult first = run(c);
        c.out_prefix = (dir / "second").string();
        c.threads = 3;
        const RunResult second = run(c);
        set_thread_count(0);
        out.require(first.exit_code == second.exit_code, "exit codes " + std::to_string(first.exit_code) +
                                                              " and " + std::to_string(second.exit_code));
        for (const char* ext : {".csv", ".json"}) {
            const std::string a = slurp(dir / (std::string("first") + ext));
            const std::string b = slurp(dir / (std::string("second") + ext));
            out.require(!a.empty() && a == b, std::string("report") + ext + " identical (" +
                                                  std::to_string(a.size()) + " bytes)");
        }
    });

    std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}

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

#include "slk/gelfand_leray.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <ostream>

#include "slk/error.hpp"
#include "slk/format.hpp"
#include "slk/parallel.hpp"
#include "slk/volume.hpp"

namespace slk {

double smooth_bump(double s, double lo, double hi) {
    const double u = (2.0 * s - lo - hi) / (hi - lo);
    if (!(std::abs(u) < 1.0)) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

Density make_density(const std::string& name, const ScalarField& field, double t_lo, double t_hi) {
    if (name == "one") return {name, [](PointView) { return 1.0; }};
    if (name == "zero") return {name, [](PointView) { return 0.0; }};
    if (name == "x0") return {name, [](PointView x) { return x[0]; }};
    if (name == "bump" || name == "tilted_bump") {
        if (!(t_lo > 0.0 && t_lo < t_hi))
            fail(ErrorCode::parameter, "bump densities need 0 < t_lo < t_hi");
        const bool tilted = name == "tilted_bump";
        return {name, [field, t_lo, t_hi, tilted](PointView x) {
                    const double b = smooth_bump(field.value(x), t_lo, t_hi);
                    return tilted ? b * (1.0 + 0.25 * x[0]) : b;
                }};
    }
    fail(ErrorCode::parameter,
         "unknown density '" + name + "' (one, zero, x0, bump, tilted_bump)");
}

GLIntegralResult gl_integral(const ScalarField& field, double t, const Density& g,
                             FiberMethod method, const Budget& budget) {
    budget.validate();
    GLIntegralResult out;
    out.level = t;
    out.density = g.name;
    out.method = method;
    if (method == FiberMethod::mesh) {
        const LevelSetMesh mesh = extract_levelset(field, t, budget.resolution(field.dim()));
        if (mesh.critical_facets > 0)
            fail(ErrorCode::critical_proximity,
                 "fiber at t = " + format_double(t) + " passes within |grad f| < 1e-6");
        const Integrand h = [&](PointView x) { return g.g(x) / field.gradient_norm(x); };
        const FiberEstimate est = fiber_integral_mesh(field, mesh, h);
        out.j_value = est.value;
        out.error = est.error;
        return out;
    }
    const FiberEstimate est = shell_integral_unweighted(field, t, g.g, default_shell_delta(t),
                                                        budget.samples, budget.seed);
    if (est.grad_norm_min < kCriticalGradient)
        fail(ErrorCode::critical_proximity,
             "shell at t = " + format_double(t) + " contains samples with |grad f| < 1e-6");
    out.j_value = est.value;
    out.error = est.error;
    return out;
}

namespace {

// Composite Simpson on equally spaced nodes (odd count).
double simpson(std::span<const double> y, double step) {
    double s = y.front() + y.back();
    for (std::size_t i = 1; i + 1 < y.size(); ++i) s += (i % 2 ? 4.0 : 2.0) * y[i];
    return s * step / 3.0;
}

} // namespace

CoareaReport check_coarea(const ScalarField& field, const Density& g, double t_lo, double t_hi,
                          const Budget& budget, int simpson_nodes) {
    budget.validate();
    if (!(t_lo > 0.0 && t_lo < t_hi) || !field.in_t_range(t_hi))
        fail(ErrorCode::level, "coarea check needs 0 < t_lo < t_hi <= t_max");
    if (simpson_nodes < 17 || simpson_nodes % 2 == 0)
        fail(ErrorCode::parameter, "Simpson integration needs an odd node count >= 17");

    CoareaReport rep;
    const int dim = field.dim();
    const Box box = field.level_box(t_hi);
    const double vol = box.volume(dim);
    const std::uint64_t seed = derive_seed(budget.seed, "coarea-lhs");
    const std::int64_t samples = budget.samples;
    const std::size_t blocks =
        static_cast<std::size_t>((samples + kBlockSamples - 1) / kBlockSamples);
    struct Partial {
        double sum = 0.0, sumsq = 0.0;
        bool violation = false;
    };
    std::vector<Partial> parts(blocks);
    parallel_blocks(blocks, [&](std::size_t b) {
        RandomStream rng(seed, b);
        const std::int64_t count = std::min<std::int64_t>(
            kBlockSamples, samples - static_cast<std::int64_t>(b) * kBlockSamples);
        std::array<double, kMaxDim> x{};
        const PointView xv(x.data(), dim);
        Partial& p = parts[b];
        for (std::int64_t s = 0; s < count; ++s) {
            do {
                for (int a = 0; a < dim; ++a) x[a] = rng.uniform(box.lo, box.hi);
            } while (field.on_interface(xv));
            const double v = g.g(xv);
            if (v == 0.0) continue;
            const double fv = field.value(xv);
            if (fv < t_lo || fv > t_hi) p.violation = true;
            p.sum += v;
            p.sumsq += v * v;
        }
    });
    double sum = 0.0, sumsq = 0.0;
    for (const Partial& p : parts) {
        if (p.violation)
            fail(ErrorCode::precondition, "density '" + g.name + "' is nonzero outside " +
                                              format_double(t_lo) + " <= f <= " + format_double(t_hi));
        sum += p.sum;
        sumsq += p.sumsq;
    }
    const double n = static_cast<double>(samples);
    const double mean = sum / n;
    rep.lhs = vol * mean;
    rep.lhs_error = 1.96 * vol * std::sqrt(std::max(0.0, sumsq / n - mean * mean) / n);

    const FiberMethod method = default_fiber_method(dim);
    const double step = (t_hi - t_lo) / (simpson_nodes - 1);
    std::vector<double> j(simpson_nodes), w(simpson_nodes);
    for (int i = 0; i < simpson_nodes; ++i) {
        Budget b = budget;
        b.seed = derive_seed(budget.seed, "coarea-node-" + std::to_string(i));
        // Keep the top node inside the t-range despite rounding.
        const double t = i + 1 == simpson_nodes ? t_hi : t_lo + i * step;
        rep.nodes.push_back(gl_integral(field, t, g, method, b));
        j[i] = rep.nodes.back().j_value;
        w[i] = (i == 0 || i + 1 == simpson_nodes) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    }
    rep.rhs = simpson(j, step);
    rep.rhs_error = 0.0;
    for (int i = 0; i < simpson_nodes; ++i) rep.rhs_error += w[i] * step / 3.0 * rep.nodes[i].error;
    if ((simpson_nodes - 1) % 4 == 0) {
        std::vector<double> coarse;
        for (int i = 0; i < simpson_nodes; i += 2) coarse.push_back(j[i]);
        rep.rhs_error += std::abs(rep.rhs - simpson(coarse, 2.0 * step));
    }
    rep.discrepancy = std::abs(rep.lhs - rep.rhs);
    const double scale = std::abs(rep.lhs);
    rep.rel_discrepancy = scale > 0.0 ? rep.discrepancy / scale : (rep.discrepancy > 0.0 ? INFINITY : 0.0);
    rep.consistent = rep.discrepancy <= rep.lhs_error + rep.rhs_error;
    return rep;
}

VPrimeReport check_v_prime_equals_j(const ScalarField& field, std::span<const double> levels,
                                    const Budget& budget) {
    const auto deriv = volume_derivatives(field, levels, VolumeMethod::grid, budget);
    const Density one = make_density("one", field);
    VPrimeReport rep;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        Budget b = budget;
        b.seed = derive_seed(budget.seed, "vprime-j-" + std::to_string(i));
        const GLIntegralResult j =
            gl_integral(field, levels[i], one, default_fiber_method(field.dim()), b);
        VPrimeRow row;
        row.level = levels[i];
        row.v_prime = deriv[i].value;
        row.v_prime_error = deriv[i].error;
        row.j_value = j.j_value;
        row.j_error = j.error;
        row.rel_discrepancy = std::abs(row.v_prime - row.j_value) / std::abs(row.j_value);
        rep.max_rel_discrepancy = std::max(rep.max_rel_discrepancy, row.rel_discrepancy);
        rep.rows.push_back(row);
    }
    return rep;
}

int project_to_fiber(const ScalarField& field, double t, std::span<double> x) {
    const int dim = field.dim();
    std::array<double, kMaxDim> g{};
    const PointView xv(x.data(), dim);
    for (int it = 0; it < 100; ++it) {
        const double s = field.value(xv) - t;
        if (std::abs(s) <= 1e-13 * std::max(1.0, std::abs(t))) return it;
        field.gradient_into(xv, std::span<double>(g.data(), dim));
        double gg = 0.0;
        for (int a = 0; a < dim; ++a) gg += g[a] * g[a];
        if (!(gg > 0.0) || !std::isfinite(gg)) return it;
        for (int a = 0; a < dim; ++a) x[a] -= s * g[a] / gg;
    }
    return 100;
}

namespace {

double sandwich_slack(double c) { return 1e-12 * std::abs(c); }

// Bisection on the projected segment a -> b, where phi(a) <= 0 <= phi(b) and
// phi(x) = |grad f(proj x)| - target.
Point bisect_on_fiber(const ScalarField& field, double t, const Point& a, const Point& b,
                      double target, double tol) {
    const int dim = field.dim();
    auto eval = [&](double lambda, Point& x) {
        for (int k = 0; k < dim; ++k) x[k] = a[k] + lambda * (b[k] - a[k]);
        project_to_fiber(field, t, x);
        return field.gradient_norm(x) - target;
    };
    Point x(dim);
    double lo = 0.0, hi = 1.0;
    double phi_lo = eval(lo, x);
    if (std::abs(phi_lo) <= tol * target) return x;
    double phi_hi = eval(hi, x);
    if (std::abs(phi_hi) <= tol * target) return x;
    if (phi_lo > 0.0 || phi_hi < 0.0)
        fail(ErrorCode::sandwich, "mean-value search lost its bracket");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double phi = eval(mid, x);
        if (std::abs(phi) <= tol * target) return x;
        if (phi < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return x;
}

void finish_witness(const ScalarField& field, MeanValueWitness& w, Point xi) {
    w.grad_norm_at_xi = field.gradient_norm(xi);
    w.residual = std::abs(w.grad_norm_at_xi - w.target_ratio);
    w.xi = std::move(xi);
}

void check_sandwich(const MeanValueWitness& w) {
    const double slack = sandwich_slack(w.target_ratio);
    if (w.target_ratio < w.grad_norm_min - slack || w.target_ratio > w.grad_norm_max + slack)
        fail(ErrorCode::sandwich, "A/J = " + format_double(w.target_ratio) + " outside [" +
                                      format_double(w.grad_norm_min) + ", " +
                                      format_double(w.grad_norm_max) + "]");
}

MeanValueWitness shell_witness(const ScalarField& field, double t, const Budget& budget,
                               double tol) {
    const double delta = default_shell_delta(t);
    const Integrand one = [](PointView) { return 1.0; };
    const FiberEstimate a = fiber_integral_shell(field, t, one, delta, budget.samples, budget.seed);
    const FiberEstimate j =
        shell_integral_unweighted(field, t, one, delta, budget.samples, budget.seed);
    if (a.grad_norm_min < kCriticalGradient)
        fail(ErrorCode::critical_proximity, "shell contains samples with |grad f| < 1e-6");

    MeanValueWitness w;
    w.level = t;
    w.area = a.value;
    w.area_error = a.error;
    w.j_value = j.value;
    w.j_error = j.error;
    w.target_ratio = a.value / j.value;
    w.grad_norm_min = a.grad_norm_min;
    w.grad_norm_max = a.grad_norm_max;
    w.fiber_tolerance = 1e-13 * std::max(1.0, t);
    check_sandwich(w);

    // Bracketing candidates: accepted shell points projected onto the fiber.
    const int dim = field.dim();
    const Box box = field.level_box(t + delta);
    RandomStream rng(derive_seed(budget.seed, "mean-value-candidates"), 0);
    std::vector<Point> cand;
    for (std::int64_t s = 0; s < budget.samples && cand.size() < 2048; ++s) {
        Point x(dim);
        for (int k = 0; k < dim; ++k) x[k] = rng.uniform(box.lo, box.hi);
        if (field.on_interface(x) || std::abs(field.value(x) - t) >= delta) continue;
        project_to_fiber(field, t, x);
        cand.push_back(std::move(x));
    }
    if (cand.empty()) fail(ErrorCode::thin_shell, "no shell samples for the mean-value search");
    if (w.grad_norm_max - w.grad_norm_min <= tol * w.target_ratio) {
        finish_witness(field, w, cand.front());
        return w;
    }
    std::size_t lo = 0, hi = 0;
    std::vector<double> gn(cand.size());
    for (std::size_t i = 0; i < cand.size(); ++i) {
        gn[i] = field.gradient_norm(cand[i]);
        if (gn[i] < gn[lo]) lo = i;
        if (gn[i] > gn[hi]) hi = i;
    }
    if (gn[lo] > w.target_ratio || gn[hi] < w.target_ratio)
        fail(ErrorCode::sandwich, "fiber samples do not bracket A/J");
    finish_witness(field, w, bisect_on_fiber(field, t, cand[lo], cand[hi], w.target_ratio, tol));
    return w;
}

} // namespace

MeanValueWitness find_mean_value_point(const ScalarField& field, const LevelSetMesh& mesh,
                                       std::optional<int> component, double tol) {
    if (!component && !field.fibers_connected())
        fail(ErrorCode::precondition, "fibers of " + field.id() +
                                          " are not connected; select a component");
    const double t = mesh.level;
    std::vector<std::uint32_t> sel;
    for (std::uint32_t f = 0; f < mesh.facets.size(); ++f)
        if (!component || mesh.facets[f].component == *component) sel.push_back(f);
    if (sel.empty()) fail(ErrorCode::parameter, "no facets in the selected component");

    MeanValueWitness w;
    w.level = t;
    w.component = component;
    w.fiber_tolerance = mesh.tolerance;
    w.grad_norm_min = INFINITY;
    for (std::uint32_t f : sel) {
        const Facet& fc = mesh.facets[f];
        if (fc.grad_norm < kCriticalGradient)
            fail(ErrorCode::critical_proximity, "fiber facet with |grad f| < 1e-6");
        w.area += fc.area;
        w.j_value += fc.area / fc.grad_norm;
        w.grad_norm_min = std::min(w.grad_norm_min, fc.grad_norm);
        w.grad_norm_max = std::max(w.grad_norm_max, fc.grad_norm);
    }
    w.target_ratio = w.area / w.j_value;

    // Refinement errors from the half-resolution mesh, matched by piece.
    if (mesh.resolution / 2 >= 16) {
        const LevelSetMesh coarse = extract_levelset(field, t, mesh.resolution / 2, mesh.box);
        const int piece = field.piece(mesh.facets[sel.front()].centroid_view(mesh.dim));
        double a = 0.0, j = 0.0;
        for (const Facet& fc : coarse.facets) {
            if (component && field.piece(fc.centroid_view(mesh.dim)) != piece) continue;
            a += fc.area;
            j += fc.area / fc.grad_norm;
        }
        w.area_error = std::abs(w.area - a);
        w.j_error = std::abs(w.j_value - j);
    }
    check_sandwich(w);

    const int dim = mesh.dim;
    auto centroid = [&](std::uint32_t f) {
        const auto& c = mesh.facets[f].centroid;
        return Point(c.begin(), c.begin() + dim);
    };
    if (w.grad_norm_max - w.grad_norm_min <= tol * w.target_ratio) {
        finish_witness(field, w, centroid(sel.front()));
        return w;
    }

    // Breadth-first walk from the facet with the smallest gradient norm to
    // the nearest facet at or above the target.
    std::uint32_t start = sel.front();
    for (std::uint32_t f : sel)
        if (mesh.facets[f].grad_norm < mesh.facets[start].grad_norm) start = f;
    const auto adj = facet_adjacency(mesh);
    std::vector<std::int64_t> parent(mesh.facets.size(), -2);
    std::deque<std::uint32_t> queue{start};
    parent[start] = -1;
    std::int64_t goal = -1;
    while (!queue.empty() && goal < 0) {
        const std::uint32_t f = queue.front();
        queue.pop_front();
        if (mesh.facets[f].grad_norm >= w.target_ratio) {
            goal = f;
            break;
        }
        for (std::uint32_t nb : adj[f])
            if (parent[nb] == -2) {
                parent[nb] = f;
                queue.push_back(nb);
            }
    }
    if (goal < 0) fail(ErrorCode::sandwich, "no facet path reaches the target gradient norm");
    std::vector<std::uint32_t> path;
    for (std::int64_t f = goal; f >= 0; f = parent[f]) path.push_back(static_cast<std::uint32_t>(f));
    std::reverse(path.begin(), path.end());

    // Sign change of the projected gradient norm along the path.
    std::vector<Point> proj;
    std::vector<double> phi;
    for (std::uint32_t f : path) {
        Point x = centroid(f);
        project_to_fiber(field, t, x);
        phi.push_back(field.gradient_norm(x) - w.target_ratio);
        proj.push_back(std::move(x));
    }
    for (std::size_t i = 0; i < path.size(); ++i)
        if (std::abs(phi[i]) <= tol * w.target_ratio) {
            finish_witness(field, w, proj[i]);
            return w;
        }
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        if (phi[i] <= 0.0 && phi[i + 1] >= 0.0) {
            finish_witness(field, w, bisect_on_fiber(field, t, centroid(path[i]),
                                                     centroid(path[i + 1]), w.target_ratio, tol));
            return w;
        }
    }
    fail(ErrorCode::sandwich, "projected fiber path does not bracket A/J");
}

MeanValueWitness find_mean_value_point(const ScalarField& field, double t, const Budget& budget,
                                       std::optional<int> component, double tol) {
    budget.validate();
    if (field.dim() <= 3) {
        const LevelSetMesh mesh = extract_levelset(field, t, budget.resolution(field.dim()));
        return find_mean_value_point(field, mesh, component, tol);
    }
    if (component) fail(ErrorCode::parameter, "component selection needs a mesh (n <= 3)");
    if (!field.fibers_connected())
        fail(ErrorCode::precondition, "fibers of " + field.id() + " are not connected");
    return shell_witness(field, t, budget, tol);
}

MainCheckReport check_main(const ScalarField& field, std::span<const double> levels,
                           const Budget& budget) {
    const auto deriv = volume_derivatives(field, levels, VolumeMethod::grid, budget);
    MainCheckReport rep;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        Budget b = budget;
        b.seed = derive_seed(budget.seed, "main-" + std::to_string(i));
        const MeanValueWitness w = find_mean_value_point(field, levels[i], b);
        MainCheckRow row;
        row.level = levels[i];
        row.v_prime = deriv[i].value;
        row.v_prime_error = deriv[i].error;
        row.area = w.area;
        row.area_error = w.area_error;
        row.grad_norm_xi = w.grad_norm_at_xi;
        row.target_ratio = w.target_ratio;
        row.witness_residual = w.residual / w.target_ratio;
        row.residual = std::abs(row.v_prime * row.grad_norm_xi - row.area) / row.area;
        rep.max_residual = std::max(rep.max_residual, row.residual);
        rep.max_witness_residual = std::max(rep.max_witness_residual, row.witness_residual);
        rep.rows.push_back(row);
    }
    return rep;
}

void write_csv(std::ostream& out, const MainCheckReport& report) {
    out << "t,Vprime,A,grad_norm_xi,residual,Vprime_err,A_err,target_ratio,witness_residual\n";
    for (const auto& r : report.rows)
        out << format_double(r.level) << ',' << format_double(r.v_prime) << ','
            << format_double(r.area) << ',' << format_double(r.grad_norm_xi) << ','
            << format_double(r.residual) << ',' << format_double(r.v_prime_error) << ','
            << format_double(r.area_error) << ',' << format_double(r.target_ratio) << ','
            << format_double(r.witness_residual) << '\n';
}

void write_csv(std::ostream& out, const VPrimeReport& report) {
    out << "t,Vprime,Vprime_err,J,J_err,rel_discrepancy\n";
    for (const auto& r : report.rows)
        out << format_double(r.level) << ',' << format_double(r.v_prime) << ','
            << format_double(r.v_prime_error) << ',' << format_double(r.j_value) << ','
            << format_double(r.j_error) << ',' << format_double(r.rel_discrepancy) << '\n';
}

void write_csv(std::ostream& out, const CoareaReport& report) {
    out << "t,J,J_err\n";
    for (const auto& n : report.nodes)
        out << format_double(n.level) << ',' << format_double(n.j_value) << ','
            << format_double(n.error) << '\n';
}

} // namespace slk

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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slk/budget.hpp"
#include "slk/field.hpp"
#include "slk/geometry.hpp"

namespace slk {

/// Density g of the n-form g dx_1 ^ ... ^ dx_n, with a descriptor.
struct Density {
    std::string name;
    Integrand g;
};

/// Named densities: "one", "zero", "x0", "bump" (smooth bump of f supported
/// in [t_lo, t_hi]) and "tilted_bump" (bump times 1 + x0 / 4).
Density make_density(const std::string& name, const ScalarField& field, double t_lo = 0.5,
                     double t_hi = 1.5);

/// C-infinity bump of s, equal to 1 at the midpoint and vanishing outside (lo, hi).
double smooth_bump(double s, double lo, double hi);

struct GLIntegralResult {
    double level = 0.0;
    double j_value = 0.0;
    std::string density;
    FiberMethod method = FiberMethod::mesh;
    double error = 0.0;
};

/// J_g(t): the integral of the Gelfand-Leray form (g dx) / df over f = t,
/// i.e. the fiber integral of g / |grad f|. The shell method integrates g
/// over the slab directly since the |grad f| factors cancel. Refuses fibers
/// with |grad f| < 1e-6 anywhere.
GLIntegralResult gl_integral(const ScalarField& field, double t, const Density& g,
                             FiberMethod method, const Budget& budget);

struct CoareaReport {
    double lhs = 0.0;  ///< integral of g dx (Monte Carlo)
    double lhs_error = 0.0;
    double rhs = 0.0;  ///< integral of J_g(t) dt (composite Simpson)
    double rhs_error = 0.0;
    double discrepancy = 0.0;
    double rel_discrepancy = 0.0;
    std::vector<GLIntegralResult> nodes;
    bool consistent = false;  ///< discrepancy within summed error bars
};

/// Checks the coarea factorization for g supported in t_lo <= f <= t_hi.
CoareaReport check_coarea(const ScalarField& field, const Density& g, double t_lo, double t_hi,
                          const Budget& budget, int simpson_nodes = 17);

struct VPrimeRow {
    double level = 0.0;
    double v_prime = 0.0;
    double v_prime_error = 0.0;
    double j_value = 0.0;
    double j_error = 0.0;
    double rel_discrepancy = 0.0;
};

struct VPrimeReport {
    std::vector<VPrimeRow> rows;
    double max_rel_discrepancy = 0.0;
};

/// Tabulates V'(t) (grid volume) against J(t) with g = 1.
VPrimeReport check_v_prime_equals_j(const ScalarField& field, std::span<const double> levels,
                                    const Budget& budget);

inline constexpr double kMeanValueTolerance = 1e-3;

/// A fiber point whose gradient norm equals A(t) / J(t).
struct MeanValueWitness {
    double level = 0.0;
    Point xi;
    double grad_norm_at_xi = 0.0;
    double target_ratio = 0.0;  ///< A(t) / J(t)
    double residual = 0.0;      ///< |grad_norm_at_xi - target_ratio|
    double area = 0.0;
    double area_error = 0.0;
    double j_value = 0.0;
    double j_error = 0.0;
    double grad_norm_min = 0.0;  ///< over facet centroids / shell samples
    double grad_norm_max = 0.0;
    double fiber_tolerance = 0.0;
    std::optional<int> component;
};

/// Bracketed search along the fiber with Newton projection
/// x <- x - (f(x) - t) grad f / |grad f|^2 until the gradient norm matches
/// A(t) / J(t) to `tol` (relative). With `component`, the fiber is restricted
/// to that labelled mesh component; otherwise the fiber must be connected.
MeanValueWitness find_mean_value_point(const ScalarField& field, double t, const Budget& budget,
                                       std::optional<int> component = std::nullopt,
                                       double tol = kMeanValueTolerance);

/// As above, on an already extracted mesh (n <= 3).
MeanValueWitness find_mean_value_point(const ScalarField& field, const LevelSetMesh& mesh,
                                       std::optional<int> component = std::nullopt,
                                       double tol = kMeanValueTolerance);

/// Newton projection onto f = t; returns the number of iterations used.
int project_to_fiber(const ScalarField& field, double t, std::span<double> x);

struct MainCheckRow {
    double level = 0.0;
    double v_prime = 0.0;
    double v_prime_error = 0.0;
    double area = 0.0;
    double area_error = 0.0;
    double grad_norm_xi = 0.0;
    double target_ratio = 0.0;
    double witness_residual = 0.0;  ///< relative
    double residual = 0.0;          ///< |V' |grad f(xi)| - A| / A
};

struct MainCheckReport {
    std::vector<MainCheckRow> rows;
    double max_residual = 0.0;
    double max_witness_residual = 0.0;
};

/// V'(t) |grad f(xi)| = A(t) at each level, with xi from find_mean_value_point.
MainCheckReport check_main(const ScalarField& field, std::span<const double> levels,
                           const Budget& budget);

void write_csv(std::ostream& out, const MainCheckReport& report);
void write_csv(std::ostream& out, const VPrimeReport& report);
void write_csv(std::ostream& out, const CoareaReport& report);

} // namespace slk

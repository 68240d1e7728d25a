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

#include <iosfwd>
#include <span>
#include <vector>

#include "slk/budget.hpp"
#include "slk/field.hpp"
#include "slk/gelfand_leray.hpp"

namespace slk {

struct FiberComponent {
    int label = 0;
    double area = 0.0;
    double area_error = 0.0;
    MeanValueWitness witness;
    double grad_norm_xi = 0.0;
    double contribution = 0.0;  ///< area / grad_norm_xi
};

/// Fiber f = t split into its smooth connected components S_k(t).
struct ComponentDecomposition {
    double level = 0.0;
    int m = 0;
    std::vector<FiberComponent> components;
    double total_area = 0.0;  ///< area of the whole mesh

    double area_sum() const;
    double contribution_sum() const;
};

/// Per-component areas and mean-value points; the number of labelled mesh
/// components must equal the field's declared smooth_components.
ComponentDecomposition decompose(const ScalarField& field, double t, const Budget& budget);

struct PiecewiseRow {
    double level = 0.0;
    double v_prime = 0.0;
    double v_prime_error = 0.0;
    double contribution_sum = 0.0;
    double rel_discrepancy = 0.0;
    ComponentDecomposition decomposition;
};

struct PiecewiseReport {
    std::vector<PiecewiseRow> rows;
    double max_rel_discrepancy = 0.0;
};

/// V'(t) against the sum over components of A_k / |grad f(xi_k)|.
PiecewiseReport check_piecewise_theorem(const ScalarField& field, std::span<const double> levels,
                                        const Budget& budget);

/// Closed forms for the sublevel bodies of sum a_i |x_i|: cross-polytopes
/// whose faces all lie at distance t / |a| from the origin.
class PolytopeOracle {
public:
    explicit PolytopeOracle(std::vector<double> weights);

    const std::vector<double>& weights() const { return weights_; }
    int dim() const { return static_cast<int>(weights_.size()); }
    double weight_norm() const { return norm_; }

    /// 2^n t^n / (n! prod a_i)
    double volume(double t) const;
    double volume_derivative(double t) const;
    /// |a| V'(t)
    double area(double t) const;
    double face_distance(double t) const { return t / norm_; }
    /// Distance from the origin to the face in octant `mask` (sign bits).
    double face_distance(double t, unsigned mask) const;

private:
    std::vector<double> weights_;
    double norm_ = 0.0;
    double scale_ = 0.0;
};

PolytopeOracle polytope_oracle(std::vector<double> weights);

struct DilationRow {
    double level = 0.0;
    double v_prime = 0.0;
    double v_prime_error = 0.0;
    double area = 0.0;
    double area_error = 0.0;
    double rel_discrepancy = 0.0;
};

struct DilationReport {
    std::vector<DilationRow> rows;
    double max_rel_discrepancy = 0.0;
};

/// V'(t) = A(t) for the dilations tP of the unit-face-distance polytope
/// {sum a_i |x_i| <= 1}; requires |a| = 1.
DilationReport check_dilation(std::span<const double> weights, std::span<const double> levels,
                              const Budget& budget);

/// Corpus id "weighted_l1:n:a_1,...,a_n" for the given weights.
std::string weighted_l1_id(std::span<const double> weights);

/// Columns t,k,A_k,grad_norm_xi_k,contribution.
void write_csv(std::ostream& out, const PiecewiseReport& report);
void write_csv(std::ostream& out, const DilationReport& report);

} // namespace slk

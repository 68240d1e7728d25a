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

#include "slk/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "slk/error.hpp"
#include "slk/format.hpp"
#include "slk/geometry.hpp"
#include "slk/parallel.hpp"
#include "slk/volume.hpp"

namespace slk {

double ComponentDecomposition::area_sum() const {
    double s = 0.0;
    for (const auto& c : components) s += c.area;
    return s;
}

double ComponentDecomposition::contribution_sum() const {
    double s = 0.0;
    for (const auto& c : components) s += c.contribution;
    return s;
}

ComponentDecomposition decompose(const ScalarField& field, double t, const Budget& budget) {
    budget.validate();
    const LevelSetMesh mesh = extract_levelset(field, t, budget.resolution(field.dim()));
    if (mesh.component_count != field.smooth_components())
        fail(ErrorCode::decomposition,
             "fiber of " + field.id() + " at t = " + format_double(t) + " has " +
                 std::to_string(mesh.component_count) + " components, expected " +
                 std::to_string(field.smooth_components()));

    ComponentDecomposition dec;
    dec.level = t;
    dec.m = mesh.component_count;
    dec.total_area = mesh.total_area();
    dec.components.resize(dec.m);
    parallel_blocks(static_cast<std::size_t>(dec.m), [&](std::size_t k) {
        FiberComponent& c = dec.components[k];
        c.label = static_cast<int>(k);
        c.witness = find_mean_value_point(field, mesh, c.label);
        c.area = c.witness.area;
        c.area_error = c.witness.area_error;
        c.grad_norm_xi = c.witness.grad_norm_at_xi;
        c.contribution = c.area / c.grad_norm_xi;
    });
    return dec;
}

namespace {

// Cell-centre counting on a piecewise-linear field resonates with the grid:
// whole rows of centres cross a face at once, so volume differences are
// staircased. Paired Monte Carlo counts do not have that bias.
VolumeMethod derivative_method(const ScalarField& field) {
    return field.piecewise() ? VolumeMethod::mc : VolumeMethod::grid;
}

} // namespace

PiecewiseReport check_piecewise_theorem(const ScalarField& field, std::span<const double> levels,
                                        const Budget& budget) {
    const auto deriv = volume_derivatives(field, levels, derivative_method(field), budget);
    PiecewiseReport rep;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        PiecewiseRow row;
        row.level = levels[i];
        row.v_prime = deriv[i].value;
        row.v_prime_error = deriv[i].error;
        row.decomposition = decompose(field, levels[i], budget);
        row.contribution_sum = row.decomposition.contribution_sum();
        row.rel_discrepancy = std::abs(row.v_prime - row.contribution_sum) / std::abs(row.v_prime);
        rep.max_rel_discrepancy = std::max(rep.max_rel_discrepancy, row.rel_discrepancy);
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

PolytopeOracle::PolytopeOracle(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) fail(ErrorCode::parameter, "polytope needs at least one weight");
    double prod = 1.0, fact = 1.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (!(weights_[i] > 0.0)) fail(ErrorCode::parameter, "polytope weights must be positive");
        prod *= weights_[i];
        norm_ += weights_[i] * weights_[i];
        fact *= static_cast<double>(i + 1);
    }
    norm_ = std::sqrt(norm_);
    scale_ = std::pow(2.0, dim()) / (fact * prod);
}

double PolytopeOracle::volume(double t) const { return scale_ * std::pow(t, dim()); }

double PolytopeOracle::volume_derivative(double t) const {
    return scale_ * dim() * std::pow(t, dim() - 1);
}

double PolytopeOracle::area(double t) const { return norm_ * volume_derivative(t); }

double PolytopeOracle::face_distance(double t, unsigned mask) const {
    // Face {sum s_i a_i x_i = t} with s_i = -1 where bit i is set; its unit
    // normal is (s_i a_i) / |a| regardless of the signs.
    double nn = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        const double s = (mask >> i) & 1u ? -weights_[i] : weights_[i];
        nn += s * s;
    }
    return t / std::sqrt(nn);
}

PolytopeOracle polytope_oracle(std::vector<double> weights) {
    return PolytopeOracle(std::move(weights));
}

std::string weighted_l1_id(std::span<const double> weights) {
    std::string id = "weighted_l1:" + std::to_string(weights.size()) + ":";
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (i) id += ',';
        id += format_double(weights[i]);
    }
    return id;
}

DilationReport check_dilation(std::span<const double> weights, std::span<const double> levels,
                              const Budget& budget) {
    const PolytopeOracle oracle(std::vector<double>(weights.begin(), weights.end()));
    if (std::abs(oracle.weight_norm() - 1.0) > 1e-9)
        fail(ErrorCode::parameter, "dilation check needs |a| = 1 (unit face distance)");
    const CorpusEntry entry = make_field(weighted_l1_id(weights));
    const ScalarField& field = entry.field;
    const auto deriv = volume_derivatives(field, levels, derivative_method(field), budget);

    DilationReport rep;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        Budget b = budget;
        b.seed = derive_seed(budget.seed, "dilation-" + std::to_string(i));
        const Integrand one = [](PointView) { return 1.0; };
        const FiberEstimate a =
            fiber_integral(field, levels[i], one, default_fiber_method(field.dim()), b);
        DilationRow row;
        row.level = levels[i];
        row.v_prime = deriv[i].value;
        row.v_prime_error = deriv[i].error;
        row.area = a.value;
        row.area_error = a.error;
        row.rel_discrepancy = std::abs(row.v_prime - row.area) / row.area;
        rep.max_rel_discrepancy = std::max(rep.max_rel_discrepancy, row.rel_discrepancy);
        rep.rows.push_back(row);
    }
    return rep;
}

void write_csv(std::ostream& out, const PiecewiseReport& report) {
    out << "t,k,A_k,grad_norm_xi_k,contribution\n";
    for (const auto& row : report.rows)
        for (const auto& c : row.decomposition.components)
            out << format_double(row.level) << ',' << c.label << ',' << format_double(c.area) << ','
                << format_double(c.grad_norm_xi) << ',' << format_double(c.contribution) << '\n';
}

void write_csv(std::ostream& out, const DilationReport& report) {
    out << "t,Vprime,Vprime_err,A,A_err,rel_discrepancy\n";
    for (const auto& r : report.rows)
        out << format_double(r.level) << ',' << format_double(r.v_prime) << ','
            << format_double(r.v_prime_error) << ',' << format_double(r.area) << ','
            << format_double(r.area_error) << ',' << format_double(r.rel_discrepancy) << '\n';
}

} // namespace slk

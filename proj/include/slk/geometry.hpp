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

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "slk/budget.hpp"
#include "slk/field.hpp"

namespace slk {

using Vec3 = std::array<double, 3>;
using Integrand = std::function<double(PointView)>;

/// Facets whose centroid gradient norm falls below this are flagged as
/// near-critical.
inline constexpr double kCriticalGradient = 1e-6;

/// Vertex snap tolerance, as a fraction of the grid edge.
inline constexpr double kSnapFraction = 1e-9;

/// Segment (n = 2) or triangle (n = 3) of a discrete fiber. Unused
/// coordinates and vertices are zero.
struct Facet {
    std::array<Vec3, 3> vertices{};
    /// Topological vertex identifiers: grid edge, snapped grid node, or
    /// polygon centre. Facets sharing a key are adjacent.
    std::array<std::uint64_t, 3> keys{};
    double area = 0.0;
    Vec3 centroid{};
    Vec3 normal{};
    double grad_norm = 0.0;
    int component = 0;

    PointView centroid_view(int dim) const { return PointView(centroid.data(), dim); }
};

struct LevelSetMesh {
    int dim = 0;
    double level = 0.0;
    int resolution = 0;
    Box box;
    /// Bound on |f(centroid) - t| for every facet.
    double tolerance = 0.0;
    std::vector<Facet> facets;
    int component_count = 0;
    std::size_t critical_facets = 0;
    std::vector<std::string> warnings;

    int vertices_per_facet() const { return dim; }
    double total_area() const;
};

struct FiberEstimate {
    double level = 0.0;
    double value = 0.0;
    /// Refinement difference (mesh) or 95% confidence half-width (shell).
    double error = 0.0;
    FiberMethod method = FiberMethod::mesh;
    std::int64_t samples_or_facets = 0;
    /// Range of |grad f| over facet centroids or accepted shell samples.
    double grad_norm_min = 0.0;
    double grad_norm_max = 0.0;
    std::vector<std::string> warnings;
};

/// Marching squares (n = 2) or marching cubes (n = 3) on a uniform grid.
/// Ambiguous faces are resolved with the asymptotic decider; facets are
/// oriented along grad f and labelled by connected component (adjacency is
/// only followed inside one smooth piece of a piecewise field).
LevelSetMesh extract_levelset(const ScalarField& field, double t, int resolution,
                              std::optional<Box> box = std::nullopt);

/// Facet adjacency lists, through shared vertex keys.
std::vector<std::vector<std::uint32_t>> facet_adjacency(const LevelSetMesh& mesh);

/// Sum of h(centroid) * area, with error from a half-resolution re-extraction.
FiberEstimate fiber_integral_mesh(const ScalarField& field, const LevelSetMesh& mesh,
                                  const Integrand& h);

/// Thin-shell estimate (1 / 2 delta) * integral of h |grad f| over |f - t| < delta.
FiberEstimate fiber_integral_shell(const ScalarField& field, double t, const Integrand& h,
                                   double delta, std::int64_t samples, std::uint64_t seed);

/// Shell estimate of (1 / 2 delta) * integral of h over |f - t| < delta, i.e.
/// the fiber integral of h / |grad f|. Shares the sample stream of
/// fiber_integral_shell for equal seeds.
FiberEstimate shell_integral_unweighted(const ScalarField& field, double t, const Integrand& h,
                                        double delta, std::int64_t samples, std::uint64_t seed);

/// max(1e-2 t, 10 tau) where tau is the mesh tolerance (0 when no mesh is used).
double default_shell_delta(double t, double mesh_tolerance = 0.0);

/// A(t): mesh quadrature of 1 for n <= 3, shell Monte Carlo otherwise.
FiberEstimate area(const ScalarField& field, double t, FiberMethod method,
                   std::int64_t resolution_or_samples, std::uint64_t seed = 42);

/// Fiber integral of h with the method and caps taken from the budget.
FiberEstimate fiber_integral(const ScalarField& field, double t, const Integrand& h,
                             FiberMethod method, const Budget& budget);

/// Method used by default: mesh when n <= 3.
FiberMethod default_fiber_method(int dim);

/// Plain-text facet format: '#' header lines with dim, level, resolution and
/// facet count, then one facet per line: vertex coordinates, component label.
void write_mesh(std::ostream& out, const LevelSetMesh& mesh);

} // namespace slk

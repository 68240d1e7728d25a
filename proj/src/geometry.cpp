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

#include "slk/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <ostream>
#include <tuple>

#include "slk/error.hpp"
#include "slk/format.hpp"
#include "slk/parallel.hpp"

namespace slk {

namespace {

constexpr std::uint64_t kNodeTag = 1ULL << 62;
constexpr std::uint64_t kCentreTag = 1ULL << 63;

struct Grid {
    int dim;
    int res;
    Box box;

    double coord(int i) const { return box.lo + box.width() * i / res; }
    double cell() const { return box.width() / res; }
    std::uint64_t node(int i, int j, int k) const {
        const std::uint64_t n = static_cast<std::uint64_t>(res) + 1;
        return static_cast<std::uint64_t>(i) + n * (static_cast<std::uint64_t>(j) + n * k);
    }
};

struct Vertex {
    Vec3 p{};
    std::uint64_t key = 0;
};

// Level crossing on the grid edge starting at lower node (i, j, k) along
// `axis`. s_lo and s_hi are f - t at its endpoints and differ in sign class.
Vertex edge_vertex(const Grid& g, std::array<int, 3> ijk, int axis, double s_lo, double s_hi) {
    Vertex v;
    for (int d = 0; d < 3; ++d) v.p[d] = d < g.dim ? g.coord(ijk[d]) : 0.0;
    const double u = s_lo / (s_lo - s_hi);
    if (u <= kSnapFraction) {
        v.key = kNodeTag | g.node(ijk[0], ijk[1], ijk[2]);
    } else if (u >= 1.0 - kSnapFraction) {
        ++ijk[axis];
        v.p[axis] = g.coord(ijk[axis]);
        v.key = kNodeTag | g.node(ijk[0], ijk[1], ijk[2]);
    } else {
        v.p[axis] = g.coord(ijk[axis]) + u * (g.coord(ijk[axis] + 1) - g.coord(ijk[axis]));
        v.key = g.node(ijk[0], ijk[1], ijk[2]) * 3 + static_cast<std::uint64_t>(axis);
    }
    return v;
}

// Segments of the level set on one square face. Corners are given in cyclic
// order; face edge q joins corner q and corner q+1 (mod 4). Ambiguous faces
// use the asymptotic decider on the bilinear interpolant.
int face_segments(const std::array<double, 4>& s, std::array<std::array<int, 2>, 2>& seg) {
    std::array<bool, 4> in{};
    for (int q = 0; q < 4; ++q) in[q] = s[q] <= 0.0;
    int crossed[4];
    int nc = 0;
    for (int q = 0; q < 4; ++q)
        if (in[q] != in[(q + 1) % 4]) crossed[nc++] = q;
    if (nc == 0) return 0;
    if (nc == 2) {
        seg[0] = {crossed[0], crossed[1]};
        return 1;
    }
    const double saddle = (s[0] * s[2] - s[1] * s[3]) / (s[0] + s[2] - s[1] - s[3]);
    const bool in_joined = saddle <= 0.0;
    // Corner cut-offs: c1 -> (0,1), c3 -> (2,3), c0 -> (3,0), c2 -> (1,2).
    const bool cut_odd = in[0] ? in_joined : !in_joined;
    if (cut_odd) {
        seg[0] = {0, 1};
        seg[1] = {2, 3};
    } else {
        seg[0] = {3, 0};
        seg[1] = {1, 2};
    }
    return 2;
}

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Fills geometry, orientation and gradient data; returns false for a
// degenerate facet.
bool finish_facet(const ScalarField& field, Facet& f) {
    const int dim = field.dim();
    Vec3 n{};
    if (dim == 2) {
        const Vec3 d = sub(f.vertices[1], f.vertices[0]);
        f.area = std::hypot(d[0], d[1]);
        if (!(f.area > 0.0)) return false;
        n = {d[1] / f.area, -d[0] / f.area, 0.0};
        for (int a = 0; a < 3; ++a) f.centroid[a] = 0.5 * (f.vertices[0][a] + f.vertices[1][a]);
    } else {
        const Vec3 c = cross(sub(f.vertices[1], f.vertices[0]), sub(f.vertices[2], f.vertices[0]));
        const double len = std::sqrt(dot(c, c));
        f.area = 0.5 * len;
        if (!(f.area > 0.0)) return false;
        n = {c[0] / len, c[1] / len, c[2] / len};
        for (int a = 0; a < 3; ++a)
            f.centroid[a] = (f.vertices[0][a] + f.vertices[1][a] + f.vertices[2][a]) / 3.0;
    }
    Vec3 g{};
    field.gradient_into(f.centroid_view(dim), std::span<double>(g.data(), dim));
    f.grad_norm = std::sqrt(dot(g, g));
    if (dot(g, n) < 0.0) {
        for (double& v : n) v = -v;
        std::swap(f.vertices[0], f.vertices[1]);
        std::swap(f.keys[0], f.keys[1]);
    }
    f.normal = n;
    return true;
}

struct CubeTables {
    // edge -> (lower corner, axis); corners indexed by bits x | y << 1 | z << 2
    std::array<std::pair<int, int>, 12> edges{};
    std::array<std::array<int, 4>, 6> face_corners{};
    std::array<std::array<int, 4>, 6> face_edges{};

    CubeTables() {
        int e = 0;
        for (int axis = 0; axis < 3; ++axis)
            for (int c = 0; c < 8; ++c)
                if (!(c & (1 << axis))) edges[e++] = {c, axis};
        auto edge_of = [&](int a, int b) {
            const int lo = std::min(a, b);
            const int axis = std::countr_zero(static_cast<unsigned>(a ^ b));
            for (int q = 0; q < 12; ++q)
                if (edges[q].first == lo && edges[q].second == axis) return q;
            return -1;
        };
        int f = 0;
        for (int axis = 0; axis < 3; ++axis) {
            const int u = (axis + 1) % 3, v = (axis + 2) % 3;
            for (int side = 0; side < 2; ++side) {
                const int base = side << axis;
                face_corners[f] = {base, base | 1 << u, base | 1 << u | 1 << v, base | 1 << v};
                for (int q = 0; q < 4; ++q)
                    face_edges[f][q] = edge_of(face_corners[f][q], face_corners[f][(q + 1) % 4]);
                ++f;
            }
        }
    }
};

const CubeTables& cube_tables() {
    static const CubeTables tables;
    return tables;
}

void plane_values(const ScalarField& field, const Grid& g, double t, int k,
                  std::vector<double>& out) {
    const int n = g.res + 1;
    if (g.dim == 2) {
        out.resize(n);
        std::array<double, 2> x{0.0, g.coord(k)};
        for (int i = 0; i < n; ++i) {
            x[0] = g.coord(i);
            out[i] = field.value(x) - t;
        }
        return;
    }
    out.resize(static_cast<std::size_t>(n) * n);
    std::array<double, 3> x{0.0, 0.0, g.coord(k)};
    for (int j = 0; j < n; ++j) {
        x[1] = g.coord(j);
        for (int i = 0; i < n; ++i) {
            x[0] = g.coord(i);
            out[static_cast<std::size_t>(j) * n + i] = field.value(x) - t;
        }
    }
}

void squares_layer(const ScalarField& field, const Grid& g, int j, const std::vector<double>& lo,
                   const std::vector<double>& hi, std::vector<Facet>& out) {
    for (int i = 0; i < g.res; ++i) {
        const std::array<double, 4> s{lo[i], lo[i + 1], hi[i + 1], hi[i]};
        std::array<std::array<int, 2>, 2> seg{};
        const int ns = face_segments(s, seg);
        if (ns == 0) continue;
        auto vertex = [&](int q) {
            switch (q) {
                case 0: return edge_vertex(g, {i, j, 0}, 0, s[0], s[1]);
                case 1: return edge_vertex(g, {i + 1, j, 0}, 1, s[1], s[2]);
                case 2: return edge_vertex(g, {i, j + 1, 0}, 0, s[3], s[2]);
                default: return edge_vertex(g, {i, j, 0}, 1, s[0], s[3]);
            }
        };
        for (int q = 0; q < ns; ++q) {
            Facet f;
            const Vertex a = vertex(seg[q][0]), b = vertex(seg[q][1]);
            f.vertices[0] = a.p;
            f.vertices[1] = b.p;
            f.keys[0] = a.key;
            f.keys[1] = b.key;
            if (finish_facet(field, f)) out.push_back(f);
        }
    }
}

void cubes_layer(const ScalarField& field, const Grid& g, int k, const std::vector<double>& lo,
                 const std::vector<double>& hi, std::vector<Facet>& out) {
    const CubeTables& tb = cube_tables();
    const int n = g.res + 1;
    for (int j = 0; j < g.res; ++j) {
        for (int i = 0; i < g.res; ++i) {
            std::array<double, 8> s{};
            int inside = 0;
            for (int c = 0; c < 8; ++c) {
                const int ci = i + (c & 1), cj = j + ((c >> 1) & 1);
                const auto& plane = (c & 4) ? hi : lo;
                s[c] = plane[static_cast<std::size_t>(cj) * n + ci];
                inside += s[c] <= 0.0;
            }
            if (inside == 0 || inside == 8) continue;

            std::array<std::array<int, 2>, 12> nbr{};
            std::array<int, 12> degree{};
            for (int f = 0; f < 6; ++f) {
                std::array<double, 4> fs{};
                for (int q = 0; q < 4; ++q) fs[q] = s[tb.face_corners[f][q]];
                std::array<std::array<int, 2>, 2> seg{};
                const int ns = face_segments(fs, seg);
                for (int q = 0; q < ns; ++q) {
                    const int ea = tb.face_edges[f][seg[q][0]];
                    const int eb = tb.face_edges[f][seg[q][1]];
                    nbr[ea][degree[ea]++] = eb;
                    nbr[eb][degree[eb]++] = ea;
                }
            }

            std::array<Vertex, 12> verts{};
            for (int e = 0; e < 12; ++e) {
                if (degree[e] == 0) continue;
                const auto [c, axis] = tb.edges[e];
                const int c2 = c | (1 << axis);
                verts[e] = edge_vertex(g, {i + (c & 1), j + ((c >> 1) & 1), k + ((c >> 2) & 1)},
                                       axis, s[c], s[c2]);
            }

            std::array<bool, 12> used{};
            int poly_index = 0;
            for (int start = 0; start < 12; ++start) {
                if (degree[start] == 0 || used[start]) continue;
                std::array<int, 12> poly{};
                int len = 0;
                int prev = -1, cur = start;
                do {
                    used[cur] = true;
                    poly[len++] = cur;
                    const int next = nbr[cur][0] != prev ? nbr[cur][0] : nbr[cur][1];
                    prev = cur;
                    cur = next;
                } while (cur != start && len < 12);

                if (len == 3) {
                    Facet f;
                    for (int q = 0; q < 3; ++q) {
                        f.vertices[q] = verts[poly[q]].p;
                        f.keys[q] = verts[poly[q]].key;
                    }
                    if (finish_facet(field, f)) out.push_back(f);
                } else {
                    Vec3 centre{};
                    for (int q = 0; q < len; ++q)
                        for (int a = 0; a < 3; ++a) centre[a] += verts[poly[q]].p[a] / len;
                    const std::uint64_t centre_key =
                        kCentreTag | (g.node(i, j, k) * 8 + static_cast<std::uint64_t>(poly_index));
                    for (int q = 0; q < len; ++q) {
                        const Vertex& a = verts[poly[q]];
                        const Vertex& b = verts[poly[(q + 1) % len]];
                        Facet f;
                        f.vertices = {centre, a.p, b.p};
                        f.keys = {centre_key, a.key, b.key};
                        if (finish_facet(field, f)) out.push_back(f);
                    }
                }
                ++poly_index;
            }
        }
    }
}

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

// Facets sharing a vertex key and a group label are adjacent.
template <class GroupOf>
std::vector<std::tuple<std::uint64_t, int, std::uint32_t>> incidence(const LevelSetMesh& mesh,
                                                                     GroupOf group) {
    std::vector<std::tuple<std::uint64_t, int, std::uint32_t>> inc;
    inc.reserve(mesh.facets.size() * mesh.dim);
    for (std::uint32_t f = 0; f < mesh.facets.size(); ++f)
        for (int v = 0; v < mesh.dim; ++v) inc.emplace_back(mesh.facets[f].keys[v], group(f), f);
    std::sort(inc.begin(), inc.end());
    return inc;
}

void label_components(const ScalarField& field, LevelSetMesh& mesh) {
    const auto inc = incidence(mesh, [&](std::uint32_t f) {
        return field.piece(mesh.facets[f].centroid_view(mesh.dim));
    });
    UnionFind uf(mesh.facets.size());
    for (std::size_t q = 1; q < inc.size(); ++q) {
        const auto& [ka, pa, fa] = inc[q - 1];
        const auto& [kb, pb, fb] = inc[q];
        if (ka == kb && pa == pb) uf.unite(fa, fb);
    }
    std::vector<int> label(mesh.facets.size(), -1);
    int next = 0;
    for (std::uint32_t f = 0; f < mesh.facets.size(); ++f) {
        const std::uint32_t r = uf.find(f);
        if (label[r] < 0) label[r] = next++;
        mesh.facets[f].component = label[r];
    }
    mesh.component_count = next;
}

FiberEstimate shell_impl(const ScalarField& field, double t, const Integrand& h, double delta,
                         std::int64_t samples, std::uint64_t seed, bool weight_by_gradient) {
    if (!(delta > 0.0) || !(delta < t))
        fail(ErrorCode::parameter, "shell half-width must satisfy 0 < delta < t");
    if (!field.in_t_range(t - delta) || !field.in_t_range(t + delta))
        fail(ErrorCode::level, "shell [t - delta, t + delta] leaves the t-range of " + field.id());
    if (samples < 10'000) fail(ErrorCode::budget, "shell estimator needs at least 1e4 samples");

    const int dim = field.dim();
    const Box box = field.level_box(t + delta);
    const double scale = box.volume(dim) / (2.0 * delta);
    const std::size_t blocks =
        static_cast<std::size_t>((samples + kBlockSamples - 1) / kBlockSamples);

    struct Partial {
        double sum = 0.0, sumsq = 0.0;
        std::int64_t accepted = 0, critical = 0;
        double gmin = INFINITY, gmax = 0.0;
        bool bad = false;
    };
    std::vector<Partial> parts(blocks);
    parallel_blocks(blocks, [&](std::size_t b) {
        RandomStream rng(seed, b);
        const std::int64_t count =
            std::min<std::int64_t>(kBlockSamples, samples - static_cast<std::int64_t>(b) * kBlockSamples);
        std::array<double, kMaxDim> x{};
        const PointView xv(x.data(), dim);
        Partial& p = parts[b];
        for (std::int64_t s = 0; s < count; ++s) {
            do {
                for (int a = 0; a < dim; ++a) x[a] = rng.uniform(box.lo, box.hi);
            } while (field.on_interface(xv));
            if (std::abs(field.value(xv) - t) >= delta) continue;
            const double gn = field.gradient_norm(xv);
            const double hv = h(xv);
            if (!std::isfinite(hv)) p.bad = true;
            const double y = weight_by_gradient ? hv * gn : hv;
            p.sum += y;
            p.sumsq += y * y;
            ++p.accepted;
            p.critical += gn < kCriticalGradient;
            p.gmin = std::min(p.gmin, gn);
            p.gmax = std::max(p.gmax, gn);
        }
    });

    Partial tot;
    for (const Partial& p : parts) {
        tot.sum += p.sum;
        tot.sumsq += p.sumsq;
        tot.accepted += p.accepted;
        tot.critical += p.critical;
        tot.gmin = std::min(tot.gmin, p.gmin);
        tot.gmax = std::max(tot.gmax, p.gmax);
        tot.bad = tot.bad || p.bad;
    }
    if (tot.bad) fail(ErrorCode::integrand, "integrand is not finite inside the shell");
    const double n = static_cast<double>(samples);
    if (static_cast<double>(tot.accepted) < 1e-4 * n)
        fail(ErrorCode::thin_shell, "shell acceptance rate below 1e-4 at t = " + std::to_string(t) +
                                        "; increase delta or the sample count");

    FiberEstimate est;
    est.level = t;
    est.method = FiberMethod::shell_mc;
    est.samples_or_facets = samples;
    const double mean = tot.sum / n;
    const double var = std::max(0.0, tot.sumsq / n - mean * mean);
    est.value = scale * mean;
    est.error = 1.96 * scale * std::sqrt(var / n);
    est.grad_norm_min = tot.gmin;
    est.grad_norm_max = tot.gmax;
    if (tot.critical > 0)
        est.warnings.push_back("critical proximity: " + std::to_string(tot.critical) +
                               " shell samples with |grad f| < 1e-6");
    return est;
}

} // namespace

double LevelSetMesh::total_area() const {
    double s = 0.0;
    for (const Facet& f : facets) s += f.area;
    return s;
}

LevelSetMesh extract_levelset(const ScalarField& field, double t, int resolution,
                              std::optional<Box> box) {
    const int dim = field.dim();
    if (dim != 2 && dim != 3)
        fail(ErrorCode::parameter, "level-set extraction supports n = 2 or 3, got " + std::to_string(dim));
    if (!field.in_t_range(t))
        fail(ErrorCode::level, "level " + std::to_string(t) + " outside the t-range of " + field.id());
    if (resolution < 16) fail(ErrorCode::parameter, "mesh resolution must be at least 16");

    const Grid g{dim, resolution, box.value_or(field.level_box(t))};
    const int layers = resolution;
    const int chunks = std::min(layers, 4 * thread_count());
    std::vector<std::vector<Facet>> parts(chunks);
    parallel_blocks(chunks, [&](std::size_t c) {
        const int k0 = static_cast<int>(c * layers / chunks);
        const int k1 = static_cast<int>((c + 1) * layers / chunks);
        std::vector<double> lo, hi;
        plane_values(field, g, t, k0, lo);
        for (int k = k0; k < k1; ++k) {
            plane_values(field, g, t, k + 1, hi);
            if (dim == 2)
                squares_layer(field, g, k, lo, hi, parts[c]);
            else
                cubes_layer(field, g, k, lo, hi, parts[c]);
            std::swap(lo, hi);
        }
    });

    LevelSetMesh mesh;
    mesh.dim = dim;
    mesh.level = t;
    mesh.resolution = resolution;
    mesh.box = g.box;
    std::size_t total = 0;
    for (const auto& p : parts) total += p.size();
    mesh.facets.reserve(total);
    for (auto& p : parts) mesh.facets.insert(mesh.facets.end(), p.begin(), p.end());

    double gmax = 0.0;
    for (const Facet& f : mesh.facets) {
        gmax = std::max(gmax, f.grad_norm);
        mesh.critical_facets += f.grad_norm < kCriticalGradient;
    }
    mesh.tolerance = 0.5 * g.cell() * gmax;
    if (mesh.critical_facets > 0)
        mesh.warnings.push_back("critical proximity: " + std::to_string(mesh.critical_facets) +
                                " facets with |grad f| < 1e-6");
    label_components(field, mesh);
    return mesh;
}

std::vector<std::vector<std::uint32_t>> facet_adjacency(const LevelSetMesh& mesh) {
    const auto inc = incidence(mesh, [&](std::uint32_t f) { return mesh.facets[f].component; });
    std::vector<std::vector<std::uint32_t>> adj(mesh.facets.size());
    std::size_t q = 0;
    while (q < inc.size()) {
        std::size_t r = q + 1;
        while (r < inc.size() && std::get<0>(inc[r]) == std::get<0>(inc[q]) &&
               std::get<1>(inc[r]) == std::get<1>(inc[q]))
            ++r;
        for (std::size_t a = q; a < r; ++a)
            for (std::size_t b = q; b < r; ++b)
                if (a != b) adj[std::get<2>(inc[a])].push_back(std::get<2>(inc[b]));
        q = r;
    }
    for (auto& list : adj) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    return adj;
}

namespace {

double mesh_sum(const LevelSetMesh& mesh, const Integrand& h) {
    double s = 0.0;
    for (const Facet& f : mesh.facets) {
        const double v = h(f.centroid_view(mesh.dim));
        if (!std::isfinite(v))
            fail(ErrorCode::integrand, "integrand is not finite at a facet centroid");
        s += v * f.area;
    }
    return s;
}

} // namespace

FiberEstimate fiber_integral_mesh(const ScalarField& field, const LevelSetMesh& mesh,
                                  const Integrand& h) {
    if (mesh.facets.empty()) fail(ErrorCode::parameter, "empty level-set mesh");
    FiberEstimate est;
    est.level = mesh.level;
    est.method = FiberMethod::mesh;
    est.samples_or_facets = static_cast<std::int64_t>(mesh.facets.size());
    est.value = mesh_sum(mesh, h);
    est.grad_norm_min = INFINITY;
    for (const Facet& f : mesh.facets) {
        est.grad_norm_min = std::min(est.grad_norm_min, f.grad_norm);
        est.grad_norm_max = std::max(est.grad_norm_max, f.grad_norm);
    }
    est.warnings = mesh.warnings;
    if (mesh.resolution / 2 >= 16) {
        const LevelSetMesh coarse = extract_levelset(field, mesh.level, mesh.resolution / 2, mesh.box);
        if (!coarse.facets.empty()) est.error = std::abs(est.value - mesh_sum(coarse, h));
    }
    return est;
}

FiberEstimate fiber_integral_shell(const ScalarField& field, double t, const Integrand& h,
                                   double delta, std::int64_t samples, std::uint64_t seed) {
    return shell_impl(field, t, h, delta, samples, seed, true);
}

FiberEstimate shell_integral_unweighted(const ScalarField& field, double t, const Integrand& h,
                                        double delta, std::int64_t samples, std::uint64_t seed) {
    return shell_impl(field, t, h, delta, samples, seed, false);
}

double default_shell_delta(double t, double mesh_tolerance) {
    return std::max(1e-2 * t, 10.0 * mesh_tolerance);
}

FiberMethod default_fiber_method(int dim) {
    return dim <= 3 ? FiberMethod::mesh : FiberMethod::shell_mc;
}

FiberEstimate area(const ScalarField& field, double t, FiberMethod method,
                   std::int64_t resolution_or_samples, std::uint64_t seed) {
    const Integrand one = [](PointView) { return 1.0; };
    if (method == FiberMethod::mesh) {
        if (resolution_or_samples > (1 << 16))
            fail(ErrorCode::parameter, "mesh resolution too large");
        const LevelSetMesh mesh =
            extract_levelset(field, t, static_cast<int>(resolution_or_samples));
        return fiber_integral_mesh(field, mesh, one);
    }
    return fiber_integral_shell(field, t, one, default_shell_delta(t), resolution_or_samples, seed);
}

FiberEstimate fiber_integral(const ScalarField& field, double t, const Integrand& h,
                             FiberMethod method, const Budget& budget) {
    budget.validate();
    if (method == FiberMethod::mesh) {
        const LevelSetMesh mesh = extract_levelset(field, t, budget.resolution(field.dim()));
        return fiber_integral_mesh(field, mesh, h);
    }
    return fiber_integral_shell(field, t, h, default_shell_delta(t), budget.samples, budget.seed);
}

void write_mesh(std::ostream& out, const LevelSetMesh& mesh) {
    out << "# slk level-set mesh\n"
        << "# dim " << mesh.dim << '\n'
        << "# level " << format_double(mesh.level) << '\n'
        << "# resolution " << mesh.resolution << '\n'
        << "# facets " << mesh.facets.size() << '\n'
        << "# components " << mesh.component_count << '\n'
        << "# columns: " << mesh.dim << " vertices x " << mesh.dim << " coordinates, component\n";
    for (const Facet& f : mesh.facets) {
        for (int v = 0; v < mesh.dim; ++v)
            for (int a = 0; a < mesh.dim; ++a) out << format_double(f.vertices[v][a]) << ' ';
        out << f.component << '\n';
    }
}

} // namespace slk

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

#include <cmath>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "slk/error.hpp"
#include "slk/geometry.hpp"
#include "slk/piecewise.hpp"
#include "slk/volume.hpp"

using namespace slk;

namespace {

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode{};
}

double relative(double a, double b) { return std::abs(a - b) / std::abs(b); }

const double r2 = 1 / std::sqrt(2.0);
const double r3 = 1 / std::sqrt(3.0);

Budget small_budget() {
    Budget b;
    b.resolution_3d = 96;
    return b;
}

} // namespace

TEST_CASE("decomposition of the square fiber") {
    const auto e = make_field("weighted_l1:2");
    const ComponentDecomposition d = decompose(e.field, 1.0, Budget{});
    CHECK(d.m == 4);
    REQUIRE(d.components.size() == 4);
    for (const auto& c : d.components) {
        CHECK(relative(c.area, 2.0) <= 0.01);
        CHECK(c.grad_norm_xi == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(c.contribution == doctest::Approx(c.area / c.grad_norm_xi));
    }
    CHECK(d.area_sum() == doctest::Approx(d.total_area).epsilon(1e-12));
}

TEST_CASE("decomposition of the octahedron fiber") {
    const auto e = make_field("weighted_l1:3");
    const ComponentDecomposition d = decompose(e.field, 1.0, small_budget());
    CHECK(d.m == 8);
    CHECK(relative(d.area_sum(), 12 * std::sqrt(3.0)) <= 0.02);
    // Equal weights: every face has the same area.
    for (const auto& c : d.components) {
        CHECK(std::abs(c.area - d.components[0].area) <= c.area_error + d.components[0].area_error + 1e-9);
        CHECK(c.grad_norm_xi == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("decomposition of a smooth fiber") {
    const auto e = make_field("euclidean_norm:2");
    const ComponentDecomposition d = decompose(e.field, 1.0, Budget{});
    CHECK(d.m == 1);
    CHECK(d.components.size() == 1);
}

TEST_CASE("declared component count must match") {
    const auto e = make_field("weighted_l1:2");
    ScalarField f = e.field;
    f.with_pieces([&](PointView x) { return e.field.piece(x); }, 3);
    CHECK(code_of([&] { decompose(f, 1.0, Budget{}); }) == ErrorCode::decomposition);
}

TEST_CASE("piecewise theorem") {
    const std::vector<double> t1{1.0};
    const auto a = make_field("weighted_l1:2:0.6,0.8");
    const PiecewiseReport ra = check_piecewise_theorem(a.field, t1, Budget{});
    CHECK(relative(ra.rows[0].v_prime, 1 / 0.12) <= 0.02);
    CHECK(ra.max_rel_discrepancy <= 0.02);
    const auto b = make_field("weighted_l1:3");
    const PiecewiseReport rb = check_piecewise_theorem(b.field, t1, small_budget());
    CHECK(relative(rb.rows[0].v_prime, 12 * std::sqrt(3.0)) <= 0.02);
    CHECK(rb.max_rel_discrepancy <= 0.02);
    const auto c = make_field("euclidean_norm:3");
    const PiecewiseReport rc = check_piecewise_theorem(c.field, t1, small_budget());
    CHECK(rc.rows[0].decomposition.m == 1);
    CHECK(rc.max_rel_discrepancy <= 0.02);

    std::ostringstream out;
    write_csv(out, ra);
    CHECK(out.str().rfind("t,k,A_k,grad_norm_xi_k,contribution\n", 0) == 0);
}

TEST_CASE("polytope oracle") {
    const PolytopeOracle sq = polytope_oracle({r2, r2});
    CHECK(sq.volume(1.5) == doctest::Approx(4 * 2.25));
    CHECK(sq.area(1.5) == doctest::Approx(8 * 1.5));
    CHECK(sq.face_distance(1.5) == doctest::Approx(1.5));
    const PolytopeOracle oct = polytope_oracle({r3, r3, r3});
    CHECK(oct.volume(2.0) == doctest::Approx(4 * std::sqrt(3.0) * 8));
    CHECK(oct.area(2.0) == doctest::Approx(12 * std::sqrt(3.0) * 4));
    const PolytopeOracle p = polytope_oracle({1, 2});
    CHECK(p.volume(3.0) == doctest::Approx(9.0));
    CHECK(p.area(3.0) == doctest::Approx(std::sqrt(5.0) * 6));
    for (const auto& o : {sq, oct, p}) {
        for (double t : {0.3, 1.0, 2.7}) {
            const double h = 1e-5 * t;
            CHECK((o.volume(t + h) - o.volume(t - h)) / (2 * h) * o.weight_norm() ==
                  doctest::Approx(o.area(t)).epsilon(1e-8));
            CHECK(o.volume(t) == doctest::Approx(slk_test::cross_polytope_volume(o.weights(), t)));
            for (unsigned mask = 0; mask < (1u << o.dim()); ++mask)
                CHECK(o.face_distance(t, mask) == doctest::Approx(o.face_distance(t)).epsilon(1e-14));
        }
    }
    CHECK(code_of([] { polytope_oracle({1, 0}); }) == ErrorCode::parameter);
    CHECK(code_of([] { polytope_oracle({1, -1}); }) == ErrorCode::parameter);
}

TEST_CASE("numerical volume and area match the polytope oracle") {
    for (const char* id : {"weighted_l1:2", "weighted_l1:3", "weighted_l1:2:0.6,0.8"}) {
        CAPTURE(id);
        const auto e = make_field(id);
        std::vector<double> w;
        if (std::string(id) == "weighted_l1:2:0.6,0.8") w = {0.6, 0.8};
        else w.assign(e.field.dim(), 1 / std::sqrt(static_cast<double>(e.field.dim())));
        const PolytopeOracle o = polytope_oracle(w);
        const int r = e.field.dim() == 2 ? 256 : 64;
        for (double t : {0.5, 1.0, 2.0}) {
            const VolumeEstimate v = volume_grid(e.field, t, r);
            CHECK(std::abs(v.value - o.volume(t)) <= v.error);
            CHECK(relative(area(e.field, t, FiberMethod::mesh, r).value, o.area(t)) <= 1e-9);
        }
    }
}

TEST_CASE("homogeneity of weighted-L1 fields") {
    const auto e = make_field("weighted_l1:3");
    const double t = 1.0;
    const VolumeEstimate v = volume_mc(e.field, t, 1'000'000, 1);
    const double a = area(e.field, t, FiberMethod::mesh, 48).value;
    for (double lambda : {0.5, 2.0}) {
        const VolumeEstimate vl = volume_mc(e.field, lambda * t, 1'000'000, 2);
        CHECK(std::abs(vl.value - lambda * lambda * lambda * v.value) <=
              vl.error + lambda * lambda * lambda * v.error);
        const double al = area(e.field, lambda * t, FiberMethod::mesh, 48).value;
        CHECK(al == doctest::Approx(lambda * lambda * a).epsilon(1e-9));
    }
}

TEST_CASE("dilation check") {
    const DilationReport sq = check_dilation(std::vector<double>{r2, r2}, std::vector<double>{0.5, 1.0, 1.5}, Budget{});
    REQUIRE(sq.rows.size() == 3);
    for (const auto& row : sq.rows) {
        CHECK(relative(row.area, 8 * row.level) <= 1e-9);
        CHECK(relative(row.v_prime, 8 * row.level) <= 0.02);
    }
    CHECK(sq.max_rel_discrepancy <= 0.02);
    const DilationReport oct = check_dilation(std::vector<double>{r3, r3, r3}, std::vector<double>{1.0}, small_budget());
    CHECK(relative(oct.rows[0].area, 12 * std::sqrt(3.0)) <= 0.02);
    CHECK(oct.max_rel_discrepancy <= 0.02);
    // Small dilation: both sides shrink at the same rate.
    const DilationReport tiny = check_dilation(std::vector<double>{r2, r2}, std::vector<double>{0.02}, Budget{});
    CHECK(tiny.rows[0].v_prime / tiny.rows[0].area == doctest::Approx(1.0).epsilon(0.02));
    CHECK(code_of([] { check_dilation(std::vector<double>{1, 1}, std::vector<double>{1.0}, Budget{}); }) ==
          ErrorCode::parameter);
}

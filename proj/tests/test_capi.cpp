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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "slk/slk.h"

TEST_CASE("status strings and version") {
    CHECK(std::string(slk_version()) == "1.0.0");
    CHECK(std::string(slk_status_string(SLK_OK)) == "ok");
    CHECK(std::strlen(slk_status_string(SLK_ERR_UNKNOWN_FIELD)) > 0);
    CHECK(std::string(slk_status_string(static_cast<slk_status>(77))) == "unknown status");
}

TEST_CASE("corpus listing") {
    REQUIRE(slk_corpus_size() >= 10);
    CHECK(std::string(slk_corpus_id(0)) == "euclidean_norm:2");
    CHECK(slk_corpus_id(slk_corpus_size()) == nullptr);
}

TEST_CASE("field handles") {
    slk_field* f = nullptr;
    REQUIRE(slk_field_create("euclidean_norm:3", &f) == SLK_OK);
    CHECK(slk_field_dim(f) == 3);
    CHECK(slk_field_t_max(f) > 0.0);
    const double x[3] = {3, 4, 0};
    double v = 0.0, g[3] = {};
    CHECK(slk_field_evaluate(f, x, &v) == SLK_OK);
    CHECK(v == doctest::Approx(5.0));
    CHECK(slk_field_gradient(f, x, g) == SLK_OK);
    CHECK(g[0] == doctest::Approx(0.6));
    const double origin[3] = {0, 0, 0};
    CHECK(slk_field_gradient(f, origin, g) == SLK_ERR_NON_DIFFERENTIABLE);
    const double far[3] = {100, 0, 0};
    CHECK(slk_field_evaluate(f, far, &v) == SLK_ERR_DOMAIN);
    CHECK(std::strlen(slk_last_error()) > 0);
    double o = 0.0;
    CHECK(slk_field_oracle_volume(f, 1.0, &o) == SLK_OK);
    CHECK(o == doctest::Approx(4 * M_PI / 3));
    CHECK(slk_field_evaluate(f, nullptr, &v) == SLK_ERR_NULL_ARGUMENT);
    slk_field_destroy(f);

    slk_field* bad = reinterpret_cast<slk_field*>(1);
    CHECK(slk_field_create("unknown:9", &bad) == SLK_ERR_UNKNOWN_FIELD);
    CHECK(bad == nullptr);
    CHECK(std::string(slk_last_error()).find("weighted_l1:2") != std::string::npos);
}

TEST_CASE("estimates through the C interface") {
    slk_field* f = nullptr;
    REQUIRE(slk_field_create("squared_norm:2", &f) == SLK_OK);
    slk_budget b = slk_default_budget();
    b.samples = 200000;
    slk_estimate e{};
    CHECK(slk_volume(f, 1.0, SLK_VOLUME_GRID, &b, &e) == SLK_OK);
    CHECK(std::abs(e.value - M_PI) <= e.error);
    CHECK(slk_area(f, 1.0, SLK_FIBER_MESH, &b, &e) == SLK_OK);
    CHECK(e.value == doctest::Approx(2 * M_PI).epsilon(1e-3));
    CHECK(slk_gl_integral(f, 1.0, "one", 0.5, 1.5, SLK_FIBER_MESH, &b, &e) == SLK_OK);
    CHECK(e.value == doctest::Approx(M_PI).epsilon(1e-3));
    CHECK(slk_gl_integral(f, 1.0, "nope", 0.5, 1.5, SLK_FIBER_MESH, &b, &e) == SLK_ERR_PARAMETER);
    slk_witness w{};
    CHECK(slk_mean_value_point(f, 1.0, &b, &w) == SLK_OK);
    CHECK(w.dim == 2);
    CHECK(w.grad_norm_at_xi == doctest::Approx(2.0).epsilon(1e-3));
    b.samples = 0;
    CHECK(slk_volume(f, 1.0, SLK_VOLUME_MC, &b, &e) == SLK_ERR_BUDGET);
    CHECK(slk_area(f, 1e-13, SLK_FIBER_MESH, nullptr, &e) == SLK_OK);
    CHECK(slk_gl_integral(f, 1e-13, "one", 0.5, 1.5, SLK_FIBER_MESH, nullptr, &e) ==
          SLK_ERR_CRITICAL_PROXIMITY);
    slk_field_destroy(f);
}

TEST_CASE("run configuration") {
    slk_run_config* c = nullptr;
    REQUIRE(slk_run_config_create(&c) == SLK_OK);
    CHECK(slk_run_config_set(c, "colour", "red") == SLK_ERR_PARAMETER);
    CHECK(slk_run_config_load_file(c, "/nonexistent/config") == SLK_ERR_IO);
    const std::string prefix = (std::filesystem::temp_directory_path() / "slk_capi_run").string();
    CHECK(slk_run_config_set(c, "command", "volume") == SLK_OK);
    CHECK(slk_run_config_set(c, "field", "unknown:9") == SLK_OK);
    CHECK(slk_run_config_set(c, "out", prefix.c_str()) == SLK_OK);
    CHECK(slk_run(c) == 2);
    CHECK(slk_run_config_set(c, "field", "squared_norm:2") == SLK_OK);
    CHECK(slk_run_config_set(c, "levels", "1:3:5") == SLK_OK);
    CHECK(slk_run(c) == 0);
    CHECK(std::filesystem::exists(prefix + ".csv"));
    CHECK(slk_run(nullptr) == 2);
    slk_run_config_destroy(c);
}

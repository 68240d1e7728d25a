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

#include "slk/slk.h"

#include <cstring>
#include <string>

#include "slk/error.hpp"
#include "slk/field.hpp"
#include "slk/gelfand_leray.hpp"
#include "slk/geometry.hpp"
#include "slk/parallel.hpp"
#include "slk/runner.hpp"
#include "slk/volume.hpp"

struct slk_field {
    slk::CorpusEntry entry;
};

struct slk_run_config {
    slk::RunConfig config;
};

namespace {

thread_local std::string last_error;

slk_status status_of(slk::ErrorCode c) { return static_cast<slk_status>(static_cast<int>(c)); }

template <typename Fn>
slk_status guarded(Fn&& fn) {
    try {
        fn();
        last_error.clear();
        return SLK_OK;
    } catch (const slk::Error& e) {
        last_error = e.what();
        return status_of(e.code());
    } catch (const std::exception& e) {
        last_error = e.what();
        return SLK_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown exception";
        return SLK_ERR_INTERNAL;
    }
}

void require(const void* p, const char* what) {
    if (p == nullptr) throw slk::Error(slk::ErrorCode::parameter, std::string(what) + " is null");
}

slk::Budget to_budget(const slk_budget* b) {
    slk::Budget out;
    if (b == nullptr) return out;
    out.samples = b->samples;
    out.resolution_2d = b->resolution_2d;
    out.resolution_3d = b->resolution_3d;
    out.resolution_nd = b->resolution_nd;
    out.seed = b->seed;
    return out;
}

slk::PointView view(const slk_field* f, const double* x) {
    return {x, static_cast<std::size_t>(f->entry.field.dim())};
}

} // namespace

extern "C" {

const char* slk_version(void) { return "1.0.0"; }

const char* slk_last_error(void) { return last_error.c_str(); }

const char* slk_status_string(slk_status status) {
    switch (status) {
        case SLK_OK: return "ok";
        case SLK_ERR_NULL_ARGUMENT: return "null argument";
        case SLK_ERR_BUFFER_TOO_SMALL: return "buffer too small";
        case SLK_ERR_INTERNAL: return "internal error";
        default: break;
    }
    if (status >= SLK_ERR_DOMAIN && status <= SLK_ERR_IO)
        return slk::to_string(static_cast<slk::ErrorCode>(status));
    return "unknown status";
}

slk_budget slk_default_budget(void) {
    const slk::Budget b;
    return {b.samples, b.resolution_2d, b.resolution_3d, b.resolution_nd, b.seed};
}

void slk_set_threads(int threads) { slk::set_thread_count(threads); }

size_t slk_corpus_size(void) { return slk::corpus_ids().size(); }

const char* slk_corpus_id(size_t index) {
    static const std::vector<std::string> ids = slk::corpus_ids();
    return index < ids.size() ? ids[index].c_str() : nullptr;
}

slk_status slk_field_create(const char* id, slk_field** out) {
    if (out == nullptr) return SLK_ERR_NULL_ARGUMENT;
    *out = nullptr;
    return guarded([&] {
        require(id, "id");
        *out = new slk_field{slk::make_field(id)};
    });
}

void slk_field_destroy(slk_field* field) { delete field; }

int slk_field_dim(const slk_field* field) { return field ? field->entry.field.dim() : 0; }

double slk_field_t_max(const slk_field* field) { return field ? field->entry.field.t_max() : 0.0; }

slk_status slk_field_evaluate(const slk_field* field, const double* x, double* value) {
    if (!field || !x || !value) return SLK_ERR_NULL_ARGUMENT;
    return guarded([&] { *value = field->entry.field.evaluate(view(field, x)); });
}

slk_status slk_field_gradient(const slk_field* field, const double* x, double* grad) {
    if (!field || !x || !grad) return SLK_ERR_NULL_ARGUMENT;
    return guarded([&] {
        const slk::Point g = field->entry.field.gradient(view(field, x));
        std::copy(g.begin(), g.end(), grad);
    });
}

slk_status slk_field_oracle_volume(const slk_field* field, double t, double* value) {
    if (!field || !value) return SLK_ERR_NULL_ARGUMENT;
    return guarded([&] {
        if (!field->entry.oracle.volume)
            slk::fail(slk::ErrorCode::precondition, "field has no volume oracle");
        *value = (*field->entry.oracle.volume)(t);
    });
}

slk_status slk_field_oracle_area(const slk_field* field, double t, double* value) {
    if (!field || !value) return SLK_ERR_NULL_ARGUMENT;
    return guarded([&] {
        if (!field->entry.oracle.area)
            slk::fail(slk::ErrorCode::precondition, "field has no area oracle");
        *value = (*field->entry.oracle.area)(t);
    });
}

slk_status slk_volume(const slk_field* field, double t, slk_volume_method method,
                      const slk_budget* budget, slk_estimate* out) {
    if (!field || !out) return SLK_ERR_NULL_ARGUMENT;
    return guarded([&] {
        const slk::Budget b = to_budget(budget);
        b.validate();
        const auto& f = field->entry.field;
        const slk::VolumeEstimate v = method == SLK_VOLUME_MC
                                          ? slk::volume_mc(f, t, b.samples, b.seed)
                                          : slk::volume_grid(f, t, b.resolution(f.dim()));
        *out = {t, v.value, v.error};
    });
}

slk_status slk_area(const slk_field* field, double t, slk_fiber_method method,
                    const slk_budget* budget, slk_estimate* out) {
    if (!field || !out) return SLK_ERR_NULL_ARGUMENT;
    return guarded([&] {
        const slk::Budget b = to_budget(budget);
        b.validate();
        const auto& f = field->entry.field;
        const auto m = method == SLK_FIBER_SHELL_MC ? slk::FiberMethod::shell_mc : slk::FiberMethod::mesh;
        const slk::FiberEstimate e = slk::fiber_integral(f, t, [](slk::PointView) { return 1.0; }, m, b);
        *out = {t, e.value, e.error};
    });
}

slk_status slk_gl_integral(const slk_field* field, double t, const char* density, double t_lo,
                           double t_hi, slk_fiber_method method, const slk_budget* budget,
                           slk_estimate* out) {
    if (!field || !density || !out) return SLK_ERR_NULL_ARGUMENT;
    return guarded([&] {
        const slk::Budget b = to_budget(budget);
        const auto& f = field->entry.field;
        const auto m = method == SLK_FIBER_SHELL_MC ? slk::FiberMethod::shell_mc : slk::FiberMethod::mesh;
        const slk::GLIntegralResult r =
            slk::gl_integral(f, t, slk::make_density(density, f, t_lo, t_hi), m, b);
        *out = {t, r.j_value, r.error};
    });
}

slk_status slk_mean_value_point(const slk_field* field, double t, const slk_budget* budget,
                                slk_witness* out) {
    if (!field || !out) return SLK_ERR_NULL_ARGUMENT;
    return guarded([&] {
        const slk::MeanValueWitness w =
            slk::find_mean_value_point(field->entry.field, t, to_budget(budget));
        slk_witness r{};
        r.level = w.level;
        r.dim = static_cast<int32_t>(w.xi.size());
        std::copy(w.xi.begin(), w.xi.end(), r.xi);
        r.grad_norm_at_xi = w.grad_norm_at_xi;
        r.target_ratio = w.target_ratio;
        r.residual = w.residual;
        r.area = w.area;
        r.j_value = w.j_value;
        *out = r;
    });
}

slk_status slk_run_config_create(slk_run_config** out) {
    if (out == nullptr) return SLK_ERR_NULL_ARGUMENT;
    return guarded([&] { *out = new slk_run_config{}; });
}

void slk_run_config_destroy(slk_run_config* config) { delete config; }

slk_status slk_run_config_set(slk_run_config* config, const char* key, const char* value) {
    if (!config || !key || !value) return SLK_ERR_NULL_ARGUMENT;
    return guarded([&] { slk::set_config_value(config->config, key, value); });
}

slk_status slk_run_config_load_file(slk_run_config* config, const char* path) {
    if (!config || !path) return SLK_ERR_NULL_ARGUMENT;
    return guarded([&] { slk::load_config_file(config->config, path); });
}

int slk_run(const slk_run_config* config) {
    if (config == nullptr) {
        last_error = "config is null";
        return 2;
    }
    const slk::RunResult r = slk::run(config->config);
    last_error = r.message;
    return r.exit_code;
}

} // extern "C"

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

#include "slk/volume.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>

#include "slk/error.hpp"
#include "slk/format.hpp"
#include "slk/parallel.hpp"

namespace slk {

namespace {

struct Counts {
    std::vector<std::int64_t> inside;    // cells/samples with f <= threshold
    std::vector<std::int64_t> boundary;  // grid only: cells the level may cross
    double unit = 0.0;                   // cell volume, or box volume / samples
    std::int64_t total = 0;
};

void check_levels(const ScalarField& field, std::span<const double> thresholds) {
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        if (!field.in_t_range(thresholds[i]))
            fail(ErrorCode::level, "level " + format_double(thresholds[i]) + " outside the t-range of " +
                                       field.id());
        if (i > 0 && !(thresholds[i] > thresholds[i - 1]))
            fail(ErrorCode::parameter, "levels must be strictly increasing");
    }
}

// Counts cell centres below every (sorted) threshold in one pass. A cell is a
// boundary cell for thresholds within |grad f| * half-diagonal of its centre
// value.
Counts grid_counts(const ScalarField& field, std::span<const double> thresholds, int resolution,
                   const Box& box) {
    if (resolution < 32) fail(ErrorCode::parameter, "grid volume resolution must be at least 32");
    const int dim = field.dim();
    const double h = box.width() / resolution;
    const double reach = 0.5 * h * std::sqrt(static_cast<double>(dim));
    const std::size_t levels = thresholds.size();
    const std::int64_t slab = static_cast<std::int64_t>(std::pow(resolution, dim - 1) + 0.5);

    std::vector<std::vector<std::int64_t>> inside(resolution), edges(resolution);
    parallel_blocks(static_cast<std::size_t>(resolution), [&](std::size_t b) {
        std::vector<std::int64_t> in(levels + 1, 0), diff(levels + 1, 0);
        std::array<int, kMaxDim> idx{};
        std::array<double, kMaxDim> x{};
        const PointView xv(x.data(), dim);
        x[dim - 1] = box.lo + (static_cast<double>(b) + 0.5) * h;
        for (std::int64_t c = 0; c < slab; ++c) {
            for (int a = 0; a + 1 < dim; ++a) x[a] = box.lo + (idx[a] + 0.5) * h;
            const double s = field.value(xv);
            const auto first = std::lower_bound(thresholds.begin(), thresholds.end(), s);
            ++in[first - thresholds.begin()];
            const double r = field.gradient_norm(xv) * reach;
            const auto lo = std::lower_bound(thresholds.begin(), thresholds.end(), s - r);
            const auto hi = std::upper_bound(thresholds.begin(), thresholds.end(), s + r);
            if (lo < hi) {
                ++diff[lo - thresholds.begin()];
                --diff[hi - thresholds.begin()];
            }
            for (int a = 0; a + 1 < dim; ++a) {
                if (++idx[a] < resolution) break;
                idx[a] = 0;
            }
        }
        inside[b] = std::move(in);
        edges[b] = std::move(diff);
    });

    Counts out;
    out.inside.assign(levels, 0);
    out.boundary.assign(levels, 0);
    out.unit = std::pow(h, dim);
    out.total = slab * resolution;
    std::vector<std::int64_t> in(levels + 1, 0), diff(levels + 1, 0);
    for (int b = 0; b < resolution; ++b)
        for (std::size_t l = 0; l <= levels; ++l) {
            in[l] += inside[b][l];
            diff[l] += edges[b][l];
        }
    std::int64_t run_in = 0, run_edge = 0;
    for (std::size_t l = 0; l < levels; ++l) {
        run_in += in[l];
        run_edge += diff[l];
        out.inside[l] = run_in;
        out.boundary[l] = run_edge;
    }
    return out;
}

Counts mc_counts(const ScalarField& field, std::span<const double> thresholds,
                 std::int64_t samples, std::uint64_t seed, const Box& box) {
    if (samples < 10'000) fail(ErrorCode::budget, "Monte Carlo volume needs at least 1e4 samples");
    const int dim = field.dim();
    const std::size_t levels = thresholds.size();
    const std::size_t blocks =
        static_cast<std::size_t>((samples + kBlockSamples - 1) / kBlockSamples);
    std::vector<std::vector<std::int64_t>> hist(blocks);
    parallel_blocks(blocks, [&](std::size_t b) {
        RandomStream rng(seed, b);
        const std::int64_t count = std::min<std::int64_t>(
            kBlockSamples, samples - static_cast<std::int64_t>(b) * kBlockSamples);
        std::vector<std::int64_t> in(levels + 1, 0);
        std::array<double, kMaxDim> x{};
        const PointView xv(x.data(), dim);
        for (std::int64_t s = 0; s < count; ++s) {
            do {
                for (int a = 0; a < dim; ++a) x[a] = rng.uniform(box.lo, box.hi);
            } while (field.on_interface(xv));
            const double v = field.value(xv);
            ++in[std::lower_bound(thresholds.begin(), thresholds.end(), v) - thresholds.begin()];
        }
        hist[b] = std::move(in);
    });
    Counts out;
    out.inside.assign(levels, 0);
    out.unit = box.volume(dim) / static_cast<double>(samples);
    out.total = samples;
    std::int64_t run = 0;
    std::vector<std::int64_t> in(levels + 1, 0);
    for (const auto& h : hist)
        for (std::size_t l = 0; l <= levels; ++l) in[l] += h[l];
    for (std::size_t l = 0; l < levels; ++l) out.inside[l] = run += in[l];
    return out;
}

// 95% binomial half-width of a count, in volume units.
double binomial_error(std::int64_t count, const Counts& c) {
    const double n = static_cast<double>(c.total);
    const double p = static_cast<double>(count) / n;
    return 1.96 * c.unit * n * std::sqrt(p * (1.0 - p) / n);
}

double volume_error(const Counts& c, std::size_t l) {
    if (!c.boundary.empty())
        return static_cast<double>(std::max<std::int64_t>(c.boundary[l], 1)) * c.unit;
    return binomial_error(c.inside[l], c);
}

// Error of V(l_hi) - V(l_lo) computed from the same grid or sample set.
double difference_error(const Counts& c, std::size_t lo, std::size_t hi) {
    if (!c.boundary.empty())
        return static_cast<double>(c.boundary[lo] + c.boundary[hi]) * c.unit;
    return binomial_error(c.inside[hi] - c.inside[lo], c);
}

Counts counts_for(const ScalarField& field, std::span<const double> thresholds,
                  VolumeMethod method, const Budget& budget) {
    budget.validate();
    const Box box = field.level_box(thresholds.back());
    if (method == VolumeMethod::grid)
        return grid_counts(field, thresholds, budget.resolution(field.dim()), box);
    return mc_counts(field, thresholds, budget.samples, budget.seed, box);
}

} // namespace

VolumeEstimate volume_grid(const ScalarField& field, double t, int resolution,
                           std::optional<Box> box) {
    const double th[1] = {t};
    check_levels(field, th);
    const Counts c = grid_counts(field, th, resolution, box.value_or(field.level_box(t)));
    return {static_cast<double>(c.inside[0]) * c.unit, volume_error(c, 0)};
}

VolumeEstimate volume_mc(const ScalarField& field, double t, std::int64_t samples,
                         std::uint64_t seed, std::optional<Box> box) {
    const double th[1] = {t};
    check_levels(field, th);
    const Counts c = mc_counts(field, th, samples, seed, box.value_or(field.level_box(t)));
    return {static_cast<double>(c.inside[0]) * c.unit, volume_error(c, 0)};
}

VolumeCurve volume_curve(const ScalarField& field, std::span<const double> levels,
                         VolumeMethod method, const Budget& budget) {
    if (levels.size() < 5) fail(ErrorCode::parameter, "a volume curve needs at least 5 levels");
    check_levels(field, levels);
    const Counts c = counts_for(field, levels, method, budget);

    VolumeCurve curve;
    curve.method = method;
    curve.levels.assign(levels.begin(), levels.end());
    const std::size_t n = levels.size();
    curve.derivative.assign(n, NAN);
    curve.derivative_error.assign(n, NAN);
    for (std::size_t i = 0; i < n; ++i) {
        curve.volumes.push_back(static_cast<double>(c.inside[i]) * c.unit);
        curve.errors.push_back(volume_error(c, i));
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double dt = levels[i + 1] - levels[i - 1];
        curve.derivative[i] = (curve.volumes[i + 1] - curve.volumes[i - 1]) / dt;
        curve.derivative_error[i] = difference_error(c, i - 1, i + 1) / dt;
        const double slope = curve.derivative[i];
        if (!(slope > 0.0) || dt < 10.0 * curve.errors[i] / slope)
            curve.warnings.push_back("derivative unreliable at t = " + format_double(levels[i]) +
                                     ": level spacing below 10x error/slope");
    }
    return curve;
}

std::vector<DerivativeEstimate> volume_derivatives(const ScalarField& field,
                                                   std::span<const double> levels,
                                                   VolumeMethod method, const Budget& budget,
                                                   double rel_step) {
    if (levels.empty()) fail(ErrorCode::parameter, "no levels given");
    if (!(rel_step > 0.0 && rel_step < 0.5))
        fail(ErrorCode::parameter, "relative derivative step must lie in (0, 0.5)");
    std::vector<double> th;
    for (double t : levels) {
        th.push_back(t * (1.0 - rel_step));
        th.push_back(t);
        th.push_back(t * (1.0 + rel_step));
    }
    std::sort(th.begin(), th.end());
    th.erase(std::unique(th.begin(), th.end()), th.end());
    check_levels(field, th);
    if (method == VolumeMethod::mc) {
        // Each stencil gets its own sample set in a box fitted to its upper
        // level, so small levels are not starved by a shared large box.
        budget.validate();
        std::vector<DerivativeEstimate> out;
        for (std::size_t i = 0; i < levels.size(); ++i) {
            const double t = levels[i];
            const double stencil[3] = {t * (1.0 - rel_step), t, t * (1.0 + rel_step)};
            const Counts c = mc_counts(field, stencil, budget.samples, stream_seed(budget.seed, i),
                                       field.level_box(stencil[2]));
            const double span = stencil[2] - stencil[0];
            DerivativeEstimate d;
            d.level = t;
            d.value = static_cast<double>(c.inside[2] - c.inside[0]) * c.unit / span;
            d.error = difference_error(c, 0, 2) / span;
            d.volume = static_cast<double>(c.inside[1]) * c.unit;
            d.volume_error = volume_error(c, 1);
            out.push_back(d);
        }
        return out;
    }
    const Counts c = counts_for(field, th, method, budget);
    auto at = [&](double v) {
        return static_cast<std::size_t>(std::lower_bound(th.begin(), th.end(), v) - th.begin());
    };

    std::vector<DerivativeEstimate> out;
    for (double t : levels) {
        const std::size_t lo = at(t * (1.0 - rel_step)), mid = at(t), hi = at(t * (1.0 + rel_step));
        const double span = th[hi] - th[lo];
        DerivativeEstimate d;
        d.level = t;
        d.value = static_cast<double>(c.inside[hi] - c.inside[lo]) * c.unit / span;
        d.error = difference_error(c, lo, hi) / span;
        d.volume = static_cast<double>(c.inside[mid]) * c.unit;
        d.volume_error = volume_error(c, mid);
        out.push_back(d);
    }
    return out;
}

void write_csv(std::ostream& out, const VolumeCurve& curve) {
    out << "t,V,V_err,dVdt,dVdt_err\n";
    for (std::size_t i = 0; i < curve.levels.size(); ++i)
        out << format_double(curve.levels[i]) << ',' << format_double(curve.volumes[i]) << ','
            << format_double(curve.errors[i]) << ',' << format_double(curve.derivative[i]) << ','
            << format_double(curve.derivative_error[i]) << '\n';
}

} // namespace slk

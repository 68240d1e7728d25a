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

#include "slk/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "slk/error.hpp"
#include "slk/format.hpp"
#include "slk/geometry.hpp"
#include "slk/parallel.hpp"
#include "slk/volume.hpp"

namespace slk {

std::vector<double> log_levels(double lo, double hi, int count) {
    if (!(lo > 0.0 && hi > lo) || count < 2)
        fail(ErrorCode::parameter, "log levels need 0 < lo < hi and count >= 2");
    std::vector<double> out(count);
    const double a = std::log(lo), b = std::log(hi);
    for (int i = 0; i < count; ++i) out[i] = std::exp(a + (b - a) * i / (count - 1));
    out.front() = lo;
    out.back() = hi;
    return out;
}

std::vector<double> linear_levels(double lo, double hi, int count) {
    if (count < 1 || (count > 1 && !(hi > lo)))
        fail(ErrorCode::parameter, "linear levels need lo < hi and count >= 1");
    if (count == 1) return {lo};
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i) out[i] = lo + (hi - lo) * i / (count - 1);
    out.back() = hi;
    return out;
}

ExponentFit fit_exponent(const ScalarField& field, std::span<const double> levels,
                         const Budget& budget, std::optional<double> oracle_nu) {
    if (levels.size() < 3) fail(ErrorCode::parameter, "exponent fit needs at least 3 levels");
    const auto deriv = volume_derivatives(field, levels, VolumeMethod::grid, budget);

    ExponentFit fit;
    fit.oracle_nu = oracle_nu;
    fit.levels.assign(levels.begin(), levels.end());
    const FiberMethod method = default_fiber_method(field.dim());
    const Integrand one = [](PointView) { return 1.0; };
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (!(deriv[i].value > 0.0))
            fail(ErrorCode::precondition,
                 "V'(t) <= 0 at t = " + format_double(levels[i]) + "; cannot form A/V'");
        Budget b = budget;
        b.seed = derive_seed(budget.seed, "fit-area-" + std::to_string(i));
        const FiberEstimate a = fiber_integral(field, levels[i], one, method, b);
        ExponentSample s;
        s.level = levels[i];
        s.area = a.value;
        s.area_error = a.error;
        s.v_prime = deriv[i].value;
        s.v_prime_error = deriv[i].error;
        s.volume = deriv[i].volume;
        s.ratio = a.value / deriv[i].value;
        fit.samples.push_back(s);
    }

    const double n = static_cast<double>(levels.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& s : fit.samples) {
        const double x = std::log(s.level), y = std::log(s.ratio);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    fit.nu = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.log_c = (sy - fit.nu * sx) / n;
    for (const auto& s : fit.samples)
        fit.residual = std::max(fit.residual, std::abs(std::log(s.ratio) -
                                                       (fit.nu * std::log(s.level) + fit.log_c)));
    fit.in_range = fit.nu > 0.0 && fit.nu < 1.0;
    if (!fit.in_range)
        fit.warnings.push_back("fit-range: regression slope " + format_double(fit.nu) +
                               " lies outside (0, 1)");

    double amax = 0.0;
    fit.certified = true;
    for (const auto& s : fit.samples) {
        amax = std::max(amax, s.area);
        if (s.v_prime * std::pow(s.level, fit.nu) > s.area * (1.0 + kFitTolerance))
            fit.certified = false;
    }
    fit.c_constant = fit.nu < 1.0 ? amax / (1.0 - fit.nu) : INFINITY;

    fit.area_tends_to_zero = true;
    for (std::size_t i = 1; i < fit.samples.size(); ++i) {
        const auto& lo = fit.samples[i - 1];
        const auto& hi = fit.samples[i];
        if (hi.area < lo.area - (lo.area_error + hi.area_error)) fit.area_tends_to_zero = false;
    }
    if (!fit.area_tends_to_zero)
        fit.warnings.push_back("area does not decrease toward t -> 0 along the fit grid");
    return fit;
}

DecayBoundReport check_decay_bound(const ExponentFit& fit, const ScalarField& field,
                                   std::span<const double> levels, const Budget& budget) {
    if (levels.empty()) fail(ErrorCode::parameter, "decay check needs levels");
    const auto deriv = volume_derivatives(field, levels, VolumeMethod::grid, budget);
    DecayBoundReport rep;
    rep.nu = fit.nu;
    rep.c_fit = fit.c_constant;
    rep.levels.assign(levels.begin(), levels.end());
    double cmax = 0.0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        rep.volumes.push_back(deriv[i].volume);
        cmax = std::max(cmax, deriv[i].volume / std::pow(levels[i], 1.0 - fit.nu));
    }
    rep.c_empirical = cmax * (1.0 + kFitTolerance);
    rep.holds_empirical = true;
    rep.holds_fit = true;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const double power = std::pow(levels[i], 1.0 - fit.nu);
        rep.tightness.push_back(rep.volumes[i] / (rep.c_empirical * power));
        if (rep.volumes[i] > rep.c_empirical * power) rep.holds_empirical = false;
        if (rep.volumes[i] > rep.c_fit * power) rep.holds_fit = false;
    }
    return rep;
}

} // namespace slk

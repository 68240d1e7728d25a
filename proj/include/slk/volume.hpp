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

namespace slk {

struct VolumeEstimate {
    double value = 0.0;
    double error = 0.0;
};

/// Sampled t -> V(t) with a central-difference derivative on interior levels
/// (NaN at the two endpoints).
struct VolumeCurve {
    VolumeMethod method = VolumeMethod::grid;
    std::vector<double> levels;
    std::vector<double> volumes;
    std::vector<double> errors;
    std::vector<double> derivative;
    std::vector<double> derivative_error;
    std::vector<std::string> warnings;
};

/// Symmetric-stencil derivative (V(t(1+h)) - V(t(1-h))) / (2 h t).
struct DerivativeEstimate {
    double level = 0.0;
    double value = 0.0;
    double error = 0.0;
    double volume = 0.0;
    double volume_error = 0.0;
};

/// Cell-centre count of f <= t on a resolution^n grid over `box` (default:
/// the level box). Error is the boundary-cell count (at least one) times the
/// cell volume.
VolumeEstimate volume_grid(const ScalarField& field, double t, int resolution,
                           std::optional<Box> box = std::nullopt);

/// Indicator mean over uniform samples in the level box; error is the 95%
/// binomial half-width.
VolumeEstimate volume_mc(const ScalarField& field, double t, std::int64_t samples,
                         std::uint64_t seed, std::optional<Box> box = std::nullopt);

/// One shared grid (or sample set) over the box of the largest level.
VolumeCurve volume_curve(const ScalarField& field, std::span<const double> levels,
                         VolumeMethod method, const Budget& budget);

/// V'(t) at each level from a shared grid or sample set; every t (1 +- h)
/// must lie in the t-range.
std::vector<DerivativeEstimate> volume_derivatives(const ScalarField& field,
                                                   std::span<const double> levels,
                                                   VolumeMethod method, const Budget& budget,
                                                   double rel_step = 0.05);

/// CSV with header t,V,V_err,dVdt,dVdt_err; endpoints leave the derivative
/// columns empty.
void write_csv(std::ostream& out, const VolumeCurve& curve);

} // namespace slk

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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slk/budget.hpp"
#include "slk/field.hpp"

namespace slk {

/// Multiplicative slack of the certified bound V'(t) t^nu <= A(t) (1 + tol).
inline constexpr double kFitTolerance = 0.05;

struct ExponentSample {
    double level = 0.0;
    double area = 0.0;
    double area_error = 0.0;
    double v_prime = 0.0;
    double v_prime_error = 0.0;
    double volume = 0.0;
    double ratio = 0.0;  ///< A(t) / V'(t), the fiber gradient norm |grad f(xi_t)|
};

/// Log-log regression log(A / V') = nu log t + log c.
struct ExponentFit {
    double nu = 0.0;         ///< regression slope, reported even outside (0, 1)
    double log_c = 0.0;
    double c_constant = 0.0; ///< max A(t) / (1 - nu), the integrated decay constant
    double residual = 0.0;   ///< max |log-scale residual|
    std::optional<double> oracle_nu;
    std::vector<double> levels;
    std::vector<ExponentSample> samples;
    bool in_range = false;   ///< 0 < nu < 1
    bool certified = false;  ///< V'(t) t^nu <= A(t) (1 + kFitTolerance) at every level
    bool area_tends_to_zero = false;
    std::vector<std::string> warnings;
};

/// Throws ErrorCode::precondition when V'(t) <= 0 at some level.
ExponentFit fit_exponent(const ScalarField& field, std::span<const double> levels,
                         const Budget& budget, std::optional<double> oracle_nu = std::nullopt);

struct DecayBoundReport {
    double nu = 0.0;
    double c_empirical = 0.0;  ///< max V(t) / t^(1 - nu), times (1 + kFitTolerance)
    double c_fit = 0.0;
    std::vector<double> levels;
    std::vector<double> volumes;
    std::vector<double> tightness;  ///< V(t) / (c_empirical t^(1 - nu))
    bool holds_empirical = false;
    bool holds_fit = false;
};

/// V(t) <= C t^(1 - nu) at every level, for the empirical C and the fit's
/// integrated constant.
DecayBoundReport check_decay_bound(const ExponentFit& fit, const ScalarField& field,
                                   std::span<const double> levels, const Budget& budget);

/// count log-spaced levels over [lo, hi].
std::vector<double> log_levels(double lo, double hi, int count);
/// count uniform levels over [lo, hi].
std::vector<double> linear_levels(double lo, double hi, int count);

} // namespace slk

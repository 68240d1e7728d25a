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

// Reference values computed without the library: recurrences and direct
// quadrature only.

#pragma once

#include <cmath>
#include <numbers>
#include <vector>

namespace slk_test {

constexpr double pi = std::numbers::pi;

// Unit ball volume by the recurrence w_n = 2 pi / n * w_{n-2}.
inline double ball_volume(int n) {
    double w = (n % 2 == 0) ? 1.0 : 2.0;
    for (int k = (n % 2 == 0) ? 2 : 3; k <= n; k += 2) w *= 2.0 * pi / k;
    return w;
}

// Unit sphere area: n * w_n.
inline double sphere_area(int n) { return n * ball_volume(n); }

// Perimeter of the ellipse with semi-axes a, b; the integrand is periodic and
// smooth, so the trapezoid rule converges geometrically.
inline double ellipse_perimeter(double a, double b, int nodes = 4096) {
    double s = 0.0;
    for (int i = 0; i < nodes; ++i) {
        const double th = 2.0 * pi * i / nodes;
        s += std::hypot(a * std::sin(th), b * std::cos(th));
    }
    return s * 2.0 * pi / nodes;
}

// Surface area of the ellipsoid with semi-axes a, b, c by midpoint rule in
// the polar angle and trapezoid in the azimuth of |r_theta x r_phi|.
inline double ellipsoid_area(double a, double b, double c, int nodes = 1200) {
    double s = 0.0;
    const double dth = pi / nodes, dph = 2.0 * pi / (2 * nodes);
    for (int i = 0; i < nodes; ++i) {
        const double th = (i + 0.5) * dth;
        const double st = std::sin(th), ct = std::cos(th);
        for (int j = 0; j < 2 * nodes; ++j) {
            const double ph = j * dph;
            const double sp = std::sin(ph), cp = std::cos(ph);
            const double nx = b * c * st * st * cp;
            const double ny = a * c * st * st * sp;
            const double nz = a * b * st * ct;
            s += std::sqrt(nx * nx + ny * ny + nz * nz);
        }
    }
    return s * dth * dph;
}

// Quadratic form sum l_i x_i^2 at level t: sublevel volume, fiber area and
// the mean-value ratio A / V'.
inline double quadratic_volume(const std::vector<double>& l, double t) {
    double prod = 1.0;
    for (double v : l) prod *= v;
    const int n = static_cast<int>(l.size());
    return ball_volume(n) * std::pow(t, n / 2.0) / std::sqrt(prod);
}

inline double quadratic_volume_derivative(const std::vector<double>& l, double t) {
    return quadratic_volume(l, t) * (l.size() / 2.0) / t;
}

inline double quadratic_area(const std::vector<double>& l, double t) {
    if (l.size() == 2) return ellipse_perimeter(std::sqrt(t / l[0]), std::sqrt(t / l[1]));
    return ellipsoid_area(std::sqrt(t / l[0]), std::sqrt(t / l[1]), std::sqrt(t / l[2]));
}

// Gradient-norm mean-value ratio on the ellipse x = a cos s, y = b sin s for
// f = l0 x^2 + l1 y^2: A / J with J = integral of 1/|grad f| over the fiber.
inline double ellipse_target_ratio(double l0, double l1, double t, int nodes = 4096) {
    const double a = std::sqrt(t / l0), b = std::sqrt(t / l1);
    double area = 0.0, j = 0.0;
    for (int i = 0; i < nodes; ++i) {
        const double s = 2.0 * pi * i / nodes;
        const double x = a * std::cos(s), y = b * std::sin(s);
        const double ds = std::hypot(a * std::sin(s), b * std::cos(s));
        const double g = std::hypot(2.0 * l0 * x, 2.0 * l1 * y);
        area += ds;
        j += ds / g;
    }
    return area / j;
}

// Cross-polytope sum a_i |x_i| <= t.
inline double cross_polytope_volume(const std::vector<double>& a, double t) {
    double v = 1.0;
    for (std::size_t i = 0; i < a.size(); ++i) v *= 2.0 * t / a[i] / static_cast<double>(i + 1);
    return v;
}

} // namespace slk_test

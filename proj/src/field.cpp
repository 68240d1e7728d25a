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

#include "slk/field.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "slk/error.hpp"

namespace slk {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::domain: return "domain error";
        case ErrorCode::non_differentiable: return "non-differentiable point";
        case ErrorCode::level: return "level error";
        case ErrorCode::parameter: return "parameter error";
        case ErrorCode::unknown_field: return "unknown field";
        case ErrorCode::budget: return "budget error";
        case ErrorCode::critical_proximity: return "critical-proximity error";
        case ErrorCode::thin_shell: return "too-thin-shell error";
        case ErrorCode::integrand: return "integrand error";
        case ErrorCode::decomposition: return "decomposition mismatch";
        case ErrorCode::sandwich: return "sandwich violation";
        case ErrorCode::precondition: return "precondition error";
        case ErrorCode::io: return "i/o error";
    }
    return "unknown error";
}

double Box::volume(int dim) const { return std::pow(width(), dim); }

bool Box::contains(PointView x) const {
    return std::all_of(x.begin(), x.end(), [&](double v) { return v >= lo && v <= hi; });
}

ScalarField::ScalarField(std::string id, int dim, ScalarMap f, Box domain, double t_max)
    : id_(std::move(id)), dim_(dim), f_(std::move(f)), domain_(domain), t_max_(t_max) {
    if (dim_ < 1 || dim_ > kMaxDim)
        fail(ErrorCode::parameter, "dimension must be in [1, " + std::to_string(kMaxDim) + "]");
    if (!(domain_.hi > domain_.lo))
        fail(ErrorCode::parameter, "empty domain box");
    if (!(t_max_ > 0.0))
        fail(ErrorCode::parameter, "t_max must be positive");
}

ScalarField& ScalarField::with_gradient(GradientMap grad) {
    grad_ = std::move(grad);
    return *this;
}

ScalarField& ScalarField::with_interfaces(ScalarMap distance) {
    interface_distance_ = std::move(distance);
    return *this;
}

ScalarField& ScalarField::with_pieces(std::function<int(PointView)> piece, int m) {
    piece_ = std::move(piece);
    components_ = m;
    return *this;
}

ScalarField& ScalarField::with_extent(LevelMap extent) {
    extent_ = std::move(extent);
    return *this;
}

ScalarField& ScalarField::with_connected_fibers(bool connected) {
    connected_ = connected;
    return *this;
}

double ScalarField::evaluate(PointView x) const {
    if (static_cast<int>(x.size()) != dim_)
        fail(ErrorCode::parameter, "point dimension does not match field dimension");
    if (!domain_.contains(x))
        fail(ErrorCode::domain, "point outside domain box of " + id_);
    return f_(x);
}

Point ScalarField::gradient(PointView x) const {
    if (static_cast<int>(x.size()) != dim_)
        fail(ErrorCode::parameter, "point dimension does not match field dimension");
    if (!domain_.contains(x))
        fail(ErrorCode::domain, "point outside domain box of " + id_);
    if (on_interface(x))
        fail(ErrorCode::non_differentiable, "gradient requested on a smoothness interface of " + id_);
    Point g(dim_);
    gradient_into(x, g);
    return g;
}

void ScalarField::gradient_into(PointView x, std::span<double> out) const {
    if (grad_)
        grad_(x, out);
    else
        fd_gradient_into(x, out);
}

double ScalarField::gradient_norm(PointView x) const {
    std::array<double, kMaxDim> g{};
    gradient_into(x, std::span<double>(g.data(), dim_));
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += g[i] * g[i];
    return std::sqrt(s);
}

void ScalarField::fd_gradient_into(PointView x, std::span<double> out) const {
    const double h = fd_step();
    std::array<double, kMaxDim> y{};
    std::copy(x.begin(), x.end(), y.begin());
    const std::span<const double> yv(y.data(), dim_);
    for (int i = 0; i < dim_; ++i) {
        const double xi = y[i];
        y[i] = xi + h;
        const double fp = f_(yv);
        y[i] = xi - h;
        const double fm = f_(yv);
        y[i] = xi;
        out[i] = (fp - fm) / (2.0 * h);
    }
}

bool ScalarField::on_interface(PointView x) const {
    return interface_distance_ && interface_distance_(x) < kInterfaceMargin;
}

double ScalarField::fd_step() const {
    return 1e-5 * domain_.width() * std::sqrt(static_cast<double>(dim_));
}

Box ScalarField::level_box(double t) const {
    if (!extent_) return domain_;
    const double half = 1.05 * extent_(t);
    return Box{std::max(domain_.lo, -half), std::min(domain_.hi, half)};
}

double unit_ball_volume(int n) {
    return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

namespace {

constexpr double kTMax = 4.0;

double norm2(PointView x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

Box cube(double half) { return Box{-1.1 * half, 1.1 * half}; }

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

double parse_number(const std::string& s, const std::string& id) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        fail(ErrorCode::parameter, "malformed number '" + s + "' in field id " + id);
    }
    if (used != s.size() || !std::isfinite(v))
        fail(ErrorCode::parameter, "malformed number '" + s + "' in field id " + id);
    return v;
}

std::vector<double> parse_list(const std::string& s, const std::string& id) {
    std::vector<double> out;
    for (const auto& part : split(s, ',')) out.push_back(parse_number(part, id));
    return out;
}

std::string corpus_listing() {
    std::string out;
    for (const auto& id : corpus_ids()) out += "\n  " + id;
    return out;
}

// Arc length of the ellipse with semi-axes p, q.
double ellipse_perimeter(double p, double q) {
    if (p < q) std::swap(p, q);
    const double e = std::sqrt(1.0 - (q * q) / (p * p));
    return 4.0 * p * std::comp_ellint_2(e);
}

// Legendre's closed form for the ellipsoid surface area.
double ellipsoid_area(std::array<double, 3> ax) {
    std::sort(ax.begin(), ax.end(), std::greater<>());
    const double a = ax[0], b = ax[1], c = ax[2];
    if (a - c <= 1e-14 * a) return 4.0 * std::numbers::pi * a * a;
    const double phi = std::acos(c / a);
    const double k = std::sqrt(a * a * (b * b - c * c) / (b * b * (a * a - c * c)));
    const double s = std::sin(phi), co = std::cos(phi);
    return 2.0 * std::numbers::pi * c * c +
           2.0 * std::numbers::pi * a * b / s *
               (std::ellint_2(k, phi) * s * s + std::ellint_1(k, phi) * co * co);
}

CorpusEntry euclidean_norm(int n) {
    ScalarField f("euclidean_norm:" + std::to_string(n), n,
                  [](PointView x) { return std::sqrt(norm2(x)); }, cube(kTMax), kTMax);
    f.with_gradient([](PointView x, std::span<double> g) {
         const double r = std::sqrt(norm2(x));
         for (std::size_t i = 0; i < x.size(); ++i) g[i] = x[i] / r;
     })
        .with_interfaces([](PointView x) { return std::sqrt(norm2(x)); })
        .with_extent([](double t) { return t; });
    const double w = unit_ball_volume(n);
    FieldOracle o;
    o.volume = [w, n](double t) { return w * std::pow(t, n); };
    o.area = [w, n](double t) { return n * w * std::pow(t, n - 1); };
    o.grad_norm_on_fiber = [](double) { return 1.0; };
    return {std::move(f), std::move(o)};
}

CorpusEntry even_power(const std::string& id, int n, int k) {
    const double p = 2.0 * k;
    ScalarField f(id, n, [p](PointView x) { return std::pow(norm2(x), 0.5 * p); },
                  cube(std::pow(kTMax, 1.0 / p)), kTMax);
    f.with_gradient([p](PointView x, std::span<double> g) {
         const double c = p * std::pow(norm2(x), 0.5 * p - 1.0);
         for (std::size_t i = 0; i < x.size(); ++i) g[i] = c * x[i];
     })
        .with_extent([p](double t) { return std::pow(t, 1.0 / p); });
    const double w = unit_ball_volume(n);
    FieldOracle o;
    o.volume = [w, n, p](double t) { return w * std::pow(t, n / p); };
    o.area = [w, n, p](double t) { return n * w * std::pow(t, (n - 1) / p); };
    o.grad_norm_on_fiber = [p](double t) { return p * std::pow(t, (p - 1.0) / p); };
    o.loja_exponent = (p - 1.0) / p;
    return {std::move(f), std::move(o)};
}

CorpusEntry anisotropic_quadratic(const std::string& id, int n, std::vector<double> lambda) {
    const double lmin = *std::min_element(lambda.begin(), lambda.end());
    ScalarField f(
        id, n,
        [lambda](PointView x) {
            double s = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) s += lambda[i] * x[i] * x[i];
            return s;
        },
        cube(std::sqrt(kTMax / lmin)), kTMax);
    f.with_gradient([lambda](PointView x, std::span<double> g) {
         for (std::size_t i = 0; i < x.size(); ++i) g[i] = 2.0 * lambda[i] * x[i];
     })
        .with_extent([lmin](double t) { return std::sqrt(t / lmin); });
    const double prod = std::accumulate(lambda.begin(), lambda.end(), 1.0, std::multiplies<>());
    const double w = unit_ball_volume(n);
    FieldOracle o;
    o.volume = [w, n, prod](double t) { return w * std::pow(t, 0.5 * n) / std::sqrt(prod); };
    if (n == 2) {
        o.area = [lambda](double t) {
            return ellipse_perimeter(std::sqrt(t / lambda[0]), std::sqrt(t / lambda[1]));
        };
    } else if (n == 3) {
        o.area = [lambda](double t) {
            return ellipsoid_area({std::sqrt(t / lambda[0]), std::sqrt(t / lambda[1]),
                                   std::sqrt(t / lambda[2])});
        };
    }
    o.loja_exponent = 0.5;
    return {std::move(f), std::move(o)};
}

CorpusEntry weighted_l1(const std::string& id, int n, std::vector<double> a) {
    const double amin = *std::min_element(a.begin(), a.end());
    ScalarField f(
        id, n,
        [a](PointView x) {
            double s = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) s += a[i] * std::abs(x[i]);
            return s;
        },
        cube(kTMax / amin), kTMax);
    f.with_gradient([a](PointView x, std::span<double> g) {
         for (std::size_t i = 0; i < x.size(); ++i) g[i] = std::copysign(a[i], x[i]);
     })
        .with_interfaces([](PointView x) {
            double d = std::abs(x[0]);
            for (double v : x) d = std::min(d, std::abs(v));
            return d;
        })
        .with_pieces(
            [](PointView x) {
                int mask = 0;
                for (std::size_t i = 0; i < x.size(); ++i)
                    if (std::signbit(x[i])) mask |= 1 << i;
                return mask;
            },
            1 << n)
        .with_extent([amin](double t) { return t / amin; })
        .with_connected_fibers(false);
    double prod = 1.0, norm = 0.0, fact = 1.0;
    for (int i = 0; i < n; ++i) {
        prod *= a[i];
        norm += a[i] * a[i];
        fact *= i + 1;
    }
    norm = std::sqrt(norm);
    const double scale = std::pow(2.0, n) / (fact * prod);
    FieldOracle o;
    o.volume = [scale, n](double t) { return scale * std::pow(t, n); };
    o.area = [scale, n, norm](double t) { return norm * scale * n * std::pow(t, n - 1); };
    o.grad_norm_on_fiber = [norm](double) { return norm; };
    return {std::move(f), std::move(o)};
}

std::vector<double> positive_params(const std::vector<std::string>& parts, int n,
                                    const std::string& id, std::vector<double> fallback) {
    if (parts.size() < 3) return fallback;
    auto v = parse_list(parts[2], id);
    if (static_cast<int>(v.size()) != n)
        fail(ErrorCode::parameter, "field id " + id + " needs " + std::to_string(n) + " parameters");
    for (double x : v)
        if (!(x > 0.0)) fail(ErrorCode::parameter, "field id " + id + " needs positive parameters");
    return v;
}

} // namespace

CorpusEntry make_field(const std::string& id) {
    const auto parts = split(id, ':');
    if (parts.size() < 2 || parts.size() > 3)
        fail(ErrorCode::unknown_field, "unknown field '" + id + "'; corpus:" + corpus_listing());
    const std::string& name = parts[0];
    static const std::array<const char*, 5> known = {"euclidean_norm", "squared_norm", "even_power",
                                                     "anisotropic_quadratic", "weighted_l1"};
    if (std::find(known.begin(), known.end(), name) == known.end())
        fail(ErrorCode::unknown_field, "unknown field '" + id + "'; corpus:" + corpus_listing());
    const double dn = parse_number(parts[1], id);
    if (dn != std::floor(dn) || dn < 1 || dn > kMaxDim)
        fail(ErrorCode::parameter, "field id " + id + " has invalid dimension");
    const int n = static_cast<int>(dn);

    if (name == "euclidean_norm" || name == "squared_norm") {
        if (parts.size() == 3) fail(ErrorCode::parameter, "field id " + id + " takes no parameters");
        if (name == "euclidean_norm") return euclidean_norm(n);
        return even_power(id, n, 1);
    }
    if (name == "even_power") {
        int k = 2;
        if (parts.size() == 3) {
            const double dk = parse_number(parts[2], id);
            if (dk != std::floor(dk) || dk < 1 || dk > 8)
                fail(ErrorCode::parameter, "field id " + id + " needs an integer power in [1, 8]");
            k = static_cast<int>(dk);
        }
        return even_power(id, n, k);
    }
    if (name == "anisotropic_quadratic") {
        std::vector<double> fallback(n);
        for (int i = 0; i < n; ++i) fallback[i] = std::pow(2.0, i);
        if (n == 2) fallback = {1.0, 4.0};
        return anisotropic_quadratic(id, n, positive_params(parts, n, id, fallback));
    }
    std::vector<double> fallback(n, 1.0 / std::sqrt(static_cast<double>(n)));
    return weighted_l1(id, n, positive_params(parts, n, id, fallback));
}

std::vector<std::string> corpus_ids() {
    return {"euclidean_norm:2",        "euclidean_norm:3",        "euclidean_norm:4",
            "squared_norm:2",          "squared_norm:3",          "even_power:2:2",
            "anisotropic_quadratic:2", "anisotropic_quadratic:3", "weighted_l1:2",
            "weighted_l1:3"};
}

std::vector<CorpusEntry> corpus() {
    std::vector<CorpusEntry> out;
    for (const auto& id : corpus_ids()) out.push_back(make_field(id));
    return out;
}

} // namespace slk

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

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace slk {

using Point = std::vector<double>;
using PointView = std::span<const double>;
using ScalarMap = std::function<double(PointView)>;
using GradientMap = std::function<void(PointView, std::span<double>)>;
using LevelMap = std::function<double(double)>;

/// Largest ambient dimension supported by the fixed-size scratch buffers.
inline constexpr int kMaxDim = 8;

/// Points closer than this to a smoothness interface are treated as lying on it.
inline constexpr double kInterfaceMargin = 1e-12;

/// Axis-aligned cube [lo, hi]^n.
struct Box {
    double lo = -1.0;
    double hi = 1.0;

    double width() const { return hi - lo; }
    double volume(int dim) const;
    bool contains(PointView x) const;
};

/// Scalar field f: R^n -> R with an isolated minimum f(0) = 0, proper on its
/// domain box, and regular on every fiber f = t with t in (0, t_max].
class ScalarField {
public:
    ScalarField(std::string id, int dim, ScalarMap f, Box domain, double t_max);

    ScalarField& with_gradient(GradientMap grad);
    /// Distance to the nearest smoothness interface (or singular point).
    ScalarField& with_interfaces(ScalarMap distance);
    /// Labels the smooth piece containing x; m is the number of fiber
    /// components per level.
    ScalarField& with_pieces(std::function<int(PointView)> piece, int m);
    /// Half-width of the smallest origin-centred cube containing E_t.
    ScalarField& with_extent(LevelMap extent);
    ScalarField& with_connected_fibers(bool connected);

    const std::string& id() const { return id_; }
    int dim() const { return dim_; }
    const Box& domain() const { return domain_; }
    double t_max() const { return t_max_; }
    bool in_t_range(double t) const { return t > 0.0 && t <= t_max_; }
    bool has_exact_gradient() const { return static_cast<bool>(grad_); }
    bool piecewise() const { return static_cast<bool>(piece_); }
    int smooth_components() const { return components_; }
    bool fibers_connected() const { return connected_; }

    /// f(x); throws ErrorCode::domain outside the domain box.
    double evaluate(PointView x) const;
    /// Exact or central-difference gradient; throws on interfaces and
    /// outside the domain.
    Point gradient(PointView x) const;

    // Unchecked hot-path variants used by the estimators.
    double value(PointView x) const { return f_(x); }
    void gradient_into(PointView x, std::span<double> out) const;
    double gradient_norm(PointView x) const;
    void fd_gradient_into(PointView x, std::span<double> out) const;

    bool on_interface(PointView x) const;
    int piece(PointView x) const { return piece_ ? piece_(x) : 0; }

    /// Central-difference step: 1e-5 times the domain diameter.
    double fd_step() const;

    /// Cube containing E_t with a 5% margin, clipped to the domain box.
    Box level_box(double t) const;

private:
    std::string id_;
    int dim_;
    ScalarMap f_;
    GradientMap grad_;
    ScalarMap interface_distance_;
    std::function<int(PointView)> piece_;
    LevelMap extent_;
    Box domain_;
    double t_max_;
    int components_ = 1;
    bool connected_ = true;
};

/// Closed-form ground truth for a corpus field.
struct FieldOracle {
    std::optional<LevelMap> volume;
    std::optional<LevelMap> area;
    /// Value of |grad f| on the fiber f = t when it is constant there.
    std::optional<LevelMap> grad_norm_on_fiber;
    std::optional<double> loja_exponent;
};

struct CorpusEntry {
    ScalarField field;
    FieldOracle oracle;
};

/// Parses "name:dim[:params]" and builds the corpus field, e.g.
/// "euclidean_norm:3", "weighted_l1:2:0.6,0.8", "anisotropic_quadratic:2:1,4".
CorpusEntry make_field(const std::string& id);

/// Default corpus, in a fixed order.
std::vector<CorpusEntry> corpus();
std::vector<std::string> corpus_ids();

/// Volume of the unit n-ball.
double unit_ball_volume(int n);

} // namespace slk

#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace hyperadams {

// Half-dimension k and dimension N = 2k of H^N.
struct DimensionParams {
    int k = 1;
    int N = 2;
    double omega_Nm1 = 0.0;  // |S^{N-1}|

    static DimensionParams critical(int k);
};

// |S^n| = 2 pi^{(n+1)/2} / Gamma((n+1)/2)
double sphere_measure(int n);

// Euclidean radius with its complement 1 - s carried separately; near the
// boundary 1 - s is far below the spacing of doubles next to 1.
struct EuclideanRadius {
    double s = 0.0;
    double c = 1.0;  // 1 - s
    double one_minus_s2() const { return c * (2.0 - c); }
};


// Cell-centred radial mesh. A uniform computational coordinate xi in (0,1) is
// mapped to geodesic radius by r = R sinh(g xi)/sinh(g) (g = 0 gives r = R xi).
// Node i sits at xi = (i + 1/2)/n, faces at xi = j/n.
class RadialGrid {
public:
    RadialGrid(int n_nodes, double r_max = 25.0, double grading = 4.0);

    int size() const { return n_; }
    double r_max() const { return r_max_; }
    double grading() const { return grading_; }
    double h() const { return 1.0 / n_; }

    double r(int i) const { return r_[i]; }
    double s(int i) const { return s_[i]; }
    double s_complement(int i) const { return c_[i]; }
    EuclideanRadius euclidean(int i) const { return {s_[i], c_[i]}; }
    double dr_dxi(int i) const { return dr_[i]; }
    double quad_weight(int i) const { return w_[i]; }

    // faces j = 0..n
    double face_r(int j) const { return map(j * h()); }
    double face_dr_dxi(int j) const { return map_derivative(j * h()); }

    const std::vector<double>& geodesic_nodes() const { return r_; }
    const std::vector<double>& euclidean_nodes() const { return s_; }
    // weights for the integral of f(r) dr over [0, R_max]
    const std::vector<double>& quad_weights() const { return w_; }

    double map(double xi) const;
    double map_derivative(double xi) const;
    double inverse_map(double r) const;

    // largest Euclidean node spacing among nodes with s <= s_limit
    double euclidean_spacing_below(double s_limit) const;

private:
    int n_;
    double r_max_;
    double grading_;
    std::vector<double> r_, s_, c_, dr_, w_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

GridPtr make_grid(int n_nodes, double r_max = 25.0, double grading = 4.0);

class RadialFunction {
public:
    RadialFunction(GridPtr grid, std::vector<double> values,
                   std::optional<double> origin_value = std::nullopt,
                   std::optional<double> support_radius = std::nullopt);

    static RadialFunction zero(GridPtr grid);
    // f takes the geodesic radius; support radius (geodesic) if f vanishes beyond it
    static RadialFunction from_geodesic(GridPtr grid, const std::function<double(double)>& f,
                                        std::optional<double> support_radius = std::nullopt);
    // f takes the Euclidean radius s in [0,1)
    static RadialFunction from_euclidean(GridPtr grid, const std::function<double(double)>& f,
                                         std::optional<double> support_radius = std::nullopt);

    const RadialGrid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    double operator[](int i) const { return values_[i]; }
    int size() const { return static_cast<int>(values_.size()); }

    // Exact when supplied at construction, otherwise even extrapolation in xi^2.
    double origin_value() const { return origin_; }
    bool compactly_supported() const { return support_.has_value(); }
    std::optional<double> support_radius() const { return support_; }
    bool all_finite() const;

    RadialFunction scaled(double a) const;
    RadialFunction plus(const RadialFunction& g, double a = 1.0) const;  // this + a g

private:
    GridPtr grid_;
    std::vector<double> values_;
    double origin_ = 0.0;
    std::optional<double> support_;
};

double metric_factor(double s);

double geodesic_to_euclidean(double r);
double euclidean_to_geodesic(double s);
EuclideanRadius to_euclidean(double r);
double to_geodesic(const EuclideanRadius& x);

// omega_{N-1} sinh^{N-1}(r)
double volume_weight(double r, const DimensionParams& dims);
// omega_{N-1} s^{N-1} (2/(1-s^2))^N / (ds/dr), same quantity written in s
double volume_weight_euclidean_form(const EuclideanRadius& x, const DimensionParams& dims);
// omega_{N-1} s^{N-1} ds/dr, so that dx = this * dr
double euclidean_volume_weight(double r, const DimensionParams& dims);

// Cell weights for integrals against dv_g (hyperbolic) or dx (Euclidean).
// Midpoint rule in xi with end corrections at R_max; near the origin each
// weight is scaled so that the staggered flux difference is exact on the
// leading radial monomial (for N = 2 this is the Euler-Maclaurin correction).
std::vector<double> volume_quadrature_weights(const RadialGrid& grid, const DimensionParams& dims,
                                              bool hyperbolic);
// stencil-to-exact ratio of the flux difference at cell i for the flux xi^N
double origin_consistency_factor(int i, int N);

// Integral of f dv_g over H^N (radial f).
double integrate_radial(const RadialFunction& f, const DimensionParams& dims);
// Integral of f dx over B^N.
double integrate_radial_euclidean(const RadialFunction& f, const DimensionParams& dims);
// Share of the integral of |f| dv_g coming from the outer tenth of [0, R_max].
double tail_fraction(const RadialFunction& f, const DimensionParams& dims);

std::vector<double> hyperbolic_translate(std::span<const double> b, std::span<const double> x);

using Point2 = std::array<double, 2>;
using DiskFunction = std::function<double(const Point2&)>;

Point2 hyperbolic_translate(const Point2& b, const Point2& x);
double hyperbolic_distance(const Point2& x, const Point2& y);

// f o tau_b
DiskFunction pushforward_2d(DiskFunction f, const Point2& b, const DimensionParams& dims);

// Integral of f dv_g over the geodesic disc of radius r_max: Gauss-Legendre
// panels in r, trapezoid in the angle.
double disk_integral(const DiskFunction& f, double r_max, int n_panels, int n_angle);

// Delta_g f(x) in H^2 from a 4th-order Cartesian cross stencil of spacing h.
double laplace_beltrami_2d(const DiskFunction& f, const Point2& x, double h);

} // namespace hyperadams

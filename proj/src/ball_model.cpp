#include "hyperadams/ball_model.hpp"

#include "hyperadams/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <numbers>
#include <string>

namespace hyperadams {

namespace {

constexpr double pi = std::numbers::pi;

// midpoint end corrections from a quadratic fit of F'(endpoint)
constexpr double end_correction[3] = {26.0 / 24.0, 21.0 / 24.0, 25.0 / 24.0};

} // namespace

DimensionParams DimensionParams::critical(int k)
{
    if (k < 1)
        throw DomainError("k must be >= 1, got " + std::to_string(k));
    return {k, 2 * k, sphere_measure(2 * k - 1)};
}

double sphere_measure(int n)
{
    const double a = 0.5 * (n + 1);
    return 2.0 * std::pow(pi, a) / std::tgamma(a);
}

RadialGrid::RadialGrid(int n_nodes, double r_max, double grading)
    : n_(n_nodes), r_max_(r_max), grading_(grading)
{
    if (n_nodes < 8)
        throw ValidationError("n_nodes must be >= 8");
    if (!(r_max > 0.0) || !std::isfinite(r_max))
        throw ValidationError("R_max must be positive");
    if (!(grading >= 0.0) || grading > 300.0)
        throw ValidationError("grading must lie in [0, 300]");

    r_.resize(n_);
    s_.resize(n_);
    c_.resize(n_);
    dr_.resize(n_);
    w_.resize(n_);
    const double hh = h();
    for (int i = 0; i < n_; ++i) {
        const double xi = (i + 0.5) * hh;
        r_[i] = map(xi);
        const EuclideanRadius e = to_euclidean(r_[i]);
        s_[i] = e.s;
        c_[i] = e.c;
        dr_[i] = map_derivative(xi);
        w_[i] = hh * dr_[i];
    }
    for (int j = 0; j < 3; ++j) {
        w_[j] *= end_correction[j];
        w_[n_ - 1 - j] *= end_correction[j];
    }
}

double origin_consistency_factor(int i, int N)
{
    auto p = [N](int j) { return j <= 0 ? 0.0 : std::pow(static_cast<double>(j), N); };
    // the adjoint of the parity-mirrored face stencil sees the flux oddly extended
    const double stencil = i == 0 ? 26.0 * p(1) - p(2)
                                  : p(i - 1) - 27.0 * p(i) + 27.0 * p(i + 1) - p(i + 2);
    const double exact = 24.0 * N * std::pow(i + 0.5, N - 1);
    return stencil / exact;
}

std::vector<double> volume_quadrature_weights(const RadialGrid& g, const DimensionParams& dims,
                                              bool hyperbolic)
{
    const int n = g.size();
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) {
        const double dens = hyperbolic
                                ? volume_weight(g.r(i), dims)
                                : dims.omega_Nm1 * std::pow(g.s(i), dims.N - 1) * 0.5 *
                                      g.euclidean(i).one_minus_s2();
        w[i] = g.h() * g.dr_dxi(i) * dens;
    }
    for (int j = 0; j < 3; ++j)
        w[n - 1 - j] *= end_correction[j];
    for (int i = 0; i < n; ++i) {
        const double f = origin_consistency_factor(i, dims.N);
        if (std::abs(f - 1.0) < 1e-15)
            continue;
        w[i] *= f;
    }
    return w;
}

double RadialGrid::map(double xi) const
{
    if (grading_ == 0.0)
        return r_max_ * xi;
    return r_max_ * std::sinh(grading_ * xi) / std::sinh(grading_);
}

double RadialGrid::map_derivative(double xi) const
{
    if (grading_ == 0.0)
        return r_max_;
    return r_max_ * grading_ * std::cosh(grading_ * xi) / std::sinh(grading_);
}

double RadialGrid::inverse_map(double r) const
{
    if (grading_ == 0.0)
        return r / r_max_;
    return std::asinh(r * std::sinh(grading_) / r_max_) / grading_;
}

double RadialGrid::euclidean_spacing_below(double s_limit) const
{
    double prev = 0.0, worst = 0.0;
    for (int i = 0; i < n_; ++i) {
        worst = std::max(worst, s_[i] - prev);
        if (s_[i] > s_limit)
            break;
        prev = s_[i];
    }
    return worst;
}

GridPtr make_grid(int n_nodes, double r_max, double grading)
{
    return std::make_shared<const RadialGrid>(n_nodes, r_max, grading);
}

RadialFunction::RadialFunction(GridPtr grid, std::vector<double> values,
                               std::optional<double> origin_value,
                               std::optional<double> support_radius)
    : grid_(std::move(grid)), values_(std::move(values)), support_(support_radius)
{
    if (!grid_)
        throw ValidationError("radial function without grid");
    if (static_cast<int>(values_.size()) != grid_->size())
        throw ValidationError("sample count does not match grid");
    // even in xi: interpolate in xi^2 through the first three nodes
    origin_ = origin_value ? *origin_value
                           : 1.171875 * values_[0] - 0.1953125 * values_[1] + 0.0234375 * values_[2];
}

RadialFunction RadialFunction::zero(GridPtr grid)
{
    const int n = grid->size();
    return RadialFunction(std::move(grid), std::vector<double>(n, 0.0), 0.0, 0.0);
}

RadialFunction RadialFunction::from_geodesic(GridPtr grid, const std::function<double(double)>& f,
                                             std::optional<double> support_radius)
{
    std::vector<double> v(grid->size());
    for (int i = 0; i < grid->size(); ++i)
        v[i] = f(grid->r(i));
    const double f0 = f(0.0);
    return RadialFunction(std::move(grid), std::move(v), f0, support_radius);
}

RadialFunction RadialFunction::from_euclidean(GridPtr grid, const std::function<double(double)>& f,
                                              std::optional<double> support_radius)
{
    std::vector<double> v(grid->size());
    for (int i = 0; i < grid->size(); ++i)
        v[i] = f(grid->s(i));
    const double f0 = f(0.0);
    std::optional<double> rs;
    if (support_radius)
        rs = euclidean_to_geodesic(*support_radius);
    return RadialFunction(std::move(grid), std::move(v), f0, rs);
}

bool RadialFunction::all_finite() const
{
    for (double x : values_)
        if (!std::isfinite(x))
            return false;
    return std::isfinite(origin_);
}

RadialFunction RadialFunction::scaled(double a) const
{
    std::vector<double> v(values_);
    for (double& x : v)
        x *= a;
    return RadialFunction(grid_, std::move(v), a * origin_, support_);
}

RadialFunction RadialFunction::plus(const RadialFunction& g, double a) const
{
    if (g.grid_.get() != grid_.get())
        throw ValidationError("radial functions live on different grids");
    std::vector<double> v(values_);
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] += a * g.values_[i];
    std::optional<double> sup;
    if (support_ && g.support_)
        sup = std::max(*support_, *g.support_);
    return RadialFunction(grid_, std::move(v), origin_ + a * g.origin_, sup);
}

double metric_factor(double s)
{
    if (!(s >= 0.0) || s >= 1.0)
        throw DomainError("metric factor needs 0 <= s < 1, got " + std::to_string(s));
    return 2.0 / (1.0 - s * s);
}

double geodesic_to_euclidean(double r)
{
    if (!(r >= 0.0))
        throw DomainError("negative geodesic radius");
    return std::tanh(0.5 * r);
}

double euclidean_to_geodesic(double s)
{
    if (!(s >= 0.0) || s >= 1.0)
        throw DomainError("Euclidean radius outside [0,1)");
    // log((1+s)/(1-s))
    return 2.0 * std::atanh(s);
}

EuclideanRadius to_euclidean(double r)
{
    if (!(r >= 0.0))
        throw DomainError("negative geodesic radius");
    // 1 - tanh(r/2) = 2/(e^r + 1)
    return {std::tanh(0.5 * r), 2.0 / (std::exp(r) + 1.0)};
}

double to_geodesic(const EuclideanRadius& x)
{
    if (x.s < 0.5)
        return euclidean_to_geodesic(x.s);
    if (!(x.c > 0.0))
        throw DomainError("Euclidean radius outside [0,1)");
    return std::log(2.0 - x.c) - std::log(x.c);
}

double volume_weight(double r, const DimensionParams& dims)
{
    if (!(r >= 0.0))
        throw DomainError("negative geodesic radius");
    return dims.omega_Nm1 * std::pow(std::sinh(r), dims.N - 1);
}

double volume_weight_euclidean_form(const EuclideanRadius& x, const DimensionParams& dims)
{
    const double q = x.one_minus_s2();
    const double ds_dr = 0.5 * q;
    return dims.omega_Nm1 * std::pow(x.s, dims.N - 1) * std::pow(2.0 / q, dims.N) * ds_dr;
}

double euclidean_volume_weight(double r, const DimensionParams& dims)
{
    const EuclideanRadius x = to_euclidean(r);
    return dims.omega_Nm1 * std::pow(x.s, dims.N - 1) * 0.5 * x.one_minus_s2();
}

namespace {

void require_finite(const RadialFunction& f)
{
    const auto& v = f.values();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!std::isfinite(v[i]))
            throw NumericalError("non-finite sample at node " + std::to_string(i));
}

} // namespace

double integrate_radial(const RadialFunction& f, const DimensionParams& dims)
{
    require_finite(f);
    const auto w = volume_quadrature_weights(f.grid(), dims, true);
    double sum = 0.0;
    for (int i = 0; i < f.size(); ++i)
        sum += w[i] * f[i];
    return sum;
}

double integrate_radial_euclidean(const RadialFunction& f, const DimensionParams& dims)
{
    require_finite(f);
    const auto w = volume_quadrature_weights(f.grid(), dims, false);
    double sum = 0.0;
    for (int i = 0; i < f.size(); ++i)
        sum += w[i] * f[i];
    return sum;
}

double tail_fraction(const RadialFunction& f, const DimensionParams& dims)
{
    const RadialGrid& g = f.grid();
    const auto w = volume_quadrature_weights(g, dims, true);
    const double cut = 0.9 * g.r_max();
    double total = 0.0, tail = 0.0;
    for (int i = 0; i < g.size(); ++i) {
        const double x = w[i] * std::abs(f[i]);
        total += x;
        if (g.r(i) > cut)
            tail += x;
    }
    return total > 0.0 ? tail / total : 0.0;
}

std::vector<double> hyperbolic_translate(std::span<const double> b, std::span<const double> x)
{
    if (b.size() != x.size())
        throw ValidationError("dimension mismatch in hyperbolic translation");
    double bb = 0.0, xx = 0.0, xb = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        bb += b[i] * b[i];
        xx += x[i] * x[i];
        xb += x[i] * b[i];
    }
    if (bb >= 1.0)
        throw DomainError("translation parameter outside the ball");
    if (xx >= 1.0)
        throw DomainError("point outside the ball");
    const double den = bb * xx + 2.0 * xb + 1.0;
    const double cx = (1.0 - bb) / den;
    const double cb = (xx + 2.0 * xb + 1.0) / den;
    std::vector<double> y(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        y[i] = cx * x[i] + cb * b[i];
    return y;
}

Point2 hyperbolic_translate(const Point2& b, const Point2& x)
{
    const auto y = hyperbolic_translate(std::span<const double>(b), std::span<const double>(x));
    return {y[0], y[1]};
}

double hyperbolic_distance(const Point2& x, const Point2& y)
{
    const double dx = x[0] - y[0], dy = x[1] - y[1];
    const double xx = x[0] * x[0] + x[1] * x[1];
    const double yy = y[0] * y[0] + y[1] * y[1];
    if (xx >= 1.0 || yy >= 1.0)
        throw DomainError("point outside the disc");
    const double q = 2.0 * (dx * dx + dy * dy) / ((1.0 - xx) * (1.0 - yy));
    // acosh(1 + q) without cancellation
    return std::log1p(q + std::sqrt(q * (q + 2.0)));
}

DiskFunction pushforward_2d(DiskFunction f, const Point2& b, const DimensionParams& dims)
{
    if (dims.N != 2)
        throw UnsupportedError("pushforward is implemented for N = 2 only");
    if (b[0] * b[0] + b[1] * b[1] >= 1.0)
        throw DomainError("translation parameter outside the disc");
    return [f = std::move(f), b](const Point2& x) { return f(hyperbolic_translate(b, x)); };
}

double disk_integral(const DiskFunction& f, double r_max, int n_panels, int n_angle)
{
    using gauss = boost::math::quadrature::gauss<double, 20>;
    const double dr = r_max / n_panels;
    const double dth = 2.0 * pi / n_angle;
    double total = 0.0;
    for (int p = 0; p < n_panels; ++p) {
        auto radial = [&](double r) {
            const double s = std::tanh(0.5 * r);
            double ring = 0.0;
            for (int j = 0; j < n_angle; ++j) {
                const double th = j * dth;
                ring += f({s * std::cos(th), s * std::sin(th)});
            }
            return ring * dth * std::sinh(r);
        };
        total += gauss::integrate(radial, p * dr, (p + 1) * dr);
    }
    return total;
}

double laplace_beltrami_2d(const DiskFunction& f, const Point2& x, double h)
{
    const double f0 = f(x);
    double lap = 0.0;
    for (int d = 0; d < 2; ++d) {
        auto at = [&](double t) {
            Point2 y = x;
            y[d] += t;
            return f(y);
        };
        lap += (-at(2 * h) + 16.0 * at(h) - 30.0 * f0 + 16.0 * at(-h) - at(-2 * h)) / (12.0 * h * h);
    }
    const double q = 0.5 * (1.0 - x[0] * x[0] - x[1] * x[1]);
    return q * q * lap;
}

} // namespace hyperadams

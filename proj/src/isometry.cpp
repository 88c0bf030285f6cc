#include "hyperadams/isometry.hpp"

#include "hyperadams/errors.hpp"
#include "hyperadams/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hyperadams {

double GeodesicBump2D::profile(double d, int derivative) const
{
    if (d >= radius)
        return 0.0;
    const double a = 1.0 / (radius * radius);
    const double t = 1.0 - a * d * d;
    const double p = power;
    switch (derivative) {
    case 0:
        return std::pow(t, p);
    case 1:
        return -2.0 * a * d * p * std::pow(t, p - 1);
    case 2:
        return 4.0 * a * a * d * d * p * (p - 1) * std::pow(t, p - 2) - 2.0 * a * p * std::pow(t, p - 1);
    default:
        throw DomainError("profile derivative above 2");
    }
}

double GeodesicBump2D::operator()(const Point2& x) const
{
    return profile(hyperbolic_distance(x, center));
}

double GeodesicBump2D::laplacian(const Point2& x) const
{
    const double d = hyperbolic_distance(x, center);
    if (d < 1e-8)
        return 2.0 * profile(0.0, 2);  // coth(d) phi' -> phi''(0)
    return profile(d, 2) + profile(d, 1) / std::tanh(d);
}

double GeodesicBump2D::l2_squared() const
{
    return 2.0 * std::numbers::pi *
           composite_gauss([this](double d) { return std::pow(profile(d), 2) * std::sinh(d); }, 0.0, radius, 32);
}

std::vector<Point2> default_isometry_probes(const GeodesicBump2D& u)
{
    // points at geodesic distance radius/3 and 2 radius/3 from the centre
    std::vector<Point2> out;
    for (double frac : {1.0 / 3, 2.0 / 3}) {
        const double s = std::tanh(0.5 * frac * u.radius);
        for (int j = 0; j < 3; ++j) {
            const double th = 2.0 * std::numbers::pi * j / 3 + frac;
            out.push_back(hyperbolic_translate(u.center, Point2{s * std::cos(th), s * std::sin(th)}));
        }
    }
    return out;
}

IsometryRow isometry_check_2d(const GeodesicBump2D& u, const Point2& b, const IsometryResolution& res,
                              const std::vector<Point2>& probes)
{
    const auto dims = DimensionParams::critical(1);
    const DiskFunction f = [&u](const Point2& x) { return u(x); };
    const DiskFunction fb = pushforward_2d(f, b, dims);

    IsometryRow row;
    row.b = b;
    row.l2_exact = u.l2_squared();
    row.l2_original = disk_integral([&](const Point2& x) { return std::pow(f(x), 2); }, res.r_max, res.n_panels,
                                    res.n_angle);
    row.l2_translated = disk_integral([&](const Point2& x) { return std::pow(fb(x), 2); }, res.r_max,
                                      res.n_panels, res.n_angle);
    row.integral_rel_error = std::abs(row.l2_translated - row.l2_original) / row.l2_exact;

    const Point2 minus_b{-b[0], -b[1]};
    for (const Point2& y : probes) {
        const Point2 x = hyperbolic_translate(minus_b, y);
        const Point2 tx = hyperbolic_translate(b, x);
        const double exact = u.laplacian(tx);
        row.lap_error_coarse = std::max(row.lap_error_coarse, std::abs(laplace_beltrami_2d(fb, x, res.h) - exact));
        const double fine = laplace_beltrami_2d(fb, x, 0.5 * res.h);
        row.lap_error_fine = std::max(row.lap_error_fine, std::abs(fine - exact));
        row.lap_fd_mismatch = std::max(row.lap_fd_mismatch, std::abs(fine - laplace_beltrami_2d(f, tx, 0.5 * res.h)));
    }
    row.lap_order = std::log2(row.lap_error_coarse / row.lap_error_fine);
    return row;
}

} // namespace hyperadams

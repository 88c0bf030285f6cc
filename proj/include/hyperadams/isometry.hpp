#pragma once

#include "hyperadams/ball_model.hpp"

#include <vector>

namespace hyperadams {

// phi(d(x, center)) in the disc, phi(d) = (1 - (d/radius)^2)^power, d the
// hyperbolic distance. Radial about its centre, so its L2 norm and Laplacian
// have one-dimensional closed forms.
struct GeodesicBump2D {
    Point2 center{0.2, 0.1};
    double radius = 1.5;
    int power = 6;

    double profile(double d, int derivative = 0) const;
    double operator()(const Point2& x) const;
    // phi'' + coth(d) phi'
    double laplacian(const Point2& x) const;
    // 2 pi int phi^2 sinh d dd
    double l2_squared() const;
};

struct IsometryResolution {
    double r_max = 4.0;
    int n_panels = 16;
    int n_angle = 128;
    double h = 0.01;  // finite-difference step; the check also runs at h/2
};

struct IsometryRow {
    Point2 b{0.0, 0.0};
    double l2_exact = 0.0;
    double l2_original = 0.0;
    double l2_translated = 0.0;
    double integral_rel_error = 0.0;  // |translated - original| / exact
    double lap_error_coarse = 0.0;  // max over probes of |FD Delta_g(u o tau_b)(x) - (Delta_g u)(tau_b x)|
    double lap_error_fine = 0.0;
    double lap_order = 0.0;
    double lap_fd_mismatch = 0.0;  // the same with both sides by finite differences, step h/2
};

// probes are points y near the bump centre; the check runs at x = tau_{-b}(y)
IsometryRow isometry_check_2d(const GeodesicBump2D& u, const Point2& b, const IsometryResolution& res,
                              const std::vector<Point2>& probes);
std::vector<Point2> default_isometry_probes(const GeodesicBump2D& u);

} // namespace hyperadams

#pragma once

#include "hyperadams/ball_model.hpp"
#include "hyperadams/jet.hpp"

#include <functional>
#include <vector>

namespace hyperadams {

// One smooth piece of a radial profile on [a, b] in the Euclidean radius.
struct ProfilePiece {
    double a = 0.0;
    double b = 1.0;
    std::function<Jet(const Jet&)> f;
    bool log_scale = false;  // integrate in log s; needs a > 0
};

// Piecewise-analytic radial profile, zero beyond the last piece.
class PiecewiseProfile {
public:
    explicit PiecewiseProfile(std::vector<ProfilePiece> pieces);
    static PiecewiseProfile zero();

    double operator()(double s) const;
    Jet jet(double s, int order) const;
    double support() const { return pieces_.back().b; }
    const std::vector<ProfilePiece>& pieces() const { return pieces_; }

    RadialFunction sample(const GridPtr& grid) const;

private:
    std::vector<ProfilePiece> pieces_;
};

// |grad^k f|^2 in R^N at radius s (pointwise, from jets)
double euclidean_gradk_density(const ProfilePiece& piece, double s, int k, int N);

// Integral of |grad^k f|^2 dx over B^N. Composite Gauss-Legendre per piece.
double euclidean_gradk_energy_exact(const PiecewiseProfile& f, int k, int N, int panels = 24);

// Integral of F(f(s)) dx over B^N, or against dv_g when hyperbolic is set.
double radial_integral_exact(const PiecewiseProfile& f, const std::function<double(double)>& F,
                             int N, bool hyperbolic, int panels = 24);

// Gauss-Legendre (20 points) over [a, b] split into equal panels, or into
// panels equal in log x when log_scale is set.
double composite_gauss(const std::function<double(double)>& g, double a, double b, int panels,
                       bool log_scale = false);

} // namespace hyperadams

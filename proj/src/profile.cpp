#include "hyperadams/profile.hpp"

#include "hyperadams/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>

namespace hyperadams {

PiecewiseProfile::PiecewiseProfile(std::vector<ProfilePiece> pieces) : pieces_(std::move(pieces))
{
    if (pieces_.empty())
        throw ValidationError("profile without pieces");
    if (pieces_.front().a != 0.0)
        throw ValidationError("profile must start at the origin");
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const auto& p = pieces_[i];
        if (!(p.b > p.a) || p.b > 1.0)
            throw ValidationError("bad profile interval");
        if (i > 0 && pieces_[i - 1].b != p.a)
            throw ValidationError("profile pieces must be contiguous");
        if (p.log_scale && !(p.a > 0.0))
            throw ValidationError("log-scaled piece must avoid the origin");
    }
}

PiecewiseProfile PiecewiseProfile::zero()
{
    return PiecewiseProfile({{0.0, 1.0, [](const Jet& s) { return Jet(0.0, s.order()); }, false}});
}

double PiecewiseProfile::operator()(double s) const { return jet(s, 0).value(); }

Jet PiecewiseProfile::jet(double s, int order) const
{
    for (const auto& p : pieces_)
        if (s < p.b)
            return p.f(Jet::variable(s, order));
    return Jet(0.0, order);
}

RadialFunction PiecewiseProfile::sample(const GridPtr& grid) const
{
    std::vector<double> v(grid->size());
    for (int i = 0; i < grid->size(); ++i)
        v[i] = (*this)(grid->s(i));
    std::optional<double> sup;
    if (support() < 1.0)
        sup = euclidean_to_geodesic(support());
    return RadialFunction(grid, std::move(v), (*this)(0.0), sup);
}

double composite_gauss(const std::function<double(double)>& g, double a, double b, int panels,
                       bool log_scale)
{
    using gauss = boost::math::quadrature::gauss<double, 20>;
    double total = 0.0;
    if (log_scale) {
        const double la = std::log(a), lb = std::log(b);
        const double d = (lb - la) / panels;
        auto gt = [&](double t) {
            const double x = std::exp(t);
            return g(x) * x;
        };
        for (int p = 0; p < panels; ++p)
            total += gauss::integrate(gt, la + p * d, la + (p + 1) * d);
    } else {
        const double d = (b - a) / panels;
        for (int p = 0; p < panels; ++p)
            total += gauss::integrate(g, a + p * d, a + (p + 1) * d);
    }
    return total;
}

double euclidean_gradk_density(const ProfilePiece& piece, double s, int k, int N)
{
    const Jet x = Jet::variable(s, k + 1);
    Jet f = piece.f(x);
    Jet xs = x;
    for (int j = 0; j < k / 2; ++j) {
        f = euclidean_laplacian(f, xs, N);
        xs = xs.truncated(f.order());
    }
    if (k % 2 == 1)
        f = f.derivative();
    return f.value() * f.value();
}

double euclidean_gradk_energy_exact(const PiecewiseProfile& f, int k, int N, int panels)
{
    const double om = sphere_measure(N - 1);
    double total = 0.0;
    for (const auto& p : f.pieces()) {
        auto g = [&](double s) { return euclidean_gradk_density(p, s, k, N) * om * std::pow(s, N - 1); };
        total += composite_gauss(g, p.a, p.b, panels, p.log_scale);
    }
    return total;
}

double radial_integral_exact(const PiecewiseProfile& f, const std::function<double(double)>& F,
                             int N, bool hyperbolic, int panels)
{
    const double om = sphere_measure(N - 1);
    double total = 0.0;
    for (const auto& p : f.pieces()) {
        auto g = [&](double s) {
            double w = om * std::pow(s, N - 1);
            if (hyperbolic)
                w *= std::pow(2.0 / (1.0 - s * s), N);
            return F(p.f(Jet(s, 0)).value()) * w;
        };
        total += composite_gauss(g, p.a, p.b, panels, p.log_scale);
    }
    return total;
}

} // namespace hyperadams

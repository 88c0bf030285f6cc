#include "hyperadams/families.hpp"

namespace hyperadams {

PiecewiseProfile polynomial_bump(double a, int q, double amplitude)
{
    const double inv = 1.0 / (a * a);
    return PiecewiseProfile({{0.0, a,
                              [=](const Jet& s) { return amplitude * pow(1.0 - (s * s) * inv, q); },
                              false}});
}

std::vector<NamedProfile> standard_bumps()
{
    std::vector<NamedProfile> out;
    out.push_back({"poly-0.5", polynomial_bump(0.5, 16)});
    out.push_back({"weighted-0.7",
                   PiecewiseProfile({{0.0, 0.7,
                                      [](const Jet& s) {
                                          return (1.0 + 3.0 * s * s) * pow(1.0 - (s * s) * (1.0 / 0.49), 16);
                                      },
                                      false}})});
    out.push_back({"smooth-0.6",
                   PiecewiseProfile({{0.0, 0.6,
                                      [](const Jet& s) {
                                          const Jet one(1.0, s.order());
                                          return exp(-(one / (1.0 - (s * s) * (1.0 / 0.36))));
                                      },
                                      false}})});
    return out;
}

PiecewiseProfile random_bump(Rng& rng, int q, double rho_min, double rho_max)
{
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::uniform_real_distribution<double> rad(rho_min, rho_max);
    const double rho = rad(rng);
    const double c0 = 1.0 + 0.5 * coef(rng);
    const double c1 = coef(rng), c2 = coef(rng), c3 = coef(rng);
    const double inv = 1.0 / (rho * rho);
    return PiecewiseProfile({{0.0, rho,
                              [=](const Jet& s) {
                                  const Jet t = (s * s) * inv;
                                  const Jet poly = c0 + t * (c1 + t * (c2 + c3 * t));
                                  return poly * pow(1.0 - t, q);
                              },
                              false}});
}

} // namespace hyperadams

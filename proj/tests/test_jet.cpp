#include <doctest.h>

#include "hyperadams/jet.hpp"
#include "hyperadams/profile.hpp"

#include <cmath>
#include <numbers>

using namespace hyperadams;

TEST_CASE("jet derivatives match closed forms")
{
    const double x0 = 0.7;
    const Jet x = Jet::variable(x0, 6);

    const Jet e = exp(2.0 * x);
    for (int j = 0; j <= 6; ++j)
        CHECK(e.derivative_value(j) == doctest::Approx(std::pow(2.0, j) * std::exp(2 * x0)).epsilon(1e-13));

    const Jet l = log(x);
    CHECK(l.derivative_value(1) == doctest::Approx(1 / x0).epsilon(1e-14));
    CHECK(l.derivative_value(3) == doctest::Approx(2 / std::pow(x0, 3)).epsilon(1e-13));

    const Jet p = pow(x, 2.5);
    CHECK(p.derivative_value(2) == doctest::Approx(2.5 * 1.5 * std::pow(x0, 0.5)).epsilon(1e-13));

    const Jet q = (1.0 + x * x) / (2.0 - x);
    const double h = 1e-3;
    auto f = [](double t) { return (1 + t * t) / (2 - t); };
    const double fd = (f(x0 + h) - f(x0 - h)) / (2 * h);
    CHECK(q.derivative_value(1) == doctest::Approx(fd).epsilon(1e-6));

    const Jet t = tanh(x);
    CHECK(t.value() == doctest::Approx(std::tanh(x0)).epsilon(1e-15));
    CHECK(t.derivative_value(1) == doctest::Approx(1 - std::tanh(x0) * std::tanh(x0)).epsilon(1e-14));

    const Jet z = pow(Jet::variable(0.0, 4), 3.0);
    CHECK(z.derivative_value(3) == doctest::Approx(6.0));
}

TEST_CASE("radial Laplacians on monomials")
{
    // Delta s^2 = 2N
    for (int N : {2, 4, 6}) {
        const Jet s = Jet::variable(0.4, 4);
        CHECK(euclidean_laplacian(s * s, s, N).value() == doctest::Approx(2.0 * N).epsilon(1e-14));
        // s^{2-N} harmonic away from the origin (N > 2)
        if (N > 2)
            CHECK(std::abs(euclidean_laplacian(pow(s, 2.0 - N), s, N).value()) < 1e-10);
    }
    // Delta_g of r^2 in H^2: 2 + 2 r coth r
    const double r0 = 1.3;
    const Jet r = Jet::variable(r0, 3);
    CHECK(hyperbolic_laplacian(r * r, r, 2).value() ==
          doctest::Approx(2 + 2 * r0 / std::tanh(r0)).epsilon(1e-14));
}

TEST_CASE("exact Dirichlet energy of a simple profile")
{
    // f = 1 - s^2 on [0,1] in R^2: int |f'|^2 dx = int 4 s^2 2 pi s ds = 2 pi
    PiecewiseProfile f({{0.0, 1.0, [](const Jet& s) { return 1.0 - s * s; }, false}});
    CHECK(euclidean_gradk_energy_exact(f, 1, 2) == doctest::Approx(2 * std::numbers::pi).epsilon(1e-14));
    // Delta f = -8 in R^4 on [0,1]: int 64 * 2 pi^2 s^3 ds = 32 pi^2
    CHECK(euclidean_gradk_energy_exact(f, 2, 4) ==
          doctest::Approx(32 * std::numbers::pi * std::numbers::pi).epsilon(1e-13));
}

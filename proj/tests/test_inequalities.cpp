#include <doctest.h>

#include "hyperadams/errors.hpp"
#include "hyperadams/families.hpp"
#include "hyperadams/inequalities.hpp"

#include <cmath>
#include <numbers>

using namespace hyperadams;
constexpr double pi = std::numbers::pi;

namespace {

double rel(double a, double b)
{
    return std::abs(a - b) / std::abs(b);
}

// k (4 pi)^k (k-1)! with integer factorial
double critical_beta0_oracle(int k)
{
    double f = 1.0;
    for (int j = 2; j < k; ++j)
        f *= j;
    return k * std::pow(4.0 * pi, k) * f;
}

} // namespace

TEST_CASE("critical exponent values")
{
    CHECK(rel(beta0(1, 2), 4 * pi) <= 1e-14);
    CHECK(rel(beta0(2, 4), 32 * pi * pi) <= 1e-13);
    for (int k = 1; k <= 8; ++k) {
        CAPTURE(k);
        CHECK(rel(beta0(k, 2 * k), critical_beta0_oracle(k)) <= 1e-13);
        CHECK(rel(beta0(k, 2 * k), 2 * moser_M(k) * k) <= 1e-13);
    }
    // N omega_{N-1}^{1/(N-1)} with omega from the even/odd recursions
    double omega_even = 2 * pi, omega_odd = 4 * pi;  // |S^1|, |S^2|
    for (int N = 2; N <= 10; ++N) {
        const double omega = N % 2 == 0 ? omega_even : omega_odd;
        CAPTURE(N);
        CHECK(rel(beta0(1, N), N * std::pow(omega, 1.0 / (N - 1))) <= 1e-13);
        CHECK(rel(beta0(1, N), moser_alpha(N)) <= 1e-13);
        // |S^{m+2}| = 2 pi |S^m| / (m + 1)
        if (N % 2 == 0)
            omega_even *= 2 * pi / N;
        else
            omega_odd *= 2 * pi / N;
    }
    CHECK_THROWS_AS(beta0(3, 3), DomainError);
    CHECK_THROWS_AS(beta0(0, 3), DomainError);
}

TEST_CASE("subcritical exponent against a direct evaluation")
{
    // k = 2, N = 6: p = 3, p' = 3/2, k even branch
    const double omega5 = pi * pi * pi;
    const double bracket = std::pow(pi, 3) * 4 * std::tgamma(1.0) / std::tgamma(2.0);
    CHECK(rel(beta0(2, 6), 6 / omega5 * std::pow(bracket, 1.5)) <= 1e-14);
    // k = 3, N = 5: p = 5/3, p' = 5/2, odd branch Gamma(2)/Gamma(3/2)
    const double omega4 = 8 * pi * pi / 3;
    const double b3 = std::pow(pi, 2.5) * 8 * 1.0 / (std::sqrt(pi) / 2);
    CHECK(rel(beta0(3, 5), 5 / omega4 * std::pow(b3, 2.5)) <= 1e-13);
}

TEST_CASE("Hardy-Rellich constants")
{
    CHECK(owen_constant(1) == 0.25);
    CHECK(owen_constant(2) == 9.0 / 16.0);
    CHECK(owen_constant(3) == 225.0 / 64.0);
    CHECK_THROWS_AS(owen_constant(0), DomainError);
}

TEST_CASE("Liu constant")
{
    const double s3 = 2 * pi * pi, s4 = 8 * pi * pi / 3;
    CHECK(rel(liu_constant(1, 3), 4 * std::pow(s3, -2.0 / 3) / 3) <= 1e-14);
    CHECK(rel(liu_constant(1, 4), 4 * std::pow(s4, -0.5) / 8) <= 1e-14);
    const double b3 = 4 * pi / 3;
    CHECK(rel(liu_constant(1, 3, OmegaConvention::ball), 4 * std::pow(b3, -2.0 / 3) / 3) <= 1e-14);
    // k = 2, N = 5: 16 |S^5|^{-4/5} / (5 * 1 * (25 - 4)), |S^5| = pi^3
    CHECK(rel(liu_constant(2, 5), 16 * std::pow(pi * pi * pi, -0.8) / (5 * 21)) <= 1e-14);
    for (auto conv : {OmegaConvention::sphere, OmegaConvention::ball})
        for (int k = 1; k <= 3; ++k)
            for (int N = 2 * k + 1; N < 2 * k + 10; ++N)
                CHECK(liu_constant(k, N + 1, conv) < liu_constant(k, N, conv));
    CHECK_THROWS_AS(liu_constant(2, 4), DomainError);
    CHECK(!sharp_constants(2, 4).lambda_k.has_value());
    CHECK(sharp_constants(1, 3).lambda_k.has_value());
    CHECK(sharp_constants(2, 4).poincare_base == 2.25);
}

TEST_CASE("Adams functional")
{
    const auto dims = DimensionParams::critical(1);
    auto g = make_grid(800, 8.0, 1.0);
    CHECK(adams_functional(RadialFunction::zero(g), 4 * pi, dims).value == 0.0);
    CHECK_THROWS_AS(adams_functional(RadialFunction::zero(g), 0.0, dims), DomainError);

    const auto bump = polynomial_bump(0.6, 8, 0.7);
    const auto u = bump.sample(g);
    double prev = 0.0;
    for (double beta : {1.0, 4.0, 4 * pi, 20.0}) {
        const auto a = adams_functional(u, beta, dims);
        CHECK(a.value > prev);
        prev = a.value;
        const double oracle = radial_integral_exact(
            bump, [beta](double f) { return std::expm1(beta * f * f); }, 2, true, 64);
        std::vector<double> errs;
        for (int n : {400, 800, 1600})
            errs.push_back(rel(adams_functional(bump.sample(make_grid(n, 8.0, 1.0)), beta, dims).value, oracle));
        CAPTURE(beta);
        CHECK(errs[2] < 1e-6);
        CHECK(std::log2(errs[0] / errs[1]) > 3.5);
        CHECK(std::log2(errs[1] / errs[2]) > 3.5);
    }
    // monotone in |u|
    CHECK(adams_functional(u.scaled(1.1), 4.0, dims).value > adams_functional(u, 4.0, dims).value);
    const auto big = adams_functional(u.scaled(100.0), 4 * pi, dims);
    CHECK(big.overflow);
    CHECK(std::isinf(big.value));
    std::vector<double> bad(g->size(), 0.0);
    bad[3] = std::nan("");
    CHECK_THROWS_AS(adams_functional(RadialFunction(g, bad), 1.0, dims), DomainError);
}

TEST_CASE("Poincare chain on random bumps")
{
    Rng rng(17);
    for (int K : {1, 2, 3}) {
        const auto dims = DimensionParams::critical(K);
        auto g1 = make_grid(300, 8.0, 1.0), g2 = make_grid(600, 8.0, 1.0);
        OperatorSet o1(dims, g1), o2(dims, g2);
        CHECK(check_poincare_chain(RadialFunction::zero(g1), K, 0, o1).margin == 0.0);
        for (int k = 1; k <= 3; ++k)
            for (int l = 0; l < k; ++l) {
                std::vector<double> c, f;
                for (int t = 0; t < 20; ++t) {
                    const auto b = random_bump(rng, 2 * k + 6);
                    c.push_back(check_poincare_chain(b.sample(g1), k, l, o1).margin);
                    f.push_back(check_poincare_chain(b.sample(g2), k, l, o2).margin);
                }
                const auto slack = fit_slack(c, f, 300);
                for (double m : f)
                    CHECK(m >= -slack.at(600));
            }
    }
    CHECK_THROWS_AS(check_poincare_chain(RadialFunction::zero(make_grid(50)), 1, 1,
                                         OperatorSet(DimensionParams::critical(1), make_grid(50))),
                    DomainError);
}

TEST_CASE("first chain term is the L2 Poincare inequality")
{
    // k = 1, l = 0, N = 2: (1/4) int u^2 <= int |u'|^2 dv_g
    const auto dims = DimensionParams::critical(1);
    auto g = make_grid(800, 8.0, 1.0);
    OperatorSet ops(dims, g);
    const auto bump = polynomial_bump(0.8, 6);
    const auto m = check_poincare_chain(bump.sample(g), 1, 0, ops);
    const double l2 = radial_integral_exact(bump, [](double f) { return f * f; }, 2, true, 64);
    CHECK(rel(m.lhs, 0.25 * l2) < 1e-8);
    CHECK(m.margin > 0.0);
}

TEST_CASE("Hardy-Rellich margins")
{
    auto g = make_grid(800, 10.0, 2.0);
    {
        const auto dims = DimensionParams::critical(1);
        OperatorSet ops(dims, g);
        const auto bump = polynomial_bump(0.5, 6);
        const auto m = check_owen(bump.sample(g), 1, ops);
        // direct: (1/4) int u^2/(1-s)^2 dx and int |u'|^2 dx
        const double lhs = 0.25 * composite_gauss(
                                      [&](double s) { return std::pow(bump(s) / (1 - s), 2) * 2 * pi * s; }, 0.0,
                                      0.5, 40);
        CHECK(rel(m.lhs, lhs) < 1e-6);
        CHECK(rel(m.rhs, euclidean_gradk_energy_exact(bump, 1, 2)) < 1e-6);
        CHECK(m.margin > 0.0);
        CHECK(m.warnings.empty());
        CHECK(check_owen(RadialFunction::zero(g), 1, ops).margin == 0.0);
        const auto edge = check_owen(RadialFunction::from_euclidean(g, [](double s) { return 1 - s; }), 1, ops);
        CHECK(!edge.warnings.empty());
    }
    {
        Rng rng(23);
        const auto dims = DimensionParams::critical(2);
        auto g2 = make_grid(1600, 10.0, 2.0);
        OperatorSet o1(dims, g), o2(dims, g2);
        std::vector<double> c, f;
        for (int t = 0; t < 50; ++t) {
            const auto b = random_bump(rng, 10);
            c.push_back(check_owen(b.sample(g), 2, o1).margin);
            f.push_back(check_owen(b.sample(g2), 2, o2).margin);
        }
        const auto slack = fit_slack(c, f, 800);
        for (double m : f)
            CHECK(m >= -slack.at(1600));
    }
}

TEST_CASE("scalar inequalities")
{
    const auto rep = scalar_inequality_suite();
    CHECK(rep.points == 110001);
    CHECK(rep.failures_first == 0);
    CHECK(rep.failures_second == 0);
    CHECK(rep.equality_at_zero);
    CHECK(rep.min_margin_first == 0.0);
    CHECK(rep.passed());
    const double e = std::exp(1.0);
    CHECK((e - 1) * (e - 1) == doctest::Approx(2.9525).epsilon(1e-4));
    CHECK(e * e - 3 == doctest::Approx(4.3891).epsilon(1e-4));
    CHECK(std::pow(std::exp(-2.0) - 1, 2) <= std::exp(-4.0) + 4 - 1);
}

TEST_CASE("linearized Adams bound")
{
    const auto dims = DimensionParams::critical(1);
    auto g = make_grid(400, 8.0, 1.0);
    OperatorSet ops(dims, g);
    const auto zero = linearized_adams_bound(RadialFunction::zero(g), 0.5, ops, 0.0);
    CHECK(std::isinf(zero.margin));
    CHECK(zero.margin > 0.0);
    CHECK_THROWS_AS(linearized_adams_bound(RadialFunction::zero(g), 1.0, ops, 0.0), DomainError);

    const auto u0 = polynomial_bump(0.7, 8).sample(g);
    double sup = -1e300;
    for (int i = 1; i <= 30; ++i) {
        const auto t = linearized_adams_terms(u0.scaled(0.1 * i), ops);
        sup = std::max(sup, t.excess(0.9, beta0(1, 2)));
    }
    CHECK(std::isfinite(sup));
    for (int i = 1; i <= 30; ++i)
        CHECK(linearized_adams_bound(u0.scaled(0.1 * i), 0.9, ops, sup).margin >= 0.0);
}

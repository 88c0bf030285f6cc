#include "hyperadams/inequalities.hpp"

#include "hyperadams/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace hyperadams {

namespace {

constexpr double pi = std::numbers::pi;

void require_finite(const RadialFunction& u)
{
    if (!u.all_finite())
        throw DomainError("radial function has non-finite samples");
}

// e^x - 1 - x without cancellation near 0
double expm1_minus_x(double x)
{
    if (std::abs(x) < 1e-2) {
        double term = x * x / 2.0, sum = 0.0;
        for (int j = 3; j < 12; ++j) {
            sum += term;
            term *= x / j;
        }
        return sum;
    }
    return std::expm1(x) - x;
}

double gjms_form(const std::vector<double>& u, const OperatorSet& ops)
{
    const auto pu = ops.gjms.apply_factorwise(u);
    const auto& w = ops.hyperbolic.cell_weights();
    double e = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        e += w[i] * pu[i] * u[i];
        scale += std::abs(w[i] * pu[i] * u[i]);
    }
    return clamp_nonnegative(e, scale, "GJMS energy", nullptr);
}

} // namespace

double beta0(int k, int N)
{
    if (k < 1 || k >= N)
        throw DomainError("beta0 needs 1 <= k < N");
    const double p = static_cast<double>(N) / k;
    const double pp = p / (p - 1.0);
    const double omega = sphere_measure(N - 1);
    const double ratio = k % 2 == 1 ? std::tgamma((k + 1) / 2.0) / std::tgamma((N - k + 1) / 2.0)
                                    : std::tgamma(k / 2.0) / std::tgamma((N - k) / 2.0);
    const double bracket = std::pow(pi, N / 2.0) * std::ldexp(1.0, k) * ratio;
    return N / omega * std::pow(bracket, pp);
}

double moser_alpha(int N)
{
    if (N < 2)
        throw DomainError("Moser constant needs N >= 2");
    return N * std::pow(sphere_measure(N - 1), 1.0 / (N - 1));
}

double moser_M(int k)
{
    if (k < 1)
        throw DomainError("k must be positive");
    return std::pow(4.0 * pi, k) * std::tgamma(k) / 2.0;
}

double owen_constant(int k)
{
    if (k < 1)
        throw DomainError("k must be positive");
    double a = 1.0;
    for (int j = 1; j <= k; ++j)
        a *= (2.0 * j - 1.0) * (2.0 * j - 1.0) / 4.0;
    return a;
}

double liu_constant(int k, int N, OmegaConvention convention)
{
    if (k < 1 || N <= 2 * k)
        throw DomainError("Liu constant needs N > 2k");
    const double omega = convention == OmegaConvention::sphere
                             ? sphere_measure(N)
                             : std::pow(pi, N / 2.0) / std::tgamma(N / 2.0 + 1.0);
    double denom = static_cast<double>(N) * (N - 2 * k);
    for (int j = 1; j <= k - 1; ++j)
        denom *= static_cast<double>(N) * N - 4.0 * j * j;
    return std::ldexp(1.0, 2 * k) * std::pow(omega, -2.0 * k / N) / denom;
}

SharpConstants sharp_constants(int k, int N, OmegaConvention convention)
{
    SharpConstants c;
    c.k = k;
    c.N = N;
    c.beta0 = beta0(k, N);
    c.p = static_cast<double>(N) / k;
    c.p_prime = c.p / (c.p - 1.0);
    c.alpha_N = moser_alpha(N);
    c.M = moser_M(k);
    c.A_k = owen_constant(k);
    if (N > 2 * k)
        c.lambda_k = liu_constant(k, N, convention);
    c.poincare_base = 0.25 * (N - 1.0) * (N - 1.0);
    return c;
}

AdamsValue adams_functional(const RadialFunction& u, double beta, const DimensionParams& dims)
{
    if (!(beta > 0.0))
        throw DomainError("beta must be positive");
    require_finite(u);
    AdamsValue out;
    for (int i = 0; i < u.size(); ++i)
        out.max_exponent = std::max(out.max_exponent, beta * u[i] * u[i]);
    if (out.max_exponent > exponent_limit) {
        out.overflow = true;
        out.value = std::numeric_limits<double>::infinity();
        return out;
    }
    const auto w = volume_quadrature_weights(u.grid(), dims, true);
    for (int i = 0; i < u.size(); ++i)
        out.value += w[i] * std::expm1(beta * u[i] * u[i]);
    return out;
}

double SlackModel::at(int n) const
{
    return c * std::pow(1.0 / n, q);
}

SlackModel fit_slack(const std::vector<double>& coarse, const std::vector<double>& fine, int n_coarse,
                     int q)
{
    if (coarse.size() != fine.size())
        throw ValidationError("slack fit needs paired margins");
    double worst = 0.0;
    for (std::size_t i = 0; i < coarse.size(); ++i)
        worst = std::max(worst, std::abs(coarse[i] - fine[i]));
    // error(n_coarse) ~ diff / (1 - 2^-q)
    SlackModel s;
    s.q = q;
    s.c = worst / (1.0 - std::ldexp(1.0, -q)) / std::pow(1.0 / n_coarse, q);
    return s;
}

InequalityMargin check_poincare_chain(const RadialFunction& u, int k, int l, const OperatorSet& ops)
{
    if (l < 0 || l >= k)
        throw DomainError("Poincare chain needs 0 <= l < k");
    require_finite(u);
    const double base = 0.25 * (ops.dims.N - 1.0) * (ops.dims.N - 1.0);
    InequalityMargin m;
    m.lhs = std::pow(base, k - l) * hyperbolic_gradient_term(u.values(), l, ops);
    m.rhs = hyperbolic_gradient_term(u.values(), k, ops);
    m.margin = m.rhs - m.lhs;
    return m;
}

InequalityMargin check_owen(const RadialFunction& u, int k, const OperatorSet& ops)
{
    if (k < 1)
        throw DomainError("k must be positive");
    require_finite(u);
    const RadialGrid& g = u.grid();
    const auto& w = ops.euclidean.cell_weights();
    InequalityMargin m;
    double peak = 0.0, edge = 0.0, weighted = 0.0;
    for (int i = 0; i < g.size(); ++i) {
        const double d = g.s_complement(i);
        weighted += w[i] * u[i] * u[i] / std::pow(d, 2 * k);
        peak = std::max(peak, std::abs(u[i]));
        if (d < 1e-2)
            edge = std::max(edge, std::abs(u[i]));
    }
    if (edge > 1e-8 * peak)
        m.warnings.push_back("support reaches the boundary; the weighted integral may diverge");
    m.lhs = owen_constant(k) * weighted;
    m.rhs = euclidean_gradient_term(u.values(), k, ops);
    m.margin = m.rhs - m.lhs;
    return m;
}

ScalarInequalityReport scalar_inequality_suite(long grid_points, long random_points, double t_min,
                                               double t_max, unsigned long long seed)
{
    ScalarInequalityReport rep;
    rep.min_margin_first = rep.min_margin_second = std::numeric_limits<double>::infinity();
    // computed sides may tie to the last few ulps where the true gap underflows
    constexpr double ulp_slack = 8.0 * std::numeric_limits<double>::epsilon();
    auto test = [&](double t) {
        const double e1 = std::expm1(t);
        const double lhs = e1 * e1;
        const double rhs1 = expm1_minus_x(2.0 * t);
        const double rhs2 = std::abs(std::expm1(2.0 * t));
        if (lhs > rhs1 * (1.0 + ulp_slack))
            ++rep.failures_first;
        if (lhs > rhs2 * (1.0 + ulp_slack))
            ++rep.failures_second;
        // rhs - lhs in cancellation-free form
        rep.min_margin_first = std::min(rep.min_margin_first, 2.0 * expm1_minus_x(t));
        rep.min_margin_second = std::min(rep.min_margin_second, std::abs(e1) * (std::exp(t) + 1.0 - std::abs(e1)));
        if (t == 0.0)
            rep.equality_at_zero = lhs == 0.0 && rhs1 == 0.0 && rhs2 == 0.0;
        ++rep.points;
    };
    for (long i = 0; i < grid_points; ++i)
        test(t_min + (t_max - t_min) * i / (grid_points - 1));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(t_min, t_max);
    for (long i = 0; i < random_points; ++i)
        test(dist(rng));
    test(0.0);
    return rep;
}

double LinearizedAdamsTerms::excess(double delta, double beta0_value) const
{
    return log_integral - energy / (beta0_value * delta);
}

LinearizedAdamsTerms linearized_adams_terms(const RadialFunction& u, const OperatorSet& ops)
{
    require_finite(u);
    const auto& w = ops.hyperbolic.cell_weights();
    double integral = 0.0;
    for (int i = 0; i < u.size(); ++i) {
        if (2.0 * u[i] > exponent_limit)
            throw NumericalError("exponent overflow in e^{2u} at node " + std::to_string(i));
        integral += w[i] * expm1_minus_x(2.0 * u[i]);
    }
    LinearizedAdamsTerms t;
    t.log_integral = integral > 0.0 ? std::log(integral) : -std::numeric_limits<double>::infinity();
    t.energy = gjms_form(u.values(), ops);
    return t;
}

InequalityMargin linearized_adams_bound(const RadialFunction& u, double delta, const OperatorSet& ops,
                                        double calibration)
{
    if (!(delta > 0.0 && delta < 1.0))
        throw DomainError("delta must lie in (0, 1)");
    const auto t = linearized_adams_terms(u, ops);
    InequalityMargin m;
    m.lhs = t.log_integral;
    m.rhs = calibration + t.energy / (beta0(ops.dims.k, ops.dims.N) * delta);
    m.margin = std::isinf(m.lhs) ? std::numeric_limits<double>::infinity() : m.rhs - m.lhs;
    if (std::isinf(m.lhs))
        m.warnings.push_back("zero integral: trivially satisfied");
    return m;
}

} // namespace hyperadams

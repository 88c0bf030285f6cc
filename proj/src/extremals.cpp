#include "hyperadams/extremals.hpp"

#include "hyperadams/errors.hpp"
#include "hyperadams/inequalities.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace hyperadams {

namespace {

constexpr int quadrature_panels = 64;

double factorial(int n)
{
    return std::tgamma(n + 1.0);
}

// l-th derivative of the log branch -2c log t at t = 1
double log_branch_derivative(double c, int l)
{
    if (l == 0)
        return 0.0;
    return 2.0 * c * (l % 2 == 0 ? 1.0 : -1.0) * factorial(l - 1);
}

// b_j, j = k..2k-1, for xi(t) = sum b_j (t-2)^j with xi^(l)(1) = log branch, l < k
std::vector<double> solve_cutoff(double c, int k)
{
    std::vector<double> a(k * k), rhs(k);
    for (int l = 0; l < k; ++l) {
        rhs[l] = log_branch_derivative(c, l);
        for (int col = 0; col < k; ++col) {
            const int j = k + col;
            // d^l/dt^l (t-2)^j at t = 1
            const double d = factorial(j) / factorial(j - l) * ((j - l) % 2 == 0 ? 1.0 : -1.0);
            a[l * k + col] = d;
        }
    }
    std::vector<lapack_int> piv(k);
    const lapack_int info = LAPACKE_dgesv(LAPACK_ROW_MAJOR, k, 1, a.data(), k, piv.data(), rhs.data(), 1);
    if (info != 0)
        throw NumericalError("cutoff interpolation system is singular");
    return rhs;
}

double poly_derivative(const std::vector<double>& b, int k, double w, int l)
{
    // sum_j b_j j!/(j-l)! w^(j-l)
    double s = 0.0;
    for (std::size_t col = 0; col < b.size(); ++col) {
        const int j = k + static_cast<int>(col);
        if (j < l)
            continue;
        s += b[col] * factorial(j) / factorial(j - l) * std::pow(w, j - l);
    }
    return s;
}

} // namespace

double MoserProfile::xi(double t, int derivative) const
{
    if (k == 1)
        return 0.0;
    return poly_derivative(cutoff_coeffs, k, t - 2.0, derivative);
}

double MoserProfile::v(double t) const
{
    if (t < 0.0)
        throw DomainError("negative radius");
    if (t >= 2.0)
        return 0.0;
    if (t >= 1.0)
        return xi(t);
    if (t * t * m >= 1.0)
        return -2.0 * c * std::log(t);
    const double y = 1.0 - m * t * t;
    double s = c * std::log(m), yl = 1.0;
    for (std::size_t l = 0; l < inner_coeffs.size(); ++l) {
        yl *= y;
        s += inner_coeffs[l] * yl;
    }
    return s;
}

MoserProfile build_moser_profile(double m, int k)
{
    if (!(m >= 2.0))
        throw DomainError("m must be at least 2");
    if (k < 1)
        throw DomainError("k must be positive");
    const double M = moser_M(k);
    const double log_m = std::log(m);
    const double c = 1.0 / std::sqrt(2.0 * M * log_m);

    std::vector<double> inner;
    for (int l = 1; l < k; ++l)
        inner.push_back(c / l);
    std::vector<double> cutoff;
    if (k > 1)
        cutoff = solve_cutoff(c, k);

    const double s_in = 0.5 / std::sqrt(m);
    std::vector<ProfilePiece> pieces;
    pieces.push_back({0.0, s_in,
                      [=](const Jet& s) {
                          const Jet y = 1.0 - 4.0 * m * s * s;
                          Jet sum(c * log_m, s.order()), yl(1.0, s.order());
                          for (double a : inner) {
                              yl = yl * y;
                              sum += a * yl;
                          }
                          return sum;
                      },
                      false});
    pieces.push_back({s_in, 0.5, [=](const Jet& s) { return -2.0 * c * log(2.0 * s); }, true});
    if (k > 1)
        pieces.push_back({0.5, 1.0,
                          [=](const Jet& s) {
                              // Horner in w = t - 2 = 2s - 2, then the factor w^k
                              const Jet w = 2.0 * s - 2.0;
                              Jet q(cutoff.back(), s.order());
                              for (int j = static_cast<int>(cutoff.size()) - 2; j >= 0; --j)
                                  q = q * w + cutoff[j];
                              Jet wk(1.0, s.order());
                              for (int j = 0; j < k; ++j)
                                  wk = wk * w;
                              return q * wk;
                          },
                          false});

    MoserProfile p;
    p.m = m;
    p.k = k;
    p.M = M;
    p.c = c;
    p.inner_coeffs = inner;
    p.cutoff_coeffs = cutoff;
    p.profile = PiecewiseProfile(std::move(pieces));

    // junction t = 1/sqrt(m): both branches equal c log m
    const double t0 = 1.0 / std::sqrt(m);
    const double inner_at = c * log_m;  // (1 - m t0^2) = 0
    const double log_at = -2.0 * c * std::log(t0);
    p.branch_mismatch = std::abs(inner_at - log_at);
    if (k > 1) {
        p.branch_mismatch = std::max(p.branch_mismatch, std::abs(p.xi(1.0)));
        for (int l = 0; l < k; ++l) {
            p.condition_residuals.push_back(std::abs(p.xi(1.0, l) - log_branch_derivative(c, l)));
            p.condition_residuals.push_back(std::abs(p.xi(2.0, l)));
        }
        p.kth_jump = p.xi(1.0, k) - log_branch_derivative(c, k);
        for (int i = 0; i <= 1000; ++i)
            p.cutoff_sup = std::max(p.cutoff_sup, std::abs(p.xi(1.0 + i / 1000.0)));
    } else {
        // xi = 0 on [1, 2]: value conditions at both ends
        p.condition_residuals = {0.0, 0.0};
        p.kth_jump = -log_branch_derivative(c, 1);
    }
    return p;
}

MoserProfile build_moser_profile(double m, int k, const GridPtr& grid)
{
    auto p = build_moser_profile(m, k);
    const double s_in = 0.5 / std::sqrt(m);
    const double spacing = grid->euclidean_spacing_below(s_in);
    if (!(spacing < 0.25 / std::sqrt(m)))
        throw DomainError("grid does not resolve the Moser core: spacing " + std::to_string(spacing) +
                          " needs < " + std::to_string(0.25 / std::sqrt(m)));
    p.samples = p.profile.sample(grid);
    return p;
}

MoserEnergy moser_energy(const MoserProfile& p, const DimensionParams& dims)
{
    if (dims.N != 2 * p.k)
        throw UnsupportedError("Moser energy uses the conformal identity, which needs N = 2k");
    MoserEnergy e;
    e.energy = euclidean_gradk_energy_exact(p.profile, p.k, dims.N, quadrature_panels);
    e.deviation_log = std::abs(e.energy - 1.0) * std::log(p.m);
    return e;
}

double moser_adams_functional(const MoserProfile& p, double beta, double energy, bool* overflow)
{
    if (!(beta > 0.0) || !(energy > 0.0))
        throw DomainError("beta and energy must be positive");
    // the profile is largest at the origin
    const double u0 = p.profile(0.0);
    const double top = beta * u0 * u0 / energy;
    if (overflow)
        *overflow = top > exponent_limit;
    if (top > exponent_limit)
        return std::numeric_limits<double>::infinity();
    return radial_integral_exact(
        p.profile, [&](double f) { return std::expm1(beta * f * f / energy); }, 2 * p.k, true,
        quadrature_panels);
}

std::vector<BlowupRecord> blowup_experiment(const std::vector<double>& beta_list,
                                            const std::vector<double>& m_list, int k)
{
    const auto dims = DimensionParams::critical(k);
    std::vector<BlowupRecord> out;
    for (double m : m_list) {
        const auto prof = build_moser_profile(m, k);
        const double energy = moser_energy(prof, dims).energy;
        for (double beta : beta_list) {
            BlowupRecord r;
            r.m = m;
            r.beta = beta;
            r.energy = energy;
            r.functional_value = moser_adams_functional(prof, beta, energy, &r.overflow);
            r.predicted_exponent = beta / (2.0 * prof.M) - k;
            out.push_back(r);
        }
    }
    return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw ValidationError("slope fit needs at least two paired points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<BlowupSummary> summarize_blowup(const std::vector<BlowupRecord>& records)
{
    std::map<double, std::vector<const BlowupRecord*>> by_beta;
    for (const auto& r : records)
        by_beta[r.beta].push_back(&r);
    std::vector<BlowupSummary> out;
    for (const auto& [beta, rows] : by_beta) {
        BlowupSummary s;
        s.beta = beta;
        s.predicted = rows.front()->predicted_exponent;
        std::vector<double> x, y;
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (const auto* r : rows) {
            s.any_overflow = s.any_overflow || r->overflow;
            x.push_back(r->m);
            y.push_back(r->functional_value);
            lo = std::min(lo, r->functional_value);
            hi = std::max(hi, r->functional_value);
        }
        s.max_min_ratio = hi / lo;
        s.slope = s.any_overflow || x.size() < 2 ? std::numeric_limits<double>::quiet_NaN() : loglog_slope(x, y);
        out.push_back(s);
    }
    return out;
}

std::vector<SobolevUpperRow> sobolev_upper_experiment(const std::vector<double>& m_list, int k)
{
    const auto dims = DimensionParams::critical(k);
    const double target = 2.0 * beta0(k, 2 * k) * std::numbers::e;
    std::vector<SobolevUpperRow> out;
    for (double m : m_list) {
        const auto prof = build_moser_profile(m, k);
        SobolevUpperRow row;
        row.m = m;
        row.p = 2.0 * k * std::log(m);
        row.energy = moser_energy(prof, dims).energy;
        // |u|^p scaled by its value at the origin to stay in range
        const double u0 = std::abs(prof.profile(0.0));
        const double p = row.p;
        const double scaled = radial_integral_exact(
            prof.profile,
            [&](double f) { return f == 0.0 ? 0.0 : std::exp(p * (std::log(std::abs(f)) - std::log(u0))); },
            dims.N, true, quadrature_panels);
        row.log_lp = p * std::log(u0) + std::log(scaled);
        row.s_upper = row.energy * std::exp(-2.0 / p * row.log_lp);
        row.p_s_upper = p * row.s_upper;
        row.target = target;
        out.push_back(row);
    }
    return out;
}

} // namespace hyperadams

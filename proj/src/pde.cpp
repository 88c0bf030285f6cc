#include "hyperadams/pde.hpp"

#include "hyperadams/errors.hpp"
#include "hyperadams/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <functional>
#include <optional>

namespace hyperadams {

namespace {

// above this share of int Q^2 dv_g in the outer tenth the data is treated
// as not square-integrable on the truncated ball
constexpr double tail_limit = 1e-3;
constexpr double armijo_c = 1e-4;
constexpr int max_backtracks = 60;

double inf()
{
    return std::numeric_limits<double>::infinity();
}

// e^{2u} where Q2 is nonzero; 0 elsewhere, where it is never used
std::vector<double> exp2u(const std::vector<double>& u, const RadialFunction& q2)
{
    std::vector<double> e(u.size(), 0.0);
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (!std::isfinite(u[i]))
            throw NumericalError("non-finite iterate at node " + std::to_string(i));
        if (q2[i] == 0.0)
            continue;
        if (2.0 * u[i] > exponent_limit)
            throw NumericalError("e^{2u} overflows at node " + std::to_string(i) +
                                 " (u = " + std::to_string(u[i]) + ")");
        e[i] = std::exp(2.0 * u[i]);
    }
    return e;
}

void check_square_integrable(const RadialFunction& q, const DimensionParams& dims, const char* name)
{
    if (!q.all_finite())
        throw ValidationError(std::string(name) + " has non-finite samples");
    std::vector<double> sq(q.size());
    for (int i = 0; i < q.size(); ++i)
        sq[i] = q[i] * q[i];
    const double t = tail_fraction(RadialFunction(q.grid_ptr(), sq), dims);
    if (t > tail_limit)
        throw ValidationError(std::string(name) + " is not square-integrable on the truncated ball: " +
                              std::to_string(t) + " of its L2 mass lies in the outer tenth");
}

std::vector<double> axpy(const std::vector<double>& x, double a, const std::vector<double>& y)
{
    std::vector<double> z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        z[i] = x[i] + a * y[i];
    return z;
}

double weighted_norm(const std::vector<double>& r, const std::vector<double>& w)
{
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i)
        s += w[i] * r[i] * r[i];
    return std::sqrt(s);
}

// int Q2 (e^{2u} - 1) dv_g
double log_argument(const std::vector<double>& u, const PDEProblem& pb)
{
    const auto& w = pb.weights();
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (pb.q2()[i] == 0.0)
            continue;
        if (2.0 * u[i] > exponent_limit)
            throw NumericalError("e^{2u} overflows at node " + std::to_string(i));
        s += w[i] * pb.q2()[i] * std::expm1(2.0 * u[i]);
    }
    return s;
}

// Newton stops making progress once the residual reaches the rounding level
// of P_k u, which grows like h^{-2k}
struct StallWatch {
    double best = std::numeric_limits<double>::infinity();
    int since = 0;
    bool stalled(double r)
    {
        if (r < 0.9 * best) {
            best = r;
            since = 0;
        } else {
            ++since;
        }
        return since >= 5;
    }
};

std::string stall_message(double r)
{
    return "residual stalled at " + std::to_string(r) + ", the rounding level of the discrete operator";
}

struct LineSearch {
    bool accepted = false;
    bool full_step_overflow = false;  // the unit step left the range of e^{2u}
    double step = 0.0;
    double value = 0.0;
    std::vector<double> u;
};

void finish(SolveResult& res, const PDEProblem& pb, double tol, double shift)
{
    res.residual_norm = shift == 0.0 ? residual_norm(res.u.values(), pb)
                                     : residual_norm_shifted(res.u_raw.values(), shift, pb);
    res.converged = res.residual_norm <= tol;
    if (!res.converged)
        res.warnings.push_back("residual " + std::to_string(res.residual_norm) + " above tolerance after " +
                               std::to_string(res.iterations) + " iterations");
}

} // namespace

RadialFunction make_q(const QSpec& spec, const GridPtr& grid)
{
    if (!std::isfinite(spec.amp))
        throw ValidationError("Q amplitude must be finite");
    if (!(spec.width > 0.0))
        throw ValidationError("Q width must be positive");
    const double a = spec.amp, w = spec.width;
    if (spec.family == "gaussian")
        return RadialFunction::from_geodesic(grid, [=](double r) { return a * std::exp(-r * r / (w * w)); });
    if (spec.family == "bump")
        return RadialFunction::from_geodesic(
            grid,
            [=](double r) {
                const double x = r / w;
                return x < 1.0 ? a * std::exp(1.0 - 1.0 / (1.0 - x * x)) : 0.0;
            },
            w);
    if (spec.family == "rational-decay") {
        if (!(spec.exponent > 0.0))
            throw ValidationError("rational-decay exponent must be positive");
        const double p = spec.exponent;
        std::vector<double> v(grid->size());
        for (int i = 0; i < grid->size(); ++i) {
            const auto x = grid->euclidean(i);
            v[i] = a * std::pow(x.one_minus_s2() / (1.0 + x.s * x.s / (w * w)), p);
        }
        return RadialFunction(grid, v, a);
    }
    throw ValidationError("unknown Q family '" + spec.family + "'");
}

const char* to_string(SolveMode mode)
{
    return mode == SolveMode::convex ? "convex" : "log-constrained";
}

PDEProblem::PDEProblem(const DimensionParams& dims, RadialFunction q1, RadialFunction q2, SolveMode mode)
    : q1_(std::move(q1)), q2_(std::move(q2)), mode_(mode)
{
    if (q1_.grid_ptr() != q2_.grid_ptr())
        throw ValidationError("Q1 and Q2 must live on the same grid");
    if (mode_ == SolveMode::convex) {
        for (int i = 0; i < q2_.size(); ++i)
            if (q2_[i] > 0.0)
                throw ValidationError("convex mode needs Q2 <= 0; Q2 = " + std::to_string(q2_[i]) +
                                      " at r = " + std::to_string(q2_.grid().r(i)));
        check_square_integrable(q2_.plus(q1_, -1.0), dims, "Q = Q2 - Q1");
    } else {
        check_square_integrable(q1_, dims, "Q1");
        check_square_integrable(q2_, dims, "Q2");
    }
    ops_ = std::make_shared<const OperatorSet>(dims, q1_.grid_ptr());
}

double PDEProblem::inner(const std::vector<double>& a, const std::vector<double>& b) const
{
    const auto& w = weights();
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += w[i] * a[i] * b[i];
    return s;
}

std::vector<double> pde_residual(const std::vector<double>& u, const PDEProblem& pb, double far_value)
{
    auto r = pb.ops().gjms.apply_factorwise(u, far_value);
    const auto e = exp2u(u, pb.q2());
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] += pb.q1()[i] - pb.q2()[i] * e[i];
    return r;
}

double residual_norm(const std::vector<double>& u, const PDEProblem& pb, double far_value)
{
    return weighted_norm(pde_residual(u, pb, far_value), pb.weights());
}

std::vector<double> pde_residual_shifted(const std::vector<double>& u, double shift, const PDEProblem& pb)
{
    const auto& P = pb.ops().gjms;
    auto r = P.apply_factorwise(u, 0.0);
    // P_k 1 in flux form, where the differences of a constant vanish exactly;
    // the assembled factors leave eps |row| per node
    const auto pc = gjms_apply_flux(pb.ops(), std::vector<double>(u.size(), 1.0), 1.0);
    std::vector<double> v(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        v[i] = u[i] + shift;
    const auto e = exp2u(v, pb.q2());
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] += shift * pc[i] + pb.q1()[i] - pb.q2()[i] * e[i];
    return r;
}

double residual_norm_shifted(const std::vector<double>& u, double shift, const PDEProblem& pb)
{
    return weighted_norm(pde_residual_shifted(u, shift, pb), pb.weights());
}

namespace {

// objective value and the sum of the magnitudes of its terms, which sets
// the rounding level of the value
struct Objective {
    double value = 0.0;
    double magnitude = 0.0;
    double allowance() const { return 64.0 * std::numeric_limits<double>::epsilon() * magnitude; }
};

Objective evaluate_J(const std::vector<double>& u, const PDEProblem& pb)
{
    const auto pu = gjms_apply_flux(pb.ops(), u);
    const auto& w = pb.weights();
    double quad = 0.0, lin = 0.0, nonlin = 0.0, mag = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double q = w[i] * pu[i] * u[i];
        const double l = w[i] * (pb.q2()[i] - pb.q1()[i]) * u[i];
        double nl = 0.0;
        if (pb.q2()[i] != 0.0) {
            if (2.0 * u[i] > exponent_limit)
                throw NumericalError("e^{2u} overflows at node " + std::to_string(i) + " (u = " +
                                     std::to_string(u[i]) + ")");
            // e^{2u} - 2u - 1 without cancellation for small u
            const double x = 2.0 * u[i];
            const double g = std::abs(x) < 1e-3 ? x * x * (0.5 + x * (1.0 / 6 + x * (1.0 / 24 + x / 120)))
                                                : std::expm1(x) - x;
            nl = w[i] * pb.q2()[i] * g;
        }
        quad += q;
        lin += l;
        nonlin += nl;
        mag += 0.5 * std::abs(q) + std::abs(l) + 0.5 * std::abs(nl);
    }
    return {0.5 * quad - lin - 0.5 * nonlin, mag};
}

Objective evaluate_JQ(const std::vector<double>& u, const PDEProblem& pb)
{
    const auto& w = pb.weights();
    double I = 0.0, Imag = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (pb.q2()[i] == 0.0)
            continue;
        if (2.0 * u[i] > exponent_limit)
            throw NumericalError("e^{2u} overflows at node " + std::to_string(i));
        const double t = w[i] * pb.q2()[i] * std::expm1(2.0 * u[i]);
        I += t;
        Imag += std::abs(t);
    }
    if (!(I > 0.0))
        return {inf(), 0.0};
    const auto pu = gjms_apply_flux(pb.ops(), u);
    double quad = 0.0, lin = 0.0, mag = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        quad += w[i] * pu[i] * u[i];
        lin += w[i] * pb.q1()[i] * u[i];
        mag += std::abs(w[i] * pu[i] * u[i]) + 2.0 * std::abs(w[i] * pb.q1()[i] * u[i]);
    }
    return {quad + 2.0 * lin - std::log(I), mag + std::abs(std::log(I)) + Imag / I};
}

// The mode-specific pieces of the descent loop.
struct DescentProblem {
    std::function<Objective(const std::vector<double>&)> objective;
    std::function<std::vector<double>(const std::vector<double>&)> gradient;  // against the W inner product
    double residual_factor = 1.0;  // residual norm = factor * ||gradient||_W
    // Newton direction for the right-hand side -g, empty if unavailable
    std::function<std::optional<std::vector<double>>(const std::vector<double>&, const std::vector<double>&)>
        newton;
    BandMatrix preconditioner;
};

Objective safe_objective(const DescentProblem& dp, const std::vector<double>& u, bool* overflow = nullptr)
{
    try {
        return dp.objective(u);
    } catch (const NumericalError&) {
        if (overflow)
            *overflow = true;
        return {inf(), 0.0};
    }
}

// Armijo backtracking with halving; steps leaving the domain (value +inf)
// are rejected.
LineSearch armijo(const DescentProblem& dp, const std::vector<double>& u, const std::vector<double>& dir,
                  const Objective& f0, double slope)
{
    LineSearch ls;
    double t = 1.0;
    for (int b = 0; b < max_backtracks; ++b, t *= 0.5) {
        auto trial = axpy(u, t, dir);
        const auto v = safe_objective(dp, trial, b == 0 ? &ls.full_step_overflow : nullptr);
        if (std::isfinite(v.value) && v.value <= f0.value + armijo_c * t * slope + f0.allowance()) {
            ls.accepted = true;
            ls.step = t;
            ls.value = v.value;
            ls.u = std::move(trial);
            return ls;
        }
    }
    return ls;
}

// Returns true when the last line search found the unit step outside the
// range of e^{2u}.
bool descend(const DescentProblem& dp, const PDEProblem& pb, std::vector<double>& u, SolveResult& res, double tol,
             int max_iter)
{
    bool blocked = false;
    const auto& w = pb.weights();
    auto f = dp.objective(u);
    res.objective_history.push_back(f.value);
    StallWatch stall;
    for (int it = 0; it < max_iter; ++it) {
        const auto g = dp.gradient(u);
        const double rn = dp.residual_factor * weighted_norm(g, w);
        if (rn <= 0.5 * tol)
            break;
        if (stall.stalled(rn)) {
            res.warnings.push_back(stall_message(rn));
            break;
        }
        std::vector<double> rhs(g.size());
        for (std::size_t i = 0; i < g.size(); ++i)
            rhs[i] = -g[i];

        std::optional<std::vector<double>> dir;
        try {
            dir = dp.newton(u, rhs);
        } catch (const NumericalError& e) {
            if (std::string(e.what()).find("negative curvature") != std::string::npos)
                throw;
            res.warnings.push_back("Newton system failed at iteration " + std::to_string(it));
        }

        LineSearch ls;
        if (dir) {
            const double slope = pb.inner(g, *dir);
            if (slope < 0.0 && -slope <= f.allowance()) {
                // the predicted decrease is below the resolution of the
                // objective: take the full step if the residual drops
                auto trial = axpy(u, 1.0, *dir);
                const auto v = safe_objective(dp, trial, &blocked);
                double rt = inf();
                if (std::isfinite(v.value)) {
                    try {
                        rt = dp.residual_factor * weighted_norm(dp.gradient(trial), w);
                    } catch (const std::exception&) {
                    }
                }
                if (!(rt < rn)) {
                    res.warnings.push_back(stall_message(rn));
                    break;
                }
                ls.accepted = true;
                ls.step = 1.0;
                ls.value = v.value;
                ls.u = std::move(trial);
            } else if (slope < 0.0) {
                ls = armijo(dp, u, *dir, f, slope);
                blocked = ls.full_step_overflow;
            }
        }
        if (!ls.accepted) {
            const auto pg = dp.preconditioner.solve(rhs);
            ls = armijo(dp, u, pg, f, pb.inner(g, pg));
            if (!ls.accepted) {
                res.warnings.push_back("line search failed at iteration " + std::to_string(it));
                break;
            }
        }
        u = std::move(ls.u);
        f = dp.objective(u);
        res.objective_history.push_back(f.value);
        res.iterations = it + 1;
    }
    return blocked;
}

void check_not_blocked(const SolveResult& res, bool blocked)
{
    if (!res.converged && blocked)
        throw NumericalError("Newton steps leave the range of e^{2u} (2u > " + std::to_string(exponent_limit) +
                             "); the solution is not representable in double precision");
}

} // namespace

double functional_J(const std::vector<double>& u, const PDEProblem& pb)
{
    return evaluate_J(u, pb).value;
}

std::vector<double> gradient_J(const std::vector<double>& u, const PDEProblem& pb)
{
    auto g = gjms_apply_flux(pb.ops(), u);
    const auto e = exp2u(u, pb.q2());
    for (std::size_t i = 0; i < g.size(); ++i)
        g[i] += pb.q1()[i] - pb.q2()[i] * e[i];
    return g;
}

std::vector<double> hessian_action_J(const std::vector<double>& u, const std::vector<double>& w,
                                     const PDEProblem& pb)
{
    auto h = gjms_apply_flux(pb.ops(), w);
    const auto e = exp2u(u, pb.q2());
    for (std::size_t i = 0; i < h.size(); ++i)
        h[i] -= 2.0 * pb.q2()[i] * e[i] * w[i];
    return h;
}

SolveResult solve_convex(const PDEProblem& pb, double tol, int max_iter)
{
    if (pb.mode() != SolveMode::convex)
        throw ValidationError("solve_convex needs a convex-mode problem");
    const int n = pb.grid().size();
    const auto& P = pb.ops().gjms.band_matrix;
    const auto& w = pb.weights();

    DescentProblem dp;
    dp.objective = [&](const std::vector<double>& v) { return evaluate_J(v, pb); };
    dp.gradient = [&](const std::vector<double>& v) { return gradient_J(v, pb); };
    dp.newton = [&](const std::vector<double>& u, const std::vector<double>& rhs) {
        const auto e = exp2u(u, pb.q2());
        std::vector<double> d(n);
        for (int i = 0; i < n; ++i)
            d[i] = -2.0 * pb.q2()[i] * e[i];
        auto dir = P.plus_diagonal(d).solve(rhs);
        // convexity witness on the Newton direction
        const auto pd = P.apply(dir);
        double curv = 0.0, scale = 0.0;
        for (int i = 0; i < n; ++i) {
            curv += w[i] * (pd[i] + d[i] * dir[i]) * dir[i];
            scale += w[i] * (std::abs(pd[i] * dir[i]) + std::abs(d[i]) * dir[i] * dir[i]);
        }
        if (curv < -1e-10 * scale)
            throw NumericalError("negative curvature " + std::to_string(curv) +
                                 " with Q2 <= 0: the discrete operator is not positive");
        return std::optional<std::vector<double>>(std::move(dir));
    };
    // preconditioned gradient descent with P + eps I
    dp.preconditioner = P.plus_scaled_identity(1e-8 * std::max(1.0, std::abs(P(0, 0))));

    SolveResult res(RadialFunction::zero(pb.ops().grid));
    res.mode = SolveMode::convex;
    std::vector<double> u(n, 0.0);
    const bool blocked = descend(dp, pb, u, res, tol, max_iter);
    res.u = RadialFunction(pb.ops().grid, u);
    res.u_raw = res.u;
    res.objective = functional_J(u, pb);
    finish(res, pb, tol, 0.0);
    check_not_blocked(res, blocked);
    return res;
}

double functional_JQ(const std::vector<double>& u, const PDEProblem& pb)
{
    return evaluate_JQ(u, pb).value;
}

std::vector<double> gradient_JQ(const std::vector<double>& u, const PDEProblem& pb)
{
    const double I = log_argument(u, pb);
    if (!(I > 0.0))
        throw DomainError("log argument is not positive");
    auto g = gjms_apply_flux(pb.ops(), u);
    const auto e = exp2u(u, pb.q2());
    for (std::size_t i = 0; i < g.size(); ++i)
        g[i] = 2.0 * g[i] + 2.0 * pb.q1()[i] - 2.0 * pb.q2()[i] * e[i] / I;
    return g;
}

SolveResult solve_log_constrained(const PDEProblem& pb, double tol, int max_iter)
{
    if (pb.mode() != SolveMode::log_constrained)
        throw ValidationError("solve_log_constrained needs a log-constrained problem");
    const int n = pb.grid().size();
    const BandMatrix P2 = pb.ops().gjms.band_matrix.scaled(2.0);

    // starting point t Q2 / max|Q2|: the log integrand Q2 (e^{2 t Q2/q} - 1) is >= 0
    double qmax = 0.0;
    for (int i = 0; i < n; ++i)
        qmax = std::max(qmax, std::abs(pb.q2()[i]));
    if (qmax == 0.0)
        throw ValidationError("no feasible start: Q2 vanishes, so int Q2 (e^{2u} - 1) dv_g is never positive");
    std::vector<double> u(n);
    double I = 0.0;
    for (double t = 0.1; t < 1e3; t *= 2.0) {
        for (int i = 0; i < n; ++i)
            u[i] = t * pb.q2()[i] / qmax;
        I = log_argument(u, pb);
        if (I > 0.0)
            break;
    }
    if (!(I > 0.0))
        throw ValidationError("no feasible start: int Q2 (e^{2u} - 1) dv_g stays non-positive");

    DescentProblem dp;
    dp.objective = [&](const std::vector<double>& v) { return evaluate_JQ(v, pb); };
    dp.gradient = [&](const std::vector<double>& v) { return gradient_JQ(v, pb); };
    // the gradient is twice the residual of the shifted function
    dp.residual_factor = 0.5;
    dp.newton = [&](const std::vector<double>& u, const std::vector<double>& rhs) {
        // H = B + z <z, .>_W / I^2 with B = 2P + diag(-4 Q2 e^{2u} / I), z = 2 Q2 e^{2u};
        // solved by Sherman-Morrison
        const double I = log_argument(u, pb);
        const auto e = exp2u(u, pb.q2());
        std::vector<double> d(n), z(n);
        for (int i = 0; i < n; ++i) {
            d[i] = -4.0 * pb.q2()[i] * e[i] / I;
            z[i] = 2.0 * pb.q2()[i] * e[i];
        }
        const BandMatrix B = P2.plus_diagonal(d);
        const auto br = B.solve(rhs);
        const auto bz = B.solve(z);
        const double denom = 1.0 + pb.inner(z, bz) / (I * I);
        if (!(std::abs(denom) > 1e-12))
            return std::optional<std::vector<double>>();
        const double coef = pb.inner(z, br) / (I * I) / denom;
        return std::optional<std::vector<double>>(axpy(br, -coef, bz));
    };
    dp.preconditioner = P2.plus_scaled_identity(1e-8 * std::max(1.0, std::abs(P2(0, 0))));

    SolveResult res(RadialFunction::zero(pb.ops().grid));
    res.mode = SolveMode::log_constrained;
    const bool blocked = descend(dp, pb, u, res, tol, max_iter);
    I = log_argument(u, pb);
    res.objective = functional_JQ(u, pb);
    res.additive_constant = -0.5 * std::log(I);
    res.u_raw = RadialFunction(pb.ops().grid, u);
    res.u = res.u_raw.plus(RadialFunction(pb.ops().grid, std::vector<double>(n, res.additive_constant)));
    finish(res, pb, tol, res.additive_constant);
    check_not_blocked(res, blocked);
    return res;
}

SolveResult solve(const PDEProblem& problem, double tol, int max_iter)
{
    return problem.mode() == SolveMode::convex ? solve_convex(problem, tol, max_iter)
                                               : solve_log_constrained(problem, tol, max_iter);
}

} // namespace hyperadams

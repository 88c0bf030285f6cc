// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "hyperadams/cli/experiments.hpp"
#include "hyperadams/errors.hpp"
#include "hyperadams/extremals.hpp"
#include "hyperadams/families.hpp"
#include "hyperadams/inequalities.hpp"
#include "hyperadams/isometry.hpp"
#include "hyperadams/operators.hpp"
#include "hyperadams/pde.hpp"
#include "hyperadams/profile.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

using namespace hyperadams;
namespace fs = std::filesystem;

namespace {

constexpr double pi = std::numbers::pi;

// tolerances
constexpr double tol_beta_4pi = 1e-14;
constexpr double tol_beta_critical = 1e-13;
constexpr double tol_beta_moser = 1e-13;
constexpr double tol_conformal = 1e-4;
constexpr double scheme_order = 4.0;
constexpr double tol_spline = 1e-10;
constexpr double median_factor = 3.0;
constexpr double roundoff_floor = 1e-9;  // k = 1 products are pure rounding
constexpr double tol_slope = 0.10;        // relative
constexpr double max_min_bound = 10.0;
constexpr double tol_sobolev = 0.15;      // relative
constexpr double tol_zero_residual = 1e-12;
constexpr double tol_linear = 1e-8;
constexpr double tol_residual = 1e-8;
constexpr double tol_gradient = 1e-6;
constexpr double tol_isometry_integral = 1e-10;
constexpr double tol_isometry_laplacian = 1e-5;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok)
            pass = false;
        if (!detail.empty())
            detail += "; ";
        detail += what + (ok ? "" : " [violated]");
    }
};

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

double rel(double a, double b)
{
    return std::abs(a - b) / std::abs(b);
}

// ------------------------------------------------------------------------ 1

Outcome constants_suite()
{
    Outcome o;
    o.require(rel(beta0(1, 2), 4 * pi) <= tol_beta_4pi, "beta0(1,2)/4pi-1 = " + fmt(rel(beta0(1, 2), 4 * pi)));
    double worst = 0.0;
    double fact = 1.0;  // (k-1)!
    for (int k = 1; k <= 8; ++k) {
        if (k > 1)
            fact *= k - 1;
        const double oracle = k * std::pow(4 * pi, k) * fact;
        worst = std::max({worst, rel(beta0(k, 2 * k), oracle), rel(2 * moser_M(k) * k, oracle)});
    }
    o.require(worst <= tol_beta_critical, "max beta0(k,2k) error k<=8 " + fmt(worst));
    // |S^{N-1}| by the two-step recursion from |S^1| = 2 pi, |S^2| = 4 pi
    double worst_n = 0.0, s_even = 2 * pi, s_odd = 4 * pi;
    for (int N = 2; N <= 10; ++N) {
        const double omega = N % 2 == 0 ? s_even : s_odd;
        worst_n = std::max(worst_n, rel(beta0(1, N), N * std::pow(omega, 1.0 / (N - 1))));
        (N % 2 == 0 ? s_even : s_odd) *= 2 * pi / N;
    }
    o.require(worst_n <= tol_beta_moser, "max beta0(1,N) error N<=10 " + fmt(worst_n));
    o.require(owen_constant(1) == 0.25 && owen_constant(2) == 9.0 / 16.0, "A(1) = 1/4, A(2) = 9/16 exactly");
    return o;
}

// ------------------------------------------------------------------------ 2

Outcome conformal_identity()
{
    Outcome o;
    double worst_err = 0.0, worst_order = 1e300;
    for (int k : {1, 2, 3}) {
        const auto dims = DimensionParams::critical(k);
        for (const auto& b : standard_bumps()) {
            const double exact = euclidean_gradk_energy_exact(b.profile, k, dims.N, 64);
            std::vector<double> err;
            for (int n : {400, 800, 1600}) {
                auto g = make_grid(n, 4.0, 1.0);
                err.push_back(rel(gjms_energy(b.profile.sample(g), OperatorSet(dims, g)).gjms_energy, exact));
            }
            worst_err = std::max(worst_err, err.back());
            worst_order = std::min({worst_order, std::log2(err[0] / err[1]), std::log2(err[1] / err[2])});
        }
    }
    o.require(worst_err <= tol_conformal, "max finest rel error " + fmt(worst_err));
    o.require(worst_order >= scheme_order - 0.5, "min observed order " + fmt(worst_order));
    return o;
}

// ------------------------------------------------------------------------ 3

Outcome poincare_owen()
{
    Outcome o;
    const auto c = cli::parse_config("experiment = inequalities\nk = 1,2,3\nn_nodes = 300\nR_max = 8\ngrading = 1\n"
                                     "samples = 100\nseed = 17\n");
    const auto r = cli::run_experiment(c, 1);
    long checked = 0;
    double worst = 1e300;
    for (const auto& row : r.table.rows) {
        ++checked;
        const double margin = std::get<double>(row[6]), slack = std::get<double>(row[8]);
        worst = std::min(worst, margin + slack);
    }
    const long violations = r.summary["violations"].get<long>();
    o.require(checked == 100 * 9, std::to_string(checked) + " margins (6 chain pairs, 3 Hardy-Rellich)");
    o.require(violations == 0, std::to_string(violations) + " below -slack, min margin+slack " + fmt(worst));
    return o;
}

// ------------------------------------------------------------------------ 4

Outcome moser_fidelity()
{
    Outcome o;
    double worst_cond = 0.0, worst_jet = 0.0;
    for (int k : {1, 2}) {
        std::vector<double> prod;
        for (double m : {1e2, 1e3, 1e4}) {
            const auto p = build_moser_profile(m, k);
            worst_cond = std::max(worst_cond, p.branch_mismatch);
            for (double x : p.condition_residuals)
                worst_cond = std::max(worst_cond, x);
            // derivative continuity up to order k-1 at every junction, from the jets
            const auto& pieces = p.profile.pieces();
            for (std::size_t j = 0; j + 1 < pieces.size(); ++j) {
                const double s = pieces[j].b;
                const Jet a = pieces[j].f(Jet::variable(s, k)), b = pieces[j + 1].f(Jet::variable(s, k));
                for (int l = 0; l < k; ++l)
                    worst_jet = std::max(worst_jet, std::abs(a.derivative_value(l) - b.derivative_value(l)) /
                                                        std::max(1.0, std::abs(a.derivative_value(l))));
            }
            prod.push_back(moser_energy(p, DimensionParams::critical(k)).deviation_log);
        }
        auto sorted = prod;
        std::sort(sorted.begin(), sorted.end());
        const double median = sorted[1], top = sorted.back();
        const double floor = k == 1 ? roundoff_floor : 0.0;
        o.require(top <= median_factor * median + floor,
                  "k=" + std::to_string(k) + " |E-1|log m = " + fmt(prod[0]) + "," + fmt(prod[1]) + "," +
                      fmt(prod[2]));
    }
    o.require(worst_cond <= tol_spline, "max junction/boundary residual " + fmt(worst_cond));
    o.require(worst_jet <= tol_spline, "max derivative jump below order k " + fmt(worst_jet));
    return o;
}

// ------------------------------------------------------------------------ 5

Outcome blowup_rate()
{
    Outcome o;
    const std::vector<double> ms{1e3, 1e4, 1e5, 1e6};
    const auto sums = summarize_blowup(blowup_experiment({0.9 * 4 * pi, 1.1 * 4 * pi}, ms, 1));
    const auto& below = sums[0];
    const auto& above = sums[1];
    const double target = above.predicted;  // beta/(2M) - 1
    o.require(!above.any_overflow && rel(above.slope, target) <= tol_slope,
              "beta=1.1*4pi slope " + fmt(above.slope) + " vs " + fmt(target) + " (rel " +
                  fmt(rel(above.slope, target)) + ")");
    o.require(below.max_min_ratio < max_min_bound, "beta=0.9*4pi max/min " + fmt(below.max_min_ratio));
    return o;
}

// ------------------------------------------------------------------------ 6

Outcome sobolev_asymptotics()
{
    Outcome o;
    const auto rows = sobolev_upper_experiment({1e2, 1e3, 1e4, 1e5, 1e6}, 1);
    const double target = 2 * beta0(1, 2) * std::numbers::e;
    const double last = rows.back().p_s_upper;
    o.require(rel(last, target) <= tol_sobolev,
              "p S_upper at m=1e6 " + fmt(last) + " vs 2 beta0 e = " + fmt(target) + " (rel " + fmt(rel(last, target)) +
                  ")");
    bool toward = true;
    for (std::size_t i = 1; i < rows.size(); ++i)
        toward = toward && std::abs(rows[i].p_s_upper - target) < std::abs(rows[i - 1].p_s_upper - target);
    o.require(toward, "gap shrinks monotonically over m = 1e2..1e6");
    return o;
}

// ------------------------------------------------------------------------ 7

Outcome scalar_inequalities()
{
    Outcome o;
    const auto r = scalar_inequality_suite(100000, 10000, -50.0, 50.0, 1);
    o.require(r.points >= 100000, std::to_string(r.points) + " points");
    o.require(r.failures_first == 0 && r.failures_second == 0,
              "failures " + std::to_string(r.failures_first) + "," + std::to_string(r.failures_second));
    o.require(r.equality_at_zero, "equality at t = 0");
    return o;
}

// ------------------------------------------------------------------------ 8

// P_k u + Q1 - Q2 e^{2u} rebuilt from the individual assembled factors
double independent_residual(const SolveResult& r, const PDEProblem& pb)
{
    std::vector<double> v = r.u_raw.values();
    double c = 0.0;
    const auto& factors = pb.ops().gjms.factors;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
        v = it->apply(v, c);
        c *= it->constant_response;
    }
    double s = 0.0;
    for (int i = 0; i < r.u.size(); ++i) {
        const double x = v[i] + pb.q1()[i] - pb.q2()[i] * std::exp(2 * r.u[i]);
        s += pb.weights()[i] * x * x;
    }
    return std::sqrt(s);
}

Outcome pde_solver()
{
    Outcome o;
    auto g = make_grid(300, 8.0, 1.0);
    auto q = [&](double amp) { return make_q({"gaussian", amp, 1.0, 2.0}, g); };
    {
        double worst = 0.0;
        bool zero = true;
        for (int k : {1, 2, 3}) {
            const auto r = solve(PDEProblem(DimensionParams::critical(k), q(0.0), q(0.0), SolveMode::convex), 1e-10, 50);
            worst = std::max(worst, r.residual_norm);
            zero = zero && std::all_of(r.u.values().begin(), r.u.values().end(), [](double x) { return x == 0.0; });
        }
        o.require(zero && worst < tol_zero_residual, "(a) Q1=Q2=0: u = 0, residual " + fmt(worst));
    }
    {
        double worst = 0.0;
        for (int k : {1, 2}) {
            const PDEProblem pb(DimensionParams::critical(k), q(1.0), q(0.0), SolveMode::convex);
            const auto r = solve(pb, k == 1 ? 1e-10 : 1e-8, 50);
            std::vector<double> rhs(g->size());
            for (int i = 0; i < g->size(); ++i)
                rhs[i] = -pb.q1()[i];
            const auto direct = pb.ops().gjms.band_matrix.solve(rhs);
            double umax = 0.0, diff = 0.0;
            for (int i = 0; i < g->size(); ++i) {
                umax = std::max(umax, std::abs(direct[i]));
                diff = std::max(diff, std::abs(r.u[i] - direct[i]));
            }
            worst = std::max(worst, diff / umax);
        }
        o.require(worst <= tol_linear, "(b) linear vs banded direct, rel " + fmt(worst));
    }
    {
        double worst = 0.0;
        bool conv = true;
        for (int k : {1, 2}) {
            const PDEProblem pb(DimensionParams::critical(k), q(0.5), q(-1.0), SolveMode::convex);
            const auto r = solve(pb, k == 1 ? 1e-10 : 1e-8, 100);
            conv = conv && r.converged;
            worst = std::max(worst, independent_residual(r, pb));
        }
        o.require(conv && worst <= tol_residual, "(c) convex k=1,2 converged, independent residual " + fmt(worst));
    }
    {
        Rng rng(11);
        double worst = 0.0;
        for (int k : {1, 2}) {
            const PDEProblem pb(DimensionParams::critical(k), q(0.5), q(-1.0), SolveMode::convex);
            for (int t = 0; t < 10; ++t) {
                const auto u = random_bump(rng, 8).sample(g).scaled(0.5).values();
                const auto w = random_bump(rng, 8).sample(g).scaled(0.5).values();
                const double h = 1e-3;
                auto shifted = [&](double s) {
                    auto v = u;
                    for (std::size_t i = 0; i < v.size(); ++i)
                        v[i] += s * w[i];
                    return v;
                };
                const double fd = (functional_J(shifted(h), pb) - functional_J(shifted(-h), pb)) / (2 * h);
                const double an = pb.inner(gradient_J(u, pb), w);
                worst = std::max(worst, std::abs(fd - an) / (1 + std::abs(fd)));
            }
        }
        o.require(worst <= tol_gradient, "gradient vs central differences " + fmt(worst));
    }
    return o;
}

// ------------------------------------------------------------------------ 9

Outcome isometry()
{
    Outcome o;
    const GeodesicBump2D u;
    const auto probes = default_isometry_probes(u);
    Rng rng(29);
    std::uniform_real_distribution<double> rad(0.0, 0.5), ang(0.0, 2 * pi);
    double worst_int = 0.0, worst_lap = 0.0, min_order = 1e300;
    for (int t = 0; t < 10; ++t) {
        const double r = rad(rng), a = ang(rng);
        const auto row = isometry_check_2d(u, {r * std::cos(a), r * std::sin(a)}, IsometryResolution{}, probes);
        worst_int = std::max(worst_int, row.integral_rel_error);
        worst_lap = std::max(worst_lap, row.lap_error_fine);
        min_order = std::min(min_order, row.lap_order);
    }
    o.require(worst_int <= tol_isometry_integral, "max L2 rel difference " + fmt(worst_int));
    o.require(worst_lap <= tol_isometry_laplacian && min_order >= scheme_order - 0.5,
              "Laplacian commutes: max error " + fmt(worst_lap) + ", FD order " + fmt(min_order));
    return o;
}

// ----------------------------------------------------------------------- 10

std::string body_of(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    const auto text = s.str();
    return text.substr(text.find('\n') + 1);
}

Outcome determinism()
{
    Outcome o;
    const auto base = fs::temp_directory_path() / "hyperadams_acceptance";
    fs::remove_all(base);
    const char* configs[] = {
        "experiment = inequalities\nk = 1,2,3\nn_nodes = 300\nR_max = 8\nsamples = 20\nseed = 5\n",
        "experiment = isometry-2d\nk = 1\nb_count = 10\nseed = 9\n",
        "experiment = solve-pde\nk = 2\nn_nodes = 300\nQ1 = gaussian,0.5,1\nQ2 = gaussian,-1,1\ntol = 1e-8\n",
        "experiment = blowup\nk = 1\n",
    };
    int identical = 0, total = 0;
    for (const char* text : configs) {
        const auto c = cli::parse_config(text);
        // two runs with different thread counts
        const auto a = cli::run_experiment(c, 1);
        const auto b = cli::run_experiment(c, 4);
        cli::write_report(a, (base / "a").string());
        cli::write_report(b, (base / "b").string());
        const auto name = a.name + ".csv";
        ++total;
        if (body_of(base / "a" / name) == body_of(base / "b" / name) && !body_of(base / "a" / name).empty())
            ++identical;
    }
    fs::remove_all(base);
    o.require(identical == total, std::to_string(identical) + "/" + std::to_string(total) +
                                      " CSV bodies byte-identical across runs");
    return o;
}

struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> check;
};

} // namespace

int main()
{
    const std::vector<Criterion> criteria = {
        {1, "constants", 1.0, constants_suite},
        {2, "conformal energy identity", 60.0, conformal_identity},
        {3, "Poincare chain and Hardy-Rellich margins", 60.0, poincare_owen},
        {4, "Moser sequence fidelity", 60.0, moser_fidelity},
        {5, "blow-up rate", 300.0, blowup_rate},
        {6, "best-constant asymptotics", 300.0, sobolev_asymptotics},
        {7, "scalar inequalities", 1.0, scalar_inequalities},
        {8, "PDE solver", 120.0, pde_solver},
        {9, "isometry invariance N=2", 60.0, isometry},
        {10, "determinism", 600.0, determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (t > c.limit_seconds)
            o.require(false, "time " + fmt(t) + " s over " + fmt(c.limit_seconds) + " s");
        failed += o.pass ? 0 : 1;
        std::printf("criterion %2d: %s  %s (%.2f s): %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, t,
                    o.detail.c_str());
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}

#include <doctest.h>

#include "hyperadams/errors.hpp"
#include "hyperadams/extremals.hpp"
#include "hyperadams/inequalities.hpp"
#include "hyperadams/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace hyperadams;
constexpr double pi = std::numbers::pi;

TEST_CASE("Moser profile values")
{
    for (int k : {1, 2, 3}) {
        for (double m : {1e2, 1e4}) {
            const auto p = build_moser_profile(m, k);
            const double M = moser_M(k), L = std::log(m);
            double harmonic = 0.0;
            for (int l = 1; l < k; ++l)
                harmonic += 1.0 / l;
            CAPTURE(k);
            CAPTURE(m);
            CHECK(p.v(0.0) == doctest::Approx(std::sqrt(L / (2 * M)) + harmonic / std::sqrt(2 * M * L)).epsilon(1e-14));
            CHECK(p.profile(0.0) == doctest::Approx(p.v(0.0)).epsilon(1e-14));
            CHECK(p.v(1.0 / std::sqrt(m)) == doctest::Approx(std::sqrt(L / (2 * M))).epsilon(1e-14));
            CHECK(std::abs(p.v(1.0)) < 1e-15);
            CHECK(p.v(2.0) == 0.0);
            CHECK(p.branch_mismatch <= 1e-10 * std::sqrt(L));
            CHECK(p.condition_residuals.size() == static_cast<std::size_t>(2 * k));
            for (double r : p.condition_residuals)
                CHECK(r <= 1e-10);
            // u(s) = v(2s)
            for (double s : {0.01, 0.2, 0.45, 0.6, 0.9})
                CHECK(p.profile(s) == doctest::Approx(p.v(2 * s)).epsilon(1e-13));
        }
    }
    const auto p1 = build_moser_profile(100, 1);
    CHECK(p1.inner_coeffs.empty());
    CHECK(p1.cutoff_coeffs.empty());
    CHECK(p1.profile.support() == 0.5);
    CHECK_THROWS_AS(build_moser_profile(1.5, 1), DomainError);
}

TEST_CASE("branches match to order k-1 at both junctions")
{
    for (int k : {1, 2, 3}) {
        const double m = 1e3;
        const auto p = build_moser_profile(m, k);
        const auto& pieces = p.profile.pieces();
        for (std::size_t j = 0; j + 1 < pieces.size(); ++j) {
            const double s = pieces[j].b;
            const Jet left = pieces[j].f(Jet::variable(s, k));
            const Jet right = pieces[j + 1].f(Jet::variable(s, k));
            for (int l = 0; l < k; ++l) {
                const double scale = std::max(1.0, std::abs(left.derivative_value(l)));
                CAPTURE(k);
                CAPTURE(j);
                CAPTURE(l);
                CHECK(std::abs(left.derivative_value(l) - right.derivative_value(l)) <= 1e-10 * scale);
            }
        }
    }
}

TEST_CASE("cutoff magnitude scales like 1/sqrt(log m)")
{
    for (int k : {2, 3}) {
        std::vector<double> c;
        for (double m : {1e2, 1e3, 1e4, 1e6})
            c.push_back(build_moser_profile(m, k).cutoff_sup * std::sqrt(std::log(m)));
        for (double x : c)
            CHECK(x == doctest::Approx(c.front()).epsilon(1e-12));
        // the k-th derivative jump carries the same factor
        const double j2 = build_moser_profile(1e2, k).kth_jump * std::sqrt(std::log(1e2));
        const double j4 = build_moser_profile(1e4, k).kth_jump * std::sqrt(std::log(1e4));
        CHECK(j2 == doctest::Approx(j4).epsilon(1e-12));
    }
}

TEST_CASE("Moser energies")
{
    // k = 1: the log branch alone carries energy 4 pi c^2 log m = 1
    for (double m : {1e2, 1e3, 1e4, 1e6})
        CHECK(moser_energy(build_moser_profile(m, 1), DimensionParams::critical(1)).energy ==
              doctest::Approx(1.0).epsilon(1e-12));
    for (int k : {2, 3}) {
        std::vector<double> prod, e;
        for (double m : {1e2, 1e3, 1e4}) {
            const auto r = moser_energy(build_moser_profile(m, k), DimensionParams::critical(k));
            prod.push_back(r.deviation_log);
            e.push_back(r.energy);
        }
        auto sorted = prod;
        std::sort(sorted.begin(), sorted.end());
        for (double x : prod)
            CHECK(x <= 3 * sorted[1]);
        CHECK(e[0] > e[1]);
        CHECK(e[1] > e[2]);
        CHECK(e[2] > 1.0);
    }
    CHECK(moser_energy(build_moser_profile(100, 1), DimensionParams::critical(1)).energy >= 0.5);
    CHECK_THROWS_AS(moser_energy(build_moser_profile(100, 2), DimensionParams::critical(1)), UnsupportedError);
}

TEST_CASE("Moser energy against the discrete GJMS form")
{
    // independent route: sample on a graded grid and apply P_2
    const double m = 100;
    const auto dims = DimensionParams::critical(2);
    auto g = make_grid(6000, 30.0, 5.0);
    const auto p = build_moser_profile(m, 2, g);
    REQUIRE(p.samples.has_value());
    const auto rep = gjms_energy(*p.samples, OperatorSet(dims, g));
    const double exact = moser_energy(p, dims).energy;
    CHECK(std::abs(rep.gjms_energy - exact) / exact < 5e-4);
    const auto normalized = p.samples->scaled(1.0 / std::sqrt(rep.gjms_energy));
    CHECK(gjms_energy(normalized, OperatorSet(dims, g)).gjms_energy == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("coarse grids are rejected")
{
    CHECK_THROWS_AS(build_moser_profile(1e6, 1, make_grid(200, 10.0, 1.0)), DomainError);
    CHECK_NOTHROW(build_moser_profile(1e2, 1, make_grid(400, 10.0, 2.0)));
}

TEST_CASE("Adams functional of the Moser family")
{
    const auto dims = DimensionParams::critical(1);
    const auto p = build_moser_profile(1e3, 1, make_grid(8000, 12.0, 4.0));
    for (double beta : {0.9 * 4 * pi, 4 * pi, 1.1 * 4 * pi}) {
        const double exact = moser_adams_functional(p, beta, 1.0);
        const double grid = adams_functional(*p.samples, beta, dims).value;
        CHECK(std::abs(grid - exact) / exact < 1e-4);
    }
    bool overflow = false;
    CHECK(std::isinf(moser_adams_functional(build_moser_profile(1e6, 1), 1000 * 4 * pi, 1.0, &overflow)));
    CHECK(overflow);
    CHECK_THROWS_AS(moser_adams_functional(p, 0.0, 1.0), DomainError);
}

TEST_CASE("log-log slope")
{
    std::vector<double> x{1, 10, 100, 1000}, y;
    for (double v : x)
        y.push_back(3.0 * std::pow(v, 0.37));
    CHECK(loglog_slope(x, y) == doctest::Approx(0.37).epsilon(1e-13));
    CHECK_THROWS_AS(loglog_slope({1.0}, {1.0}), ValidationError);
}

TEST_CASE("blow-up sweep")
{
    const double b0 = 4 * pi;
    const auto recs = blowup_experiment({0.9 * b0, b0, 1.1 * b0}, {1e3, 1e4, 1e5, 1e6}, 1);
    CHECK(recs.size() == 12);
    for (const auto& r : recs) {
        CHECK(r.energy > 0.0);
        CHECK(r.normalized);
        CHECK(r.predicted_exponent == doctest::Approx(r.beta / (4 * pi) - 1).epsilon(1e-14));
    }
    const auto sums = summarize_blowup(recs);
    REQUIRE(sums.size() == 3);
    CHECK(sums[0].max_min_ratio < 10.0);
    CHECK(sums[0].slope < 0.0);
    // above the threshold the functional grows
    CHECK(sums[2].slope > 0.0);
    CHECK(sums[2].predicted == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("Sobolev upper bounds")
{
    const auto rows = sobolev_upper_experiment({1e2, 1e3, 1e4, 1e5, 1e6}, 1);
    const double target = 8 * pi * std::numbers::e;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].s_upper > 0.0);
        CHECK(rows[i].p == doctest::Approx(2 * std::log(rows[i].m)).epsilon(1e-14));
        CHECK(rows[i].target == doctest::Approx(target).epsilon(1e-14));
        if (i > 0)
            CHECK(std::abs(rows[i].p_s_upper - target) < std::abs(rows[i - 1].p_s_upper - target));
    }
    // direct evaluation at m = 100: int |u|^p dv_g without rescaling
    const auto p = build_moser_profile(100, 1);
    const double pp = 2 * std::log(100.0);
    const double direct = radial_integral_exact(p.profile, [&](double f) { return std::pow(std::abs(f), pp); }, 2, true, 64);
    CHECK(rows[0].log_lp == doctest::Approx(std::log(direct)).epsilon(1e-12));
}

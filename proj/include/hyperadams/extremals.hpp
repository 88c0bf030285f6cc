#pragma once

#include "hyperadams/ball_model.hpp"
#include "hyperadams/profile.hpp"

#include <optional>
#include <vector>

namespace hyperadams {

// Concentrating family v_m on |x| = t in [0, 2]:
//   t <= 1/sqrt(m):      c log m + c sum_{l<k} (1 - m t^2)^l / l
//   1/sqrt(m) <= t <= 1: -2c log t
//   1 <= t <= 2:         xi(t), degree 2k-1, matching k-1 derivatives of the
//                        log branch at t = 1 and vanishing to order k-1 at t = 2
// with c = 1/sqrt(2 M log m). The ball profile is u(s) = v(2s).
struct MoserProfile {
    double m = 0.0;
    int k = 1;
    double M = 0.0;
    double c = 0.0;
    std::vector<double> inner_coeffs;   // c/l for l = 1..k-1, powers of (1 - m t^2)
    std::vector<double> cutoff_coeffs;  // b_j of xi(t) = sum_{j=k}^{2k-1} b_j (t-2)^j, index j-k
    PiecewiseProfile profile = PiecewiseProfile::zero();  // u(s) = v(2s)
    std::optional<RadialFunction> samples;

    double branch_mismatch = 0.0;  // largest value gap at the two junctions
    std::vector<double> condition_residuals;  // the 2k cutoff conditions
    double kth_jump = 0.0;  // xi^(k)(1) minus the log branch's k-th derivative
    double cutoff_sup = 0.0;  // sup |xi| on [1, 2]

    double v(double t) const;
    double xi(double t, int derivative = 0) const;
};

MoserProfile build_moser_profile(double m, int k);
// Also samples u on the grid; the Euclidean node spacing below the inner
// radius must be under 1/(4 sqrt(m)).
MoserProfile build_moser_profile(double m, int k, const GridPtr& grid);

struct MoserEnergy {
    double energy = 0.0;  // ||u||_{k,g}^2 = int |grad^k u|^2 dx
    double deviation_log = 0.0;  // |energy - 1| log m
};

MoserEnergy moser_energy(const MoserProfile& p, const DimensionParams& dims);

// int (e^{beta u^2 / energy} - 1) dv_g by piecewise Gauss quadrature of the
// analytic profile. Overflow follows the exponent_limit policy.
struct BlowupRecord {
    double m = 0.0;
    double beta = 0.0;
    double energy = 0.0;
    bool normalized = true;
    double functional_value = 0.0;
    bool overflow = false;
    double predicted_exponent = 0.0;  // beta/(2M) - k
};

double moser_adams_functional(const MoserProfile& p, double beta, double energy, bool* overflow = nullptr);

std::vector<BlowupRecord> blowup_experiment(const std::vector<double>& beta_list,
                                            const std::vector<double>& m_list, int k);

// least-squares slope of log y against log x
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct BlowupSummary {
    double beta = 0.0;
    double slope = 0.0;
    double predicted = 0.0;
    double max_min_ratio = 0.0;
    bool any_overflow = false;
};

std::vector<BlowupSummary> summarize_blowup(const std::vector<BlowupRecord>& records);

struct SobolevUpperRow {
    double m = 0.0;
    double p = 0.0;  // 2k log m
    double energy = 0.0;
    double log_lp = 0.0;  // log int |u|^p dv_g
    double s_upper = 0.0;
    double p_s_upper = 0.0;
    double target = 0.0;  // 2 beta0 e
};

std::vector<SobolevUpperRow> sobolev_upper_experiment(const std::vector<double>& m_list, int k);

} // namespace hyperadams

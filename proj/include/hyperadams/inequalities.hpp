#pragma once

#include "hyperadams/ball_model.hpp"
#include "hyperadams/operators.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hyperadams {

// Measure used for omega_N in the Liu constant.
enum class OmegaConvention {
    sphere,  // |S^N|
    ball,    // volume of the unit N-ball
};

struct SharpConstants {
    int k = 1;
    int N = 2;
    double p = 2.0;        // N / k
    double p_prime = 2.0;  // p / (p - 1)
    double beta0 = 0.0;
    double alpha_N = 0.0;  // N omega_{N-1}^{1/(N-1)}
    double M = 0.0;        // (4 pi)^k (k-1)! / 2
    double A_k = 0.0;      // Hardy-Rellich constant on convex domains
    std::optional<double> lambda_k;  // only for N > 2k
    double poincare_base = 0.0;      // ((N-1)/2)^2
};

double beta0(int k, int N);
double moser_alpha(int N);
double moser_M(int k);
double owen_constant(int k);
double liu_constant(int k, int N, OmegaConvention convention = OmegaConvention::sphere);
SharpConstants sharp_constants(int k, int N, OmegaConvention convention = OmegaConvention::sphere);

// Exponents beyond this are reported as overflow instead of evaluated.
inline constexpr double exponent_limit = 700.0;

struct AdamsValue {
    double value = 0.0;  // +inf when overflow is set
    bool overflow = false;
    double max_exponent = 0.0;
};

// int (e^{beta u^2} - 1) dv_g on the grid.
AdamsValue adams_functional(const RadialFunction& u, double beta, const DimensionParams& dims);

// c h^q with h = 1/n the computational spacing.
struct SlackModel {
    double c = 0.0;
    int q = 4;
    double at(int n) const;
};

// Richardson-style fit: the largest coarse/fine difference, scaled so that
// slack(n_coarse) covers it.
SlackModel fit_slack(const std::vector<double>& coarse, const std::vector<double>& fine, int n_coarse,
                     int q = 4);

struct InequalityMargin {
    double lhs = 0.0;  // the smaller side
    double rhs = 0.0;
    double margin = 0.0;  // rhs - lhs
    std::vector<std::string> warnings;
    bool holds(double slack) const { return margin >= -slack; }
};

// ((N-1)/2)^{2(k-l)} int |grad_g^l u|^2 dv_g  <=  int |grad_g^k u|^2 dv_g
InequalityMargin check_poincare_chain(const RadialFunction& u, int k, int l, const OperatorSet& ops);

// A(k) int u^2 / (1-s)^{2k} dx  <=  int |grad^k u|^2 dx  on the unit ball
InequalityMargin check_owen(const RadialFunction& u, int k, const OperatorSet& ops);

struct ScalarInequalityReport {
    long points = 0;
    long failures_first = 0;   // (e^t-1)^2 <= e^{2t} - 2t - 1
    long failures_second = 0;  // (e^t-1)^2 <= |e^{2t} - 1|
    double min_margin_first = 0.0;   // smallest stable-form margin seen
    double min_margin_second = 0.0;
    bool equality_at_zero = false;
    bool passed() const { return failures_first == 0 && failures_second == 0 && equality_at_zero; }
};

// Dense grid on [t_min, t_max] plus uniform random samples.
ScalarInequalityReport scalar_inequality_suite(long grid_points = 100000, long random_points = 10000,
                                               double t_min = -50.0, double t_max = 50.0,
                                               unsigned long long seed = 1);

// log int (e^{2u} - 2u - 1) dv_g  <=  C + energy / (beta0 delta)
struct LinearizedAdamsTerms {
    double log_integral = 0.0;  // -inf for u = 0
    double energy = 0.0;        // <P_k u, u>
    double excess(double delta, double beta0_value) const;  // log_integral - energy/(beta0 delta)
};

LinearizedAdamsTerms linearized_adams_terms(const RadialFunction& u, const OperatorSet& ops);
InequalityMargin linearized_adams_bound(const RadialFunction& u, double delta, const OperatorSet& ops,
                                        double calibration);

} // namespace hyperadams

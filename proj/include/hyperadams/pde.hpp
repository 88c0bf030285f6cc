#pragma once

#include "hyperadams/ball_model.hpp"
#include "hyperadams/operators.hpp"

#include <memory>
#include <string>
#include <vector>

namespace hyperadams {

// Named radial data for Q1, Q2.
//   gaussian:       amp exp(-r^2 / width^2)               (geodesic r)
//   bump:           amp exp(1 - 1/(1 - (r/width)^2)), r < width
//   rational-decay: amp ((1 - s^2) / (1 + s^2/width^2))^exponent   (Euclidean s)
struct QSpec {
    std::string family = "gaussian";
    double amp = 0.0;
    double width = 1.0;
    double exponent = 2.0;

    bool operator==(const QSpec&) const = default;
};

RadialFunction make_q(const QSpec& spec, const GridPtr& grid);

enum class SolveMode { convex, log_constrained };

const char* to_string(SolveMode mode);

// P_k u + Q1 = Q2 e^{2u} on H^{2k}, radial, u = 0 beyond R_max.
class PDEProblem {
public:
    PDEProblem(const DimensionParams& dims, RadialFunction q1, RadialFunction q2, SolveMode mode);

    const DimensionParams& dims() const { return ops_->dims; }
    const OperatorSet& ops() const { return *ops_; }
    const RadialGrid& grid() const { return *ops_->grid; }
    const RadialFunction& q1() const { return q1_; }
    const RadialFunction& q2() const { return q2_; }
    SolveMode mode() const { return mode_; }
    const std::vector<double>& weights() const { return ops_->hyperbolic.cell_weights(); }
    double inner(const std::vector<double>& a, const std::vector<double>& b) const;

private:
    std::shared_ptr<const OperatorSet> ops_;
    RadialFunction q1_, q2_;
    SolveMode mode_;
};

struct SolveResult {
    explicit SolveResult(const RadialFunction& start) : u(start), u_raw(start) {}

    RadialFunction u;      // the solution (shifted in log-constrained mode)
    RadialFunction u_raw;  // minimizer before the shift
    SolveMode mode = SolveMode::convex;
    double objective = 0.0;
    double residual_norm = 0.0;  // ||P_k u + Q1 - Q2 e^{2u}||, recomputed factor by factor from the assembled factors
    int iterations = 0;
    bool converged = false;
    double additive_constant = 0.0;
    std::vector<double> objective_history;
    std::vector<std::string> warnings;
};

// P_k u + Q1 - Q2 e^{2u}; far_value is the constant u takes beyond R_max
std::vector<double> pde_residual(const std::vector<double>& u, const PDEProblem& problem,
                                 double far_value = 0.0);
double residual_norm(const std::vector<double>& u, const PDEProblem& problem, double far_value = 0.0);
// residual of u + shift for u vanishing beyond R_max. P_k acts on u and on the
// constant separately: forming u + shift in floating point leaves noise of
// size eps*shift that P_k and the volume growth of dv_g amplify to well above
// the solver tolerance.
std::vector<double> pde_residual_shifted(const std::vector<double>& u, double shift, const PDEProblem& problem);
double residual_norm_shifted(const std::vector<double>& u, double shift, const PDEProblem& problem);

// J(u) = 1/2 <P u, u> - int Q u - 1/2 int Q2 (e^{2u} - 2u - 1),  Q = Q2 - Q1
double functional_J(const std::vector<double>& u, const PDEProblem& problem);
std::vector<double> gradient_J(const std::vector<double>& u, const PDEProblem& problem);
std::vector<double> hessian_action_J(const std::vector<double>& u, const std::vector<double>& w,
                                     const PDEProblem& problem);
SolveResult solve_convex(const PDEProblem& problem, double tol = 1e-10, int max_iter = 100);

// J_Q(u) = <P u, u> + 2 int Q1 u - log int Q2 (e^{2u} - 1); +inf outside the
// set where the log argument is positive.
double functional_JQ(const std::vector<double>& u, const PDEProblem& problem);
std::vector<double> gradient_JQ(const std::vector<double>& u, const PDEProblem& problem);
SolveResult solve_log_constrained(const PDEProblem& problem, double tol = 1e-10, int max_iter = 200);

SolveResult solve(const PDEProblem& problem, double tol, int max_iter);

} // namespace hyperadams

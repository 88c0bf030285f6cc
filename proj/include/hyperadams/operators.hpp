#pragma once

#include "hyperadams/ball_model.hpp"
#include "hyperadams/band_matrix.hpp"

#include <string>
#include <vector>

namespace hyperadams {

enum class Geometry { hyperbolic, euclidean };

// Banded radial operator. Ghost cells beyond R_max carry a far-field value;
// far_field is the response to a unit ghost value.
struct DiscreteOperator {
    GridPtr grid;
    BandMatrix band_matrix;
    std::vector<double> far_field;
    double constant_response = 0.0;  // image of the constant 1 with matching ghosts
    std::string symbol;
    int order = 2;
    std::vector<DiscreteOperator> factors;  // second-order factors of a product, outermost first

    std::vector<double> apply(const std::vector<double>& f, double far_value = 0.0) const;
    // applies the factors one at a time, far-field value carried along
    std::vector<double> apply_factorwise(const std::vector<double>& f, double far_value = 0.0) const;
    RadialFunction operator()(const RadialFunction& f) const;
};

// Summation-by-parts building blocks: cell weights W (the radial volume
// density times the grid quadrature), face weights h*A, and the staggered
// 4th-order xi-derivative D from cells to faces. The Laplacian is
// -W^{-1} D^T diag(hA) D, symmetric in the W inner product.
class RadialForms {
public:
    RadialForms(GridPtr grid, const DimensionParams& dims, Geometry geometry);

    const RadialGrid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    Geometry geometry() const { return geometry_; }
    const std::vector<double>& cell_weights() const { return w_; }
    const std::vector<double>& face_weights() const { return fa_; }

    // (Df)_j at faces j = 1..n (stored at j-1), derivative in xi
    std::vector<double> face_gradient(const std::vector<double>& f, double far_value = 0.0) const;
    double mass(const std::vector<double>& f, const std::vector<double>& g) const;
    double dirichlet(const std::vector<double>& f, const std::vector<double>& g) const;
    DiscreteOperator laplacian() const;
    // the same Laplacian applied in flux form, without the assembled matrix
    std::vector<double> apply_laplacian(const std::vector<double>& f, double far_value = 0.0) const;

private:
    GridPtr grid_;
    Geometry geometry_;
    std::vector<double> w_, fa_;
};

DiscreteOperator euclidean_laplacian_radial(const DimensionParams& dims, const GridPtr& grid);
DiscreteOperator hyperbolic_laplacian_radial(const DimensionParams& dims, const GridPtr& grid);
// ((1-s^2)/2)^2 Delta + (N-2)((1-s^2)/2) s d/ds, assembled from the Euclidean
// Laplacian and a collocated derivative; used as an independent cross-check.
DiscreteOperator hyperbolic_laplacian_euclidean_form(const DimensionParams& dims, const GridPtr& grid);
// collocated 4th-order d/dr at the nodes
DiscreteOperator radial_derivative(const GridPtr& grid);

// zeroth-order shift of the j-th factor: j(j-1) - N(N-2)/4
double gjms_factor_shift(int j, int N);
DiscreteOperator gjms_assemble(const DimensionParams& dims, const GridPtr& grid);

// Operators shared by the energy evaluations on one grid.
struct OperatorSet {
    DimensionParams dims;
    GridPtr grid;
    RadialForms hyperbolic;
    RadialForms euclidean;
    DiscreteOperator lap_h;
    DiscreteOperator lap_e;
    DiscreteOperator gjms;

    OperatorSet(const DimensionParams& dims, const GridPtr& grid);
};

// P_k f from the flux-form Laplacian, one factor at a time; constants in the
// far field are annihilated exactly.
std::vector<double> gjms_apply_flux(const OperatorSet& ops, const std::vector<double>& f, double far_value = 0.0);

struct EnergyReport {
    double gjms_energy = 0.0;
    double euclidean_energy = 0.0;
    double sobolev_energy = 0.0;
    int n_nodes = 0;
    double r_max = 0.0;
    double grading = 0.0;
    std::vector<std::string> warnings;
};

// Small negative values of a nonnegative form are set to 0 with a warning;
// below -1e-12*scale a NumericalError is thrown.
double clamp_nonnegative(double value, double scale, const char* what,
                         std::vector<std::string>* warnings);

// int |grad_g^m u|_g^2 dv_g: |Delta_g^{m/2} u|^2 for even m, |d_r Delta_g^{(m-1)/2} u|^2 for odd m
double hyperbolic_gradient_term(const std::vector<double>& u, int m, const OperatorSet& ops);
// same in B^N with Lebesgue measure
double euclidean_gradient_term(const std::vector<double>& u, int m, const OperatorSet& ops);

double euclidean_gradk_energy(const RadialFunction& v, const DimensionParams& dims);
double euclidean_gradk_energy(const RadialFunction& v, const OperatorSet& ops);
double sobolev_energy(const RadialFunction& u, const DimensionParams& dims);
double sobolev_energy(const RadialFunction& u, const OperatorSet& ops);
EnergyReport gjms_energy(const RadialFunction& u, const DimensionParams& dims);
EnergyReport gjms_energy(const RadialFunction& u, const OperatorSet& ops);

} // namespace hyperadams

#include "hyperadams/operators.hpp"

#include "hyperadams/errors.hpp"

#include <array>
#include <cmath>
#include <string>

namespace hyperadams {

namespace {

// cells with negative index mirror across r = 0 (even parity)
int mirror(int idx) { return idx < 0 ? -idx - 1 : idx; }

// Lagrange weights at ghost cell g (0, 1) beyond R_max, offset g + 1/2 cells
// from the end face, on the nodes {face, last cell, last - 1, last - 2}
std::array<double, 4> far_ghost_weights(int g)
{
    const double x = g + 0.5;
    const double nodes[4] = {0.0, -0.5, -1.5, -2.5};
    std::array<double, 4> w{};
    for (int a = 0; a < 4; ++a) {
        double l = 1.0;
        for (int b = 0; b < 4; ++b)
            if (b != a)
                l *= (x - nodes[b]) / (nodes[a] - nodes[b]);
        w[a] = l;
    }
    return w;
}

struct Stencil {
    int cell[4];
    double coeff[4];
    int count = 0;
    double far = 0.0;  // weight on ghost cells beyond R_max

    void add(int idx, double c, int n)
    {
        if (idx >= n) {
            // cubic through u(R_max) = far value and the last three cells
            const auto w = far_ghost_weights(idx - n);
            far += c * w[0];
            for (int q = 1; q < 4; ++q)
                add(n - q, c * w[q], n);
            return;
        }
        idx = mirror(idx);
        for (int q = 0; q < count; ++q)
            if (cell[q] == idx) {
                coeff[q] += c;
                return;
            }
        cell[count] = idx;
        coeff[count] = c;
        ++count;
    }
};

// staggered xi-derivative at face j (1..n)
Stencil face_stencil(int j, int n, double h)
{
    Stencil st;
    const double d = 24.0 * h;
    st.add(j - 2, 1.0 / d, n);
    st.add(j - 1, -27.0 / d, n);
    st.add(j, 27.0 / d, n);
    st.add(j + 1, -1.0 / d, n);
    return st;
}

// collocated xi-derivative at cell i
Stencil cell_stencil(int i, int n, double h)
{
    Stencil st;
    const double d = 12.0 * h;
    st.add(i - 2, 1.0 / d, n);
    st.add(i - 1, -8.0 / d, n);
    st.add(i + 1, 8.0 / d, n);
    st.add(i + 2, -1.0 / d, n);
    return st;
}

double radial_density(const EuclideanRadius& x, double r, const DimensionParams& dims,
                      Geometry geometry)
{
    if (geometry == Geometry::hyperbolic)
        return dims.omega_Nm1 * std::pow(std::sinh(r), dims.N - 1);
    return dims.omega_Nm1 * std::pow(x.s, dims.N - 1) * 0.5 * x.one_minus_s2();
}

} // namespace

std::vector<double> DiscreteOperator::apply(const std::vector<double>& f, double far_value) const
{
    std::vector<double> y = band_matrix.apply(f);
    if (far_value != 0.0)
        for (std::size_t i = 0; i < y.size(); ++i)
            y[i] += far_value * far_field[i];
    return y;
}

std::vector<double> DiscreteOperator::apply_factorwise(const std::vector<double>& f,
                                                       double far_value) const
{
    if (factors.empty())
        return apply(f, far_value);
    std::vector<double> v = f;
    double c = far_value;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
        v = it->apply(v, c);
        c *= it->constant_response;
    }
    return v;
}

RadialFunction DiscreteOperator::operator()(const RadialFunction& f) const
{
    return RadialFunction(grid, apply_factorwise(f.values()));
}

RadialForms::RadialForms(GridPtr grid, const DimensionParams& dims, Geometry geometry)
    : grid_(std::move(grid)), geometry_(geometry)
{
    const RadialGrid& g = *grid_;
    const int n = g.size();
    w_ = volume_quadrature_weights(g, dims, geometry == Geometry::hyperbolic);
    fa_.resize(n);
    for (int j = 1; j <= n; ++j) {
        const double r = g.face_r(j);
        const double dr = g.face_dr_dxi(j);
        // |f_r|^2 density dr = |f_xi|^2 density / r' dxi
        fa_[j - 1] = g.h() * radial_density(to_euclidean(r), r, dims, geometry) / dr;
        if (geometry == Geometry::euclidean) {
            // Euclidean gradient f_s = f_r / sigma
            const double sig = 0.5 * to_euclidean(r).one_minus_s2();
            fa_[j - 1] /= sig * sig;
        }
    }
}

std::vector<double> RadialForms::face_gradient(const std::vector<double>& f, double far_value) const
{
    const int n = grid_->size();
    std::vector<double> d(n);
    for (int j = 1; j <= n; ++j) {
        const Stencil st = face_stencil(j, n, grid_->h());
        // differences against one stencil value: exactly zero on constants
        const double ref = f[st.cell[0]];
        double s = st.far * (far_value - ref);
        for (int q = 1; q < st.count; ++q)
            s += st.coeff[q] * (f[st.cell[q]] - ref);
        d[j - 1] = s;
    }
    return d;
}

double RadialForms::mass(const std::vector<double>& f, const std::vector<double>& g) const
{
    double s = 0.0;
    for (std::size_t i = 0; i < w_.size(); ++i)
        s += w_[i] * f[i] * g[i];
    return s;
}

double RadialForms::dirichlet(const std::vector<double>& f, const std::vector<double>& g) const
{
    const auto df = face_gradient(f);
    const auto dg = face_gradient(g);
    double s = 0.0;
    for (std::size_t j = 0; j < fa_.size(); ++j)
        s += fa_[j] * df[j] * dg[j];
    return s;
}

std::vector<double> RadialForms::apply_laplacian(const std::vector<double>& f, double far_value) const
{
    const int n = grid_->size();
    const auto d = face_gradient(f, far_value);
    std::vector<double> y(n, 0.0);
    for (int j = 1; j <= n; ++j) {
        const Stencil st = face_stencil(j, n, grid_->h());
        const double flux = fa_[j - 1] * d[j - 1];
        for (int q = 0; q < st.count; ++q)
            y[st.cell[q]] -= st.coeff[q] * flux;
    }
    for (int i = 0; i < n; ++i)
        y[i] /= w_[i];
    return y;
}

DiscreteOperator RadialForms::laplacian() const
{
    const int n = grid_->size();
    DiscreteOperator op;
    op.grid = grid_;
    op.band_matrix = BandMatrix(n, 3, 3);
    op.far_field.assign(n, 0.0);
    op.symbol = geometry_ == Geometry::hyperbolic ? "Delta_g" : "Delta";
    op.order = 2;
    for (int j = 1; j <= n; ++j) {
        const Stencil st = face_stencil(j, n, grid_->h());
        const double a = fa_[j - 1];
        for (int p = 0; p < st.count; ++p) {
            const int i = st.cell[p];
            const double ci = -st.coeff[p] * a / w_[i];
            for (int q = 0; q < st.count; ++q)
                op.band_matrix.add(i, st.cell[q], ci * st.coeff[q]);
            op.far_field[i] += ci * st.far;
        }
    }
    return op;
}

DiscreteOperator euclidean_laplacian_radial(const DimensionParams& dims, const GridPtr& grid)
{
    return RadialForms(grid, dims, Geometry::euclidean).laplacian();
}

DiscreteOperator hyperbolic_laplacian_radial(const DimensionParams& dims, const GridPtr& grid)
{
    return RadialForms(grid, dims, Geometry::hyperbolic).laplacian();
}

DiscreteOperator radial_derivative(const GridPtr& grid)
{
    const int n = grid->size();
    DiscreteOperator op;
    op.grid = grid;
    op.band_matrix = BandMatrix(n, 2, 2);
    op.far_field.assign(n, 0.0);
    op.symbol = "d/dr";
    op.order = 1;
    for (int i = 0; i < n; ++i) {
        const Stencil st = cell_stencil(i, n, grid->h());
        const double scale = 1.0 / grid->dr_dxi(i);
        for (int q = 0; q < st.count; ++q)
            op.band_matrix.add(i, st.cell[q], scale * st.coeff[q]);
        op.far_field[i] = scale * st.far;
    }
    return op;
}

DiscreteOperator hyperbolic_laplacian_euclidean_form(const DimensionParams& dims, const GridPtr& grid)
{
    const DiscreteOperator le = euclidean_laplacian_radial(dims, grid);
    const DiscreteOperator dr = radial_derivative(grid);
    const int n = grid->size();
    std::vector<double> sig2(n), sdr(n);
    for (int i = 0; i < n; ++i) {
        const double sig = 0.5 * grid->euclidean(i).one_minus_s2();
        sig2[i] = sig * sig;
        // sigma s d/ds = s d/dr
        sdr[i] = (dims.N - 2) * grid->s(i);
    }
    DiscreteOperator op;
    op.grid = grid;
    op.band_matrix = le.band_matrix.row_scaled(sig2) + dr.band_matrix.row_scaled(sdr);
    op.far_field.resize(n);
    for (int i = 0; i < n; ++i)
        op.far_field[i] = sig2[i] * le.far_field[i] + sdr[i] * dr.far_field[i];
    op.symbol = "Delta_g (Euclidean form)";
    op.order = 2;
    return op;
}

double gjms_factor_shift(int j, int N) { return j * (j - 1) - N * (N - 2) / 4.0; }

DiscreteOperator gjms_assemble(const DimensionParams& dims, const GridPtr& grid)
{
    if (dims.N != 2 * dims.k)
        throw UnsupportedError("GJMS assembly requires N = 2k");
    const DiscreteOperator lap = hyperbolic_laplacian_radial(dims, grid);
    const int n = grid->size();

    DiscreteOperator p;
    p.grid = grid;
    p.symbol = "P_" + std::to_string(dims.k);
    p.order = 2 * dims.k;
    p.constant_response = 1.0;
    for (int j = 1; j <= dims.k; ++j) {
        const double mu = gjms_factor_shift(j, dims.N);
        DiscreteOperator f;
        f.grid = grid;
        f.band_matrix = lap.band_matrix.scaled(-1.0).plus_scaled_identity(mu);
        f.far_field = lap.far_field;
        for (double& x : f.far_field)
            x = -x;
        f.constant_response = mu;
        f.symbol = j == 1 ? "P_1" : "P_1 + " + std::to_string(j * (j - 1));
        f.order = 2;
        p.constant_response *= mu;
        p.band_matrix = j == 1 ? f.band_matrix : p.band_matrix * f.band_matrix;
        p.factors.push_back(std::move(f));
    }
    // response of the product to a unit far-field value
    DiscreteOperator tmp = p;
    p.far_field.assign(n, 0.0);
    p.far_field = tmp.apply_factorwise(std::vector<double>(n, 0.0), 1.0);
    return p;
}

std::vector<double> gjms_apply_flux(const OperatorSet& ops, const std::vector<double>& f, double far_value)
{
    std::vector<double> v = f;
    double c = far_value;
    for (int j = ops.dims.k; j >= 1; --j) {
        const double mu = gjms_factor_shift(j, ops.dims.N);
        auto lv = ops.hyperbolic.apply_laplacian(v, c);
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = mu * v[i] - lv[i];
        c *= mu;
    }
    return v;
}

OperatorSet::OperatorSet(const DimensionParams& d, const GridPtr& g)
    : dims(d),
      grid(g),
      hyperbolic(g, d, Geometry::hyperbolic),
      euclidean(g, d, Geometry::euclidean),
      lap_h(hyperbolic.laplacian()),
      lap_e(euclidean.laplacian()),
      gjms(gjms_assemble(d, g))
{
}

double clamp_nonnegative(double value, double scale, const char* what,
                         std::vector<std::string>* warnings)
{
    if (!std::isfinite(value))
        throw NumericalError(std::string(what) + " is not finite");
    if (value >= 0.0)
        return value;
    if (value > -1e-12 * scale) {
        if (warnings)
            warnings->push_back(std::string(what) + " clamped from " + std::to_string(value));
        return 0.0;
    }
    throw NumericalError(std::string(what) + " negative beyond roundoff: " + std::to_string(value));
}

namespace {

double gradient_term(const std::vector<double>& u, int m, const RadialForms& forms,
                     const DiscreteOperator& lap)
{
    std::vector<double> v = u;
    for (int t = 0; t < m / 2; ++t)
        v = lap.apply(v);
    return m % 2 == 0 ? forms.mass(v, v) : forms.dirichlet(v, v);
}

void require_grid(const RadialFunction& u, const OperatorSet& ops)
{
    if (u.grid_ptr().get() != ops.grid.get())
        throw ValidationError("function and operators live on different grids");
    if (!u.all_finite())
        throw NumericalError("non-finite samples");
}

} // namespace

double hyperbolic_gradient_term(const std::vector<double>& u, int m, const OperatorSet& ops)
{
    return gradient_term(u, m, ops.hyperbolic, ops.lap_h);
}

double euclidean_gradient_term(const std::vector<double>& u, int m, const OperatorSet& ops)
{
    return gradient_term(u, m, ops.euclidean, ops.lap_e);
}

double euclidean_gradk_energy(const RadialFunction& v, const OperatorSet& ops)
{
    require_grid(v, ops);
    return euclidean_gradient_term(v.values(), ops.dims.k, ops);
}

double euclidean_gradk_energy(const RadialFunction& v, const DimensionParams& dims)
{
    return euclidean_gradk_energy(v, OperatorSet(dims, v.grid_ptr()));
}

double sobolev_energy(const RadialFunction& u, const OperatorSet& ops)
{
    require_grid(u, ops);
    double total = 0.0;
    for (int m = 0; m <= ops.dims.k; ++m)
        total += hyperbolic_gradient_term(u.values(), m, ops);
    return total;
}

double sobolev_energy(const RadialFunction& u, const DimensionParams& dims)
{
    return sobolev_energy(u, OperatorSet(dims, u.grid_ptr()));
}

EnergyReport gjms_energy(const RadialFunction& u, const OperatorSet& ops)
{
    require_grid(u, ops);
    EnergyReport rep;
    const RadialGrid& g = *ops.grid;
    rep.n_nodes = g.size();
    rep.r_max = g.r_max();
    rep.grading = g.grading();

    const auto pu = ops.gjms.apply_factorwise(u.values());
    const auto& w = ops.hyperbolic.cell_weights();
    double e = 0.0, scale = 0.0;
    for (int i = 0; i < g.size(); ++i) {
        e += w[i] * pu[i] * u[i];
        scale += std::abs(w[i] * pu[i] * u[i]);
    }
    rep.gjms_energy = clamp_nonnegative(e, scale, "GJMS energy", &rep.warnings);
    rep.euclidean_energy = euclidean_gradient_term(u.values(), ops.dims.k, ops);
    rep.sobolev_energy = sobolev_energy(u, ops);
    return rep;
}

EnergyReport gjms_energy(const RadialFunction& u, const DimensionParams& dims)
{
    return gjms_energy(u, OperatorSet(dims, u.grid_ptr()));
}

} // namespace hyperadams

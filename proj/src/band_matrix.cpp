#include "hyperadams/band_matrix.hpp"

#include "hyperadams/errors.hpp"

#include <lapacke.h>

#include <algorithm>
#include <string>

namespace hyperadams {

BandMatrix::BandMatrix(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), d_(static_cast<std::size_t>(n) * (kl + ku + 1), 0.0)
{
}

double BandMatrix::operator()(int i, int j) const
{
    if (!in_band(i, j))
        return 0.0;
    return d_[static_cast<std::size_t>(i) * (kl_ + ku_ + 1) + (j - i + kl_)];
}

double& BandMatrix::at(int i, int j)
{
    if (!in_band(i, j))
        throw NumericalError("entry outside band");
    return d_[static_cast<std::size_t>(i) * (kl_ + ku_ + 1) + (j - i + kl_)];
}

std::vector<double> BandMatrix::apply(const std::vector<double>& x) const
{
    std::vector<double> y(n_, 0.0);
    const int w = kl_ + ku_ + 1;
    for (int i = 0; i < n_; ++i) {
        const int j0 = std::max(0, i - kl_), j1 = std::min(n_ - 1, i + ku_);
        const double* row = &d_[static_cast<std::size_t>(i) * w];
        double s = 0.0;
        for (int j = j0; j <= j1; ++j)
            s += row[j - i + kl_] * x[j];
        y[i] = s;
    }
    return y;
}

BandMatrix BandMatrix::operator*(const BandMatrix& b) const
{
    BandMatrix c(n_, std::min(n_ - 1, kl_ + b.kl_), std::min(n_ - 1, ku_ + b.ku_));
    for (int i = 0; i < n_; ++i)
        for (int l = std::max(0, i - kl_); l <= std::min(n_ - 1, i + ku_); ++l) {
            const double a = (*this)(i, l);
            if (a == 0.0)
                continue;
            for (int j = std::max(0, l - b.kl_); j <= std::min(n_ - 1, l + b.ku_); ++j)
                c.at(i, j) += a * b(l, j);
        }
    return c;
}

BandMatrix BandMatrix::plus_diagonal(const std::vector<double>& d) const
{
    BandMatrix c(*this);
    for (int i = 0; i < n_; ++i)
        c.at(i, i) += d[i];
    return c;
}

BandMatrix BandMatrix::plus_scaled_identity(double a) const
{
    BandMatrix c(*this);
    for (int i = 0; i < n_; ++i)
        c.at(i, i) += a;
    return c;
}

BandMatrix BandMatrix::scaled(double a) const
{
    BandMatrix c(*this);
    for (double& x : c.d_)
        x *= a;
    return c;
}

BandMatrix BandMatrix::operator+(const BandMatrix& b) const
{
    BandMatrix c(n_, std::max(kl_, b.kl_), std::max(ku_, b.ku_));
    for (int i = 0; i < n_; ++i)
        for (int j = std::max(0, i - c.kl_); j <= std::min(n_ - 1, i + c.ku_); ++j)
            c.at(i, j) = (*this)(i, j) + b(i, j);
    return c;
}

BandMatrix BandMatrix::row_scaled(const std::vector<double>& d) const
{
    BandMatrix c(*this);
    const int w = kl_ + ku_ + 1;
    for (int i = 0; i < n_; ++i)
        for (int q = 0; q < w; ++q)
            c.d_[static_cast<std::size_t>(i) * w + q] *= d[i];
    return c;
}

std::vector<double> BandMatrix::solve(const std::vector<double>& b) const
{
    const lapack_int n = n_, kl = kl_, ku = ku_, ldab = 2 * kl_ + ku_ + 1;
    // column-major LAPACK band layout with kl extra rows for fill-in
    std::vector<double> ab(static_cast<std::size_t>(ldab) * n, 0.0);
    for (int j = 0; j < n_; ++j)
        for (int i = std::max(0, j - ku_); i <= std::min(n_ - 1, j + kl_); ++i)
            ab[static_cast<std::size_t>(j) * ldab + (kl_ + ku_ + i - j)] = (*this)(i, j);
    std::vector<lapack_int> piv(n);
    std::vector<double> x(b);
    const lapack_int info =
        LAPACKE_dgbsv(LAPACK_COL_MAJOR, n, kl, ku, 1, ab.data(), ldab, piv.data(), x.data(), n);
    if (info != 0)
        throw NumericalError("banded solve failed, info = " + std::to_string(info));
    return x;
}

} // namespace hyperadams

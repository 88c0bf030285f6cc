#pragma once

#include <vector>

namespace hyperadams {

// Square banded matrix with kl sub- and ku super-diagonals.
class BandMatrix {
public:
    BandMatrix() = default;
    BandMatrix(int n, int kl, int ku);

    int size() const { return n_; }
    int lower() const { return kl_; }
    int upper() const { return ku_; }

    bool in_band(int i, int j) const { return j - i <= ku_ && i - j <= kl_; }
    double operator()(int i, int j) const;
    double& at(int i, int j);
    void add(int i, int j, double v) { at(i, j) += v; }

    std::vector<double> apply(const std::vector<double>& x) const;
    BandMatrix operator*(const BandMatrix& b) const;
    BandMatrix plus_diagonal(const std::vector<double>& d) const;
    BandMatrix plus_scaled_identity(double a) const;
    BandMatrix scaled(double a) const;
    BandMatrix operator+(const BandMatrix& b) const;
    // diag(d) * this
    BandMatrix row_scaled(const std::vector<double>& d) const;

    // Solves this * x = b by banded LU with partial pivoting (LAPACK dgbsv).
    std::vector<double> solve(const std::vector<double>& b) const;

private:
    int n_ = 0, kl_ = 0, ku_ = 0;
    std::vector<double> d_;  // row i, column j stored at i*(kl+ku+1) + (j - i + kl)
};

} // namespace hyperadams

#pragma once

#include <vector>

namespace hyperadams {

// Truncated Taylor expansion f(x0 + t) = sum_j c[j] t^j, j = 0..order.
class Jet {
public:
    Jet() = default;
    Jet(double value, int order);  // constant
    static Jet variable(double x0, int order);

    int order() const { return static_cast<int>(c_.size()) - 1; }
    double value() const { return c_[0]; }
    double coeff(int j) const { return c_[j]; }
    double& coeff(int j) { return c_[j]; }
    // j-th derivative at x0
    double derivative_value(int j) const;
    // expansion of f', one order shorter
    Jet derivative() const;
    Jet truncated(int order) const;

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(double a);
    Jet& operator+=(double a);

private:
    std::vector<double> c_;
};

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator-(Jet a);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);
Jet operator*(Jet a, double x);
Jet operator*(double x, Jet a);
Jet operator+(Jet a, double x);
Jet operator+(double x, Jet a);
Jet operator-(Jet a, double x);
Jet operator-(double x, Jet a);

Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet pow(const Jet& a, double p);
Jet sqrt(const Jet& a);
Jet sinh(const Jet& a);
Jet cosh(const Jet& a);
Jet tanh(const Jet& a);

// Radial Laplacians: f is an expansion in the radius x around x0 > 0.
Jet euclidean_laplacian(const Jet& f, const Jet& s, int N);
Jet hyperbolic_laplacian(const Jet& f, const Jet& r, int N);

} // namespace hyperadams

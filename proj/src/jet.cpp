#include "hyperadams/jet.hpp"

#include "hyperadams/errors.hpp"

#include <algorithm>
#include <cmath>

namespace hyperadams {

Jet::Jet(double value, int order) : c_(order + 1, 0.0) { c_[0] = value; }

Jet Jet::variable(double x0, int order)
{
    Jet j(x0, order);
    if (order >= 1)
        j.c_[1] = 1.0;
    return j;
}

double Jet::derivative_value(int j) const
{
    double f = 1.0;
    for (int i = 2; i <= j; ++i)
        f *= i;
    return c_[j] * f;
}

Jet Jet::derivative() const
{
    if (order() < 1)
        throw NumericalError("jet order exhausted by differentiation");
    Jet d(0.0, order() - 1);
    for (int j = 1; j <= order(); ++j)
        d.c_[j - 1] = j * c_[j];
    return d;
}

Jet Jet::truncated(int order) const
{
    Jet t(0.0, order);
    for (int j = 0; j <= std::min(order, this->order()); ++j)
        t.c_[j] = c_[j];
    return t;
}

Jet& Jet::operator+=(const Jet& o)
{
    c_.resize(std::min(c_.size(), o.c_.size()));
    for (std::size_t j = 0; j < c_.size(); ++j)
        c_[j] += o.c_[j];
    return *this;
}

Jet& Jet::operator-=(const Jet& o)
{
    c_.resize(std::min(c_.size(), o.c_.size()));
    for (std::size_t j = 0; j < c_.size(); ++j)
        c_[j] -= o.c_[j];
    return *this;
}

Jet& Jet::operator*=(double a)
{
    for (double& x : c_)
        x *= a;
    return *this;
}

Jet& Jet::operator+=(double a)
{
    c_[0] += a;
    return *this;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }
Jet operator-(Jet a) { return a *= -1.0; }
Jet operator*(Jet a, double x) { return a *= x; }
Jet operator*(double x, Jet a) { return a *= x; }
Jet operator+(Jet a, double x) { return a += x; }
Jet operator+(double x, Jet a) { return a += x; }
Jet operator-(Jet a, double x) { return a += -x; }
Jet operator-(double x, Jet a) { return (a *= -1.0) += x; }

Jet operator*(const Jet& a, const Jet& b)
{
    const int n = std::min(a.order(), b.order());
    Jet p(0.0, n);
    for (int j = 0; j <= n; ++j) {
        double s = 0.0;
        for (int i = 0; i <= j; ++i)
            s += a.coeff(i) * b.coeff(j - i);
        p.coeff(j) = s;
    }
    return p;
}

Jet operator/(const Jet& a, const Jet& b)
{
    const int n = std::min(a.order(), b.order());
    if (b.value() == 0.0)
        throw NumericalError("jet division by zero");
    Jet q(0.0, n);
    for (int j = 0; j <= n; ++j) {
        double s = a.coeff(j);
        for (int i = 1; i <= j; ++i)
            s -= b.coeff(i) * q.coeff(j - i);
        q.coeff(j) = s / b.value();
    }
    return q;
}

// Series recurrences from g' = a' g (exp) and a g' = a' (log) etc.
Jet exp(const Jet& a)
{
    const int n = a.order();
    Jet g(std::exp(a.value()), n);
    for (int j = 1; j <= n; ++j) {
        double s = 0.0;
        for (int i = 1; i <= j; ++i)
            s += i * a.coeff(i) * g.coeff(j - i);
        g.coeff(j) = s / j;
    }
    return g;
}

Jet log(const Jet& a)
{
    if (!(a.value() > 0.0))
        throw NumericalError("jet log of non-positive value");
    const int n = a.order();
    Jet g(std::log(a.value()), n);
    for (int j = 1; j <= n; ++j) {
        double s = j * a.coeff(j);
        for (int i = 1; i < j; ++i)
            s -= i * g.coeff(i) * a.coeff(j - i);
        g.coeff(j) = s / (j * a.value());
    }
    return g;
}

Jet pow(const Jet& a, double p)
{
    const int n = a.order();
    if (a.value() == 0.0) {
        // exact for non-negative integer powers of a jet vanishing at x0
        const double ip = std::round(p);
        if (ip != p || p < 0.0)
            throw NumericalError("jet pow at zero needs a non-negative integer exponent");
        Jet r(1.0, n);
        for (int i = 0; i < static_cast<int>(ip); ++i)
            r = r * a;
        return r;
    }
    // a g' = p a' g
    Jet g(std::pow(a.value(), p), n);
    for (int j = 1; j <= n; ++j) {
        double s = 0.0;
        for (int i = 1; i <= j; ++i)
            s += (p * i - (j - i)) * a.coeff(i) * g.coeff(j - i);
        g.coeff(j) = s / (j * a.value());
    }
    return g;
}

Jet sqrt(const Jet& a) { return pow(a, 0.5); }

Jet sinh(const Jet& a)
{
    const Jet e = exp(a), m = exp(-a);
    return 0.5 * (e - m);
}

Jet cosh(const Jet& a)
{
    const Jet e = exp(a), m = exp(-a);
    return 0.5 * (e + m);
}

Jet tanh(const Jet& a)
{
    // 1 - 2/(e^{2a} + 1) keeps accuracy for large a
    const Jet e = exp(2.0 * a);
    return 1.0 - 2.0 * (Jet(1.0, a.order()) / (e + 1.0));
}

Jet euclidean_laplacian(const Jet& f, const Jet& s, int N)
{
    const Jet d1 = f.derivative();
    const Jet d2 = d1.derivative();
    return d2 + (N - 1) * (d1 / s);
}

Jet hyperbolic_laplacian(const Jet& f, const Jet& r, int N)
{
    const Jet d1 = f.derivative();
    const Jet d2 = d1.derivative();
    return d2 + (N - 1) * (d1 * (cosh(r) / sinh(r)));
}

} // namespace hyperadams

#pragma once

#include <stdexcept>
#include <string>

namespace hyperadams {

// Point outside the ball, k >= N, negative radius and similar.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class UnsupportedError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Bad configuration or inconsistent inputs detected before computing.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Non-finite samples, overflow, failed factorization, negative quadratic form.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace hyperadams

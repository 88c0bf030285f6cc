#pragma once

#include "hyperadams/profile.hpp"

#include <random>
#include <string>
#include <vector>

namespace hyperadams {

// Generator for randomized sweeps: 64-bit Mersenne twister, seeded explicitly.
using Rng = std::mt19937_64;
inline constexpr const char* rng_name = "mt19937_64";
inline constexpr int rng_version = 1;

// (1 - (s/a)^2)^q on [0, a]
PiecewiseProfile polynomial_bump(double a, int q, double amplitude = 1.0);

struct NamedProfile {
    std::string name;
    PiecewiseProfile profile;
};

// Three fixed compactly supported bumps used by the energy identity checks.
std::vector<NamedProfile> standard_bumps();

// Random even polynomial times (1 - (s/rho)^2)^q, rho in [rho_min, rho_max].
PiecewiseProfile random_bump(Rng& rng, int q, double rho_min = 0.3, double rho_max = 0.9);

} // namespace hyperadams

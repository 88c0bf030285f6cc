#pragma once

#include "hyperadams/pde.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hyperadams::cli {

enum class Experiment {
    constants,
    conformal_identity,
    inequalities,
    blowup,
    sobolev_asymptotics,
    solve_pde,
    isometry_2d,
};

const char* to_string(Experiment e);

// Flat "key = value" settings, one experiment per file. Lists are comma
// separated; k also accepts a range "a..b".
struct ExperimentConfig {
    Experiment experiment = Experiment::constants;
    std::vector<int> k;
    int n_nodes = 400;
    double R_max = 8.0;
    double grading = 1.0;  // sinh stretching of the radial map, 0 = uniform
    int extra_dims = 0;    // constants: also N = 2k+1 .. 2k+extra_dims
    std::vector<double> beta_list{0.9, 1.0, 1.1};  // units of beta0(k, 2k)
    std::vector<double> m_list{1e3, 1e4, 1e5, 1e6};
    double delta = 0.5;
    int samples = 100;
    std::uint64_t seed = 1;
    double tol = 1e-10;
    int max_iter = 100;
    SolveMode mode = SolveMode::convex;
    QSpec q1{"gaussian", 0.0, 1.0, 2.0};
    QSpec q2{"gaussian", 0.0, 1.0, 2.0};
    int b_count = 10;
    double b_max = 0.5;
    std::string output = ".";

    bool operator==(const ExperimentConfig&) const = default;
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

// Throws ValidationError naming the line or key at fault.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Keys used by the experiment in canonical form; parse_config of the joined
// lines gives back an equal config.
KeyValues echo_config(const ExperimentConfig& config);
std::string format_config(const ExperimentConfig& config);

std::vector<std::string> allowed_keys(Experiment e);

} // namespace hyperadams::cli

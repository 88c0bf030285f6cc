#pragma once

#include "hyperadams/cli/config.hpp"
#include "hyperadams/cli/report.hpp"

#include <optional>

namespace hyperadams::cli {

// --threads value, else HYPERADAMS_THREADS, else 1
int resolve_threads(std::optional<int> flag);

// Rows are computed in parallel and assembled in a fixed order, so the table
// does not depend on the thread count.
ExperimentReport run_experiment(const ExperimentConfig& config, int threads = 1);

// Runs conformal-identity, inequalities or solve-pde at n_nodes, 2n and 4n.
// converged is false when an observed order falls below the documented
// order minus 1/2.
ExperimentReport convergence_study(const ExperimentConfig& config, int threads = 1);

inline constexpr double documented_order = 4.0;

// Maps the library's exception types to exit codes; writes the message to stderr.
int exit_code_for_current_exception();

} // namespace hyperadams::cli

#pragma once

#include "hyperadams/cli/config.hpp"

#include <json.hpp>

#include <string>
#include <variant>
#include <vector>

namespace hyperadams::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_internal = 1,
    exit_validation = 2,
    exit_numerical = 3,
    exit_not_converged = 4,
};

using Cell = std::variant<long long, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
};

struct ExperimentReport {
    ExperimentConfig config;
    std::string name;  // file stem: the experiment, or <experiment>_convergence
    Table table;
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();
    std::vector<std::string> warnings;
    bool converged = true;  // false maps to exit_not_converged
    double wall_time = 0.0;  // seconds
};

// One number per cell: integers as written, reals as %.16e.
std::string format_cell(const Cell& c);
// Header and rows, '\n' line endings, no timestamp line.
std::string csv_body(const Table& t);

nlohmann::ordered_json environment_stamp();
nlohmann::ordered_json report_json(const ExperimentReport& r, const std::string& timestamp);

std::string utc_timestamp();

// Writes <dir>/<name>.csv and <dir>/<name>.json through a temporary file and a
// rename; the CSV starts with a "# generated <timestamp>" line.
void write_report(const ExperimentReport& r, const std::string& dir);

} // namespace hyperadams::cli

#include "hyperadams/cli/report.hpp"

#include "hyperadams/families.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>

#ifndef HYPERADAMS_VERSION
#define HYPERADAMS_VERSION "0.0.0"
#endif
#ifndef HYPERADAMS_BUILD_HASH
#define HYPERADAMS_BUILD_HASH "unknown"
#endif

namespace hyperadams::cli {

namespace fs = std::filesystem;

void Table::add(std::vector<Cell> row)
{
    if (row.size() != columns.size())
        throw std::logic_error("table row has " + std::to_string(row.size()) + " cells, header has " +
                               std::to_string(columns.size()));
    rows.push_back(std::move(row));
}

std::string format_cell(const Cell& c)
{
    if (const auto* i = std::get_if<long long>(&c))
        return std::to_string(*i);
    if (const auto* s = std::get_if<std::string>(&c))
        return *s;
    const double x = std::get<double>(c);
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

std::string csv_body(const Table& t)
{
    std::string out;
    for (std::size_t j = 0; j < t.columns.size(); ++j)
        out += (j ? "," : "") + t.columns[j];
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j)
                out += ',';
            out += format_cell(row[j]);
        }
        out += '\n';
    }
    return out;
}

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

nlohmann::ordered_json environment_stamp()
{
    nlohmann::ordered_json e;
    e["version"] = HYPERADAMS_VERSION;
    e["build_hash"] = HYPERADAMS_BUILD_HASH;
    e["compiler"] = __VERSION__;
    e["rng"] = std::string(rng_name) + " v" + std::to_string(rng_version);
    return e;
}

namespace {

nlohmann::ordered_json cell_json(const Cell& c)
{
    if (const auto* i = std::get_if<long long>(&c))
        return *i;
    if (const auto* s = std::get_if<std::string>(&c))
        return *s;
    const double x = std::get<double>(c);
    // JSON has no nan/inf; keep the CSV spelling
    if (!std::isfinite(x))
        return format_cell(c);
    return x;
}

void write_atomic(const fs::path& path, const std::string& content)
{
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out.flush())
            throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

} // namespace

nlohmann::ordered_json report_json(const ExperimentReport& r, const std::string& timestamp)
{
    nlohmann::ordered_json j;
    j["experiment"] = to_string(r.config.experiment);
    j["report"] = r.name;
    j["timestamp"] = timestamp;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [key, value] : echo_config(r.config))
        cfg[key] = value;
    j["config"] = cfg;
    j["environment"] = environment_stamp();
    j["wall_time_seconds"] = r.wall_time;
    j["converged"] = r.converged;
    j["summary"] = r.summary;
    j["warnings"] = r.warnings;
    j["columns"] = r.table.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : r.table.rows) {
        auto a = nlohmann::ordered_json::array();
        for (const auto& c : row)
            a.push_back(cell_json(c));
        rows.push_back(std::move(a));
    }
    j["rows"] = std::move(rows);
    return j;
}

void write_report(const ExperimentReport& r, const std::string& dir)
{
    const fs::path d(dir);
    fs::create_directories(d);
    const std::string ts = utc_timestamp();
    write_atomic(d / (r.name + ".csv"), "# generated " + ts + "\n" + csv_body(r.table));
    write_atomic(d / (r.name + ".json"), report_json(r, ts).dump(2) + "\n");
}

} // namespace hyperadams::cli

#include "hyperadams/cli/config.hpp"

#include "hyperadams/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace hyperadams::cli {

namespace {

const std::vector<std::pair<Experiment, const char*>> experiment_names = {
    {Experiment::constants, "constants"},
    {Experiment::conformal_identity, "conformal-identity"},
    {Experiment::inequalities, "inequalities"},
    {Experiment::blowup, "blowup"},
    {Experiment::sobolev_asymptotics, "sobolev-asymptotics"},
    {Experiment::solve_pde, "solve-pde"},
    {Experiment::isometry_2d, "isometry-2d"},
};

const std::vector<std::string> known_keys = {
    "experiment", "k",    "n_nodes", "R_max", "grading", "extra_dims", "beta_list", "m_list",  "delta", "samples",
    "seed",       "tol",  "max_iter", "mode", "Q1",      "Q2",         "b_count",   "b_max",   "output",
};

std::string trim(const std::string& s)
{
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos)
        return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep))
        out.push_back(trim(item));
    if (!s.empty() && s.back() == sep)
        out.push_back("");
    return out;
}

[[noreturn]] void bad(const std::string& key, const std::string& why)
{
    throw ValidationError("config key '" + key + "': " + why);
}

double to_double(const std::string& key, const std::string& v)
{
    double x = 0.0;
    const auto* end = v.data() + v.size();
    const auto r = std::from_chars(v.data(), end, x);
    if (v.empty() || r.ec != std::errc() || r.ptr != end)
        bad(key, "'" + v + "' is not a number");
    if (!std::isfinite(x))
        bad(key, "value must be finite");
    return x;
}

template <class Int>
Int to_int(const std::string& key, const std::string& v)
{
    Int x = 0;
    const auto* end = v.data() + v.size();
    const auto r = std::from_chars(v.data(), end, x);
    if (v.empty() || r.ec != std::errc() || r.ptr != end)
        bad(key, "'" + v + "' is not an integer");
    return x;
}

std::vector<double> to_doubles(const std::string& key, const std::string& v)
{
    std::vector<double> out;
    for (const auto& item : split(v, ','))
        out.push_back(to_double(key, item));
    if (out.empty())
        bad(key, "empty list");
    return out;
}

std::vector<int> to_k_list(const std::string& v)
{
    std::vector<int> out;
    const auto dots = v.find("..");
    if (dots != std::string::npos) {
        const int a = to_int<int>("k", trim(v.substr(0, dots)));
        const int b = to_int<int>("k", trim(v.substr(dots + 2)));
        if (b < a)
            bad("k", "empty range " + v);
        for (int k = a; k <= b; ++k)
            out.push_back(k);
        return out;
    }
    for (const auto& item : split(v, ','))
        out.push_back(to_int<int>("k", item));
    if (out.empty())
        bad("k", "empty list");
    return out;
}

QSpec to_qspec(const std::string& key, const std::string& v)
{
    const auto parts = split(v, ',');
    if (parts.size() != 3 && parts.size() != 4)
        bad(key, "expected family,amp,width[,exponent]");
    QSpec q;
    q.family = parts[0];
    q.amp = to_double(key, parts[1]);
    q.width = to_double(key, parts[2]);
    if (parts.size() == 4)
        q.exponent = to_double(key, parts[3]);
    if (q.family != "gaussian" && q.family != "bump" && q.family != "rational-decay")
        bad(key, "unknown family '" + q.family + "' (gaussian, bump, rational-decay)");
    if (!(q.width > 0.0))
        bad(key, "width must be positive");
    if (q.family == "rational-decay" && !(q.exponent > 0.0))
        bad(key, "exponent must be positive");
    return q;
}

std::string num(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

template <class T>
std::string join(const std::vector<T>& xs)
{
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i)
            s += ",";
        if constexpr (std::is_same_v<T, double>)
            s += num(xs[i]);
        else
            s += std::to_string(xs[i]);
    }
    return s;
}

std::string qspec_text(const QSpec& q)
{
    return q.family + "," + num(q.amp) + "," + num(q.width) + "," + num(q.exponent);
}

void check_k(const ExperimentConfig& c)
{
    int lo = 1, hi = 3;
    bool single = false;
    switch (c.experiment) {
    case Experiment::constants:
        hi = 8;
        break;
    case Experiment::blowup:
    case Experiment::sobolev_asymptotics:
    case Experiment::solve_pde:
        single = true;
        break;
    case Experiment::isometry_2d:
        hi = 1;
        single = true;
        break;
    default:
        break;
    }
    if (single && c.k.size() != 1)
        bad("k", std::string("experiment ") + to_string(c.experiment) + " takes a single k");
    std::set<int> seen;
    for (int k : c.k) {
        if (k < lo || k > hi)
            bad("k", std::to_string(k) + " outside " + std::to_string(lo) + ".." + std::to_string(hi) +
                         " for experiment " + to_string(c.experiment));
        if (!seen.insert(k).second)
            bad("k", "repeated value " + std::to_string(k));
    }
}

void validate(const ExperimentConfig& c, const std::set<std::string>& present)
{
    check_k(c);
    auto has = [&](const char* key) { return present.count(key) > 0; };
    if (has("n_nodes") && (c.n_nodes < 50 || c.n_nodes > 200000))
        bad("n_nodes", "must lie in 50..200000");
    if (has("R_max") && !(c.R_max > 0.0 && c.R_max <= 40.0))
        bad("R_max", "must lie in (0, 40]");
    if (has("grading") && !(c.grading >= 0.0 && c.grading <= 20.0))
        bad("grading", "must lie in [0, 20]");
    if (has("extra_dims") && (c.extra_dims < 0 || c.extra_dims > 20))
        bad("extra_dims", "must lie in 0..20");
    for (double b : c.beta_list)
        if (!(b > 0.0))
            bad("beta_list", "entries must be positive");
    for (double m : c.m_list)
        if (!(m >= 2.0))
            bad("m_list", "entries must be at least 2");
    if (std::set<double>(c.m_list.begin(), c.m_list.end()).size() != c.m_list.size())
        bad("m_list", "repeated value");
    if (std::set<double>(c.beta_list.begin(), c.beta_list.end()).size() != c.beta_list.size())
        bad("beta_list", "repeated value");
    if (c.experiment == Experiment::blowup && c.m_list.size() < 2)
        bad("m_list", "the slope fit needs at least two values");
    if (!(c.delta > 0.0 && c.delta < 1.0))
        bad("delta", "must lie in (0, 1)");
    if (c.samples < 1 || c.samples > 100000)
        bad("samples", "must lie in 1..100000");
    if (!(c.tol > 0.0))
        bad("tol", "must be positive");
    if (c.max_iter < 1)
        bad("max_iter", "must be at least 1");
    if (c.b_count < 1 || c.b_count > 10000)
        bad("b_count", "must lie in 1..10000");
    if (!(c.b_max > 0.0 && c.b_max < 0.9))
        bad("b_max", "must lie in (0, 0.9)");
    if (c.output.empty())
        bad("output", "empty path");
}

} // namespace

const char* to_string(Experiment e)
{
    for (const auto& [x, name] : experiment_names)
        if (x == e)
            return name;
    return "unknown";
}

std::vector<std::string> allowed_keys(Experiment e)
{
    std::vector<std::string> keys{"experiment", "k", "output"};
    auto add = [&](std::initializer_list<const char*> more) { keys.insert(keys.end(), more.begin(), more.end()); };
    switch (e) {
    case Experiment::constants:
        add({"extra_dims"});
        break;
    case Experiment::conformal_identity:
        add({"n_nodes", "R_max", "grading"});
        break;
    case Experiment::inequalities:
        add({"n_nodes", "R_max", "grading", "samples", "seed", "delta"});
        break;
    case Experiment::blowup:
        add({"beta_list", "m_list"});
        break;
    case Experiment::sobolev_asymptotics:
        add({"m_list"});
        break;
    case Experiment::solve_pde:
        add({"n_nodes", "R_max", "grading", "tol", "max_iter", "mode", "Q1", "Q2"});
        break;
    case Experiment::isometry_2d:
        add({"b_count", "b_max", "seed"});
        break;
    }
    return keys;
}

ExperimentConfig parse_config(const std::string& text)
{
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (std::find(known_keys.begin(), known_keys.end(), key) == known_keys.end())
            throw ValidationError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (value.empty())
            bad(key, "missing value");
        if (!kv.emplace(key, value).second)
            bad(key, "given twice");
    }

    if (!kv.count("experiment"))
        throw ValidationError("config: missing required key 'experiment'");
    ExperimentConfig c;
    bool found = false;
    for (const auto& [e, name] : experiment_names)
        if (kv["experiment"] == name) {
            c.experiment = e;
            found = true;
        }
    if (!found)
        bad("experiment", "unknown experiment '" + kv["experiment"] + "'");
    if (!kv.count("k"))
        throw ValidationError("config: missing required key 'k'");

    const auto allowed = allowed_keys(c.experiment);
    std::set<std::string> present;
    for (const auto& [key, value] : kv) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            bad(key, std::string("not used by experiment ") + to_string(c.experiment));
        present.insert(key);
    }

    for (const auto& [key, v] : kv) {
        if (key == "k")
            c.k = to_k_list(v);
        else if (key == "n_nodes")
            c.n_nodes = to_int<int>(key, v);
        else if (key == "R_max")
            c.R_max = to_double(key, v);
        else if (key == "grading")
            c.grading = to_double(key, v);
        else if (key == "extra_dims")
            c.extra_dims = to_int<int>(key, v);
        else if (key == "beta_list")
            c.beta_list = to_doubles(key, v);
        else if (key == "m_list")
            c.m_list = to_doubles(key, v);
        else if (key == "delta")
            c.delta = to_double(key, v);
        else if (key == "samples")
            c.samples = to_int<int>(key, v);
        else if (key == "seed")
            c.seed = to_int<std::uint64_t>(key, v);
        else if (key == "tol")
            c.tol = to_double(key, v);
        else if (key == "max_iter")
            c.max_iter = to_int<int>(key, v);
        else if (key == "mode") {
            if (v == "convex")
                c.mode = SolveMode::convex;
            else if (v == "log-constrained")
                c.mode = SolveMode::log_constrained;
            else
                bad(key, "expected convex or log-constrained");
        } else if (key == "Q1")
            c.q1 = to_qspec(key, v);
        else if (key == "Q2")
            c.q2 = to_qspec(key, v);
        else if (key == "b_count")
            c.b_count = to_int<int>(key, v);
        else if (key == "b_max")
            c.b_max = to_double(key, v);
        else if (key == "output")
            c.output = v;
    }
    validate(c, present);
    return c;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot read config file " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return parse_config(s.str());
}

KeyValues echo_config(const ExperimentConfig& c)
{
    KeyValues out;
    for (const auto& key : allowed_keys(c.experiment)) {
        std::string v;
        if (key == "experiment")
            v = to_string(c.experiment);
        else if (key == "k")
            v = join(c.k);
        else if (key == "n_nodes")
            v = std::to_string(c.n_nodes);
        else if (key == "R_max")
            v = num(c.R_max);
        else if (key == "grading")
            v = num(c.grading);
        else if (key == "extra_dims")
            v = std::to_string(c.extra_dims);
        else if (key == "beta_list")
            v = join(c.beta_list);
        else if (key == "m_list")
            v = join(c.m_list);
        else if (key == "delta")
            v = num(c.delta);
        else if (key == "samples")
            v = std::to_string(c.samples);
        else if (key == "seed")
            v = std::to_string(c.seed);
        else if (key == "tol")
            v = num(c.tol);
        else if (key == "max_iter")
            v = std::to_string(c.max_iter);
        else if (key == "mode")
            v = hyperadams::to_string(c.mode);
        else if (key == "Q1")
            v = qspec_text(c.q1);
        else if (key == "Q2")
            v = qspec_text(c.q2);
        else if (key == "b_count")
            v = std::to_string(c.b_count);
        else if (key == "b_max")
            v = num(c.b_max);
        else if (key == "output")
            v = c.output;
        out.emplace_back(key, v);
    }
    return out;
}

std::string format_config(const ExperimentConfig& c)
{
    std::string s;
    for (const auto& [key, value] : echo_config(c))
        s += key + " = " + value + "\n";
    return s;
}

} // namespace hyperadams::cli

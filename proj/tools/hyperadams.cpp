#include "hyperadams/cli/experiments.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

using namespace hyperadams::cli;

namespace {

int execute(const std::string& config_path, const std::string& out_flag, std::optional<int> threads_flag,
            bool converge)
{
    try {
        // everything is validated before any file is touched
        auto config = load_config(config_path);
        if (!out_flag.empty())
            config.output = out_flag;
        const int threads = resolve_threads(threads_flag);
        const auto report = converge ? convergence_study(config, threads) : run_experiment(config, threads);
        write_report(report, config.output);
        for (const auto& w : report.warnings)
            std::cerr << "warning: " << w << "\n";
        std::cout << config.output << "/" << report.name << ".csv (" << report.table.rows.size() << " rows, "
                  << report.wall_time << " s)\n";
        if (!report.converged) {
            std::cerr << (converge ? "observed order below documented order" : "solver did not converge") << "\n";
            return exit_not_converged;
        }
        return exit_ok;
    } catch (...) {
        return exit_code_for_current_exception();
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"hyperadams: radial experiments on the Poincare ball"};
    app.require_subcommand(1);

    std::string run_config, run_out, conv_config, conv_out;
    std::optional<int> run_threads, conv_threads;

    auto* run = app.add_subcommand("run", "run one experiment and write <experiment>.csv/.json");
    run->add_option("config", run_config, "config file")->required();
    run->add_option("--out", run_out, "output directory (overrides the output key)");
    run->add_option("--threads", run_threads, "worker threads (default: HYPERADAMS_THREADS or 1)");

    auto* conv = app.add_subcommand("converge", "run at n_nodes, 2n, 4n and fit the observed order");
    conv->add_option("config", conv_config, "config file")->required();
    conv->add_option("--out", conv_out, "output directory (overrides the output key)");
    conv->add_option("--threads", conv_threads, "worker threads (default: HYPERADAMS_THREADS or 1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_validation;
    }

    if (run->parsed())
        return execute(run_config, run_out, run_threads, false);
    return execute(conv_config, conv_out, conv_threads, true);
}

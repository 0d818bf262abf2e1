//! Command-line front end: validate, run, plot, version.
//!
//! Exit codes: 0 all checks pass, 1 statistical failure (or θ violating
//! hypothesis (H) for `validate`), 2 usage or configuration error.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "poissonbm/experiment.hpp"
#include "poissonbm/plot.hpp"
#include "poissonbm/run_config.hpp"

namespace {

using namespace poissonbm;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::optional<std::string> env(char const* name)
{
    if (char const* v = std::getenv(name); v && *v)
        return std::string(v);
    return std::nullopt;
}

void print_hypothesis(HypothesisReport const& h, std::ostream& os)
{
    if (h.valid)
        os << "hypothesis (H): satisfied\n";
    else
        os << "hypothesis (H): violated\n";
    for (auto const& v : h.violations)
    {
        os << "  " << to_string(v.rule) << " components " << v.first << ","
           << v.second << '\n';
    }
    for (auto idx : h.pi_rescaled_indices)
        os << "  component " << idx << ": theta = pi, rescaled by 1/sqrt(2)\n";
}

int cmd_validate(std::string const& path)
{
    auto const config = load_run_config(path);
    auto const report = validate_hypothesis_h(config.theta);
    print_hypothesis(report, std::cout);
    return report.valid ? kExitPass : kExitFail;
}

int cmd_run(std::string const& path, std::optional<std::size_t> workers_flag)
{
    auto config = load_run_config(path);
    if (auto dir = env("POISSONBM_OUTPUT_DIR"))
        config.output_dir = *dir;

    RunOptions options;
    if (auto w = env("POISSONBM_WORKERS"))
    {
        try
        {
            options.workers = std::stoul(*w);
        }
        catch (std::exception const&)
        {
            throw ConfigError("POISSONBM_WORKERS must be a positive integer");
        }
    }
    if (workers_flag)
        options.workers = *workers_flag;
    if (options.workers == 0)
        throw ConfigError("worker count must be positive");

    RunTimings timings;
    RunReport const report = run_experiment(config, options, &timings);
    write_report(report, timings, options.workers, config.output_dir);

    auto print = [](CheckResult const& c) {
        if (!c.pass)
            std::cout << "  FAIL " << c.name << " value=" << c.value
                      << " target=" << c.target << " band=" << c.band << '\n';
    };
    for (auto const& r : report.per_epsilon)
    {
        std::cout << "epsilon " << r.epsilon << ":\n";
        for (auto const& c : r.checks)
            print(c);
    }
    std::cout << "sweep:\n";
    for (auto const& c : report.sweep_checks)
        print(c);
    std::cout << report.checks_total - report.checks_failed << "/"
              << report.checks_total << " checks passed; report written to "
              << config.output_dir << '\n';
    return report.all_pass ? kExitPass : kExitFail;
}

struct PlotArgs
{
    std::string report;
    std::string kind;
    std::optional<std::size_t> epsilon_index;
    std::size_t component = 1;
    std::vector<std::size_t> pair;
    std::string output;
};

int cmd_plot(PlotArgs const& args)
{
    auto const report = load_report(args.report);
    PlotOptions options;
    options.epsilon_index = args.epsilon_index;
    if (args.component == 0)
        throw std::invalid_argument("--component is 1-based");
    options.component = args.component - 1;
    if (!args.pair.empty())
    {
        if (args.pair.size() != 2 || args.pair[0] == 0 || args.pair[1] == 0)
            throw std::invalid_argument("--pair expects two 1-based indices");
        options.pair = std::make_pair(args.pair[0] - 1, args.pair[1] - 1);
    }
    std::string const csv
        = emit_plot_data(report, parse_plot_kind(args.kind), options);
    if (args.output.empty())
    {
        std::cout << csv;
        return kExitPass;
    }
    std::ofstream out(args.output, std::ios::binary);
    if (!(out << csv))
        throw std::runtime_error("cannot write '" + args.output + "'");
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Poisson-driven Brownian approximation experiments"};
    app.require_subcommand(1);

    std::string config_path;
    auto* validate = app.add_subcommand("validate", "check theta against (H)");
    validate->add_option("config", config_path, "run config file")->required();

    std::optional<std::size_t> workers;
    auto* run = app.add_subcommand("run", "run the full experiment");
    run->add_option("config", config_path, "run config file")->required();
    run->add_option("--workers", workers, "worker threads");

    PlotArgs plot_args;
    auto* plot = app.add_subcommand("plot", "emit plot-ready CSV from a report");
    plot->add_option("report", plot_args.report, "report.json")->required();
    plot->add_option("--kind", plot_args.kind,
                     "rate_loglog, cov_heatmap or marginal_hist")
        ->required();
    plot->add_option("--epsilon-index", plot_args.epsilon_index,
                     "0-based epsilon index (default: smallest epsilon)");
    plot->add_option("--component", plot_args.component,
                     "1-based component for marginal_hist");
    plot->add_option("--pair", plot_args.pair,
                     "1-based component pair for rate_loglog")
        ->expected(2)
        ->delimiter(',');
    plot->add_option("-o,--output", plot_args.output, "output file");

    auto* version = app.add_subcommand("version", "print the tool version");

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::CallForHelp const& e)
    {
        return app.exit(e);
    }
    catch (CLI::ParseError const& e)
    {
        app.exit(e);
        return kExitUsage;
    }

    try
    {
        if (*validate)
            return cmd_validate(config_path);
        if (*run)
            return cmd_run(config_path, workers);
        if (*plot)
            return cmd_plot(plot_args);
        if (*version)
        {
            std::cout << "poissonbm " << tool_version() << '\n';
            return kExitPass;
        }
    }
    catch (HypothesisError const& e)
    {
        std::cerr << "error: refusing to run invalid theta\n";
        print_hypothesis(e.report(), std::cerr);
        return kExitUsage;
    }
    catch (std::exception const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

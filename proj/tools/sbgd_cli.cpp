// Experiment harness around the sbgd library: seeded runs, (p,q,J) sweeps and
// a brute-force oracle, all emitting CSV for downstream plotting.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sbgd/sbgd.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitLineSearch = 3;
constexpr int kExitIo = 4;

void print_replicates(const std::vector<sbgd::RunResult>& results,
                      const std::optional<sbgd::OracleResult>& oracle) {
    for (const sbgd::RunResult& r : results) {
        std::cout << "seed=" << r.seed << " termination=" << sbgd::to_string(r.termination)
                  << " iterations=" << r.iterations_used << " x=(";
        for (std::size_t k = 0; k < r.solution.size(); ++k)
            std::cout << (k ? "," : "") << sbgd::format_double(r.solution[k]);
        std::cout << ") f=" << sbgd::format_double(r.f_solution);
        if (oracle)
            std::cout << " deviation="
                      << sbgd::format_double(sbgd::distance(r.solution, oracle->argmin));
        std::cout << '\n';
    }
}

int run_command(const std::string& config_path, std::optional<std::uint64_t> seed,
                std::optional<std::string> out_dir, std::optional<sbgd::Variant> force_variant) {
    sbgd::ExperimentConfig config = sbgd::load_config(config_path);
    if (seed) config.params.seed = *seed;
    if (out_dir) config.output_dir = *out_dir;
    if (force_variant) config.params.variant = *force_variant;

    sbgd::SBGDParams resolved = config.params;
    const sbgd::Objective objective = sbgd::resolve_objective(config, resolved);
    std::cout << "objective=" << objective.name << " variant=" << sbgd::to_string(resolved.variant)
              << " J=" << resolved.agent_count << " L=" << sbgd::format_double(resolved.lipschitz)
              << (resolved.lipschitz_exact ? " (exact)" : "") << " repeats=" << config.repeats
              << " out=" << config.output_dir << '\n';

    const std::vector<sbgd::RunResult> results = sbgd::run_experiment(config);
    print_replicates(results, sbgd::experiment_oracle(config, objective));
    return 0;
}

int sweep_command(const std::string& config_path) {
    const sbgd::ExperimentConfig config = sbgd::load_config(config_path);
    const sbgd::SweepReport report = sbgd::run_sweep(config);
    std::cout << "oracle argmin=(";
    for (std::size_t k = 0; k < report.oracle.argmin.size(); ++k)
        std::cout << (k ? "," : "") << sbgd::format_double(report.oracle.argmin[k]);
    std::cout << ") f_min=" << sbgd::format_double(report.oracle.f_min) << '\n';
    std::cout << "q,J,p,mean_deviation,min_deviation,iterations_mean,success_rate\n";
    for (const sbgd::SweepRow& row : report.rows) {
        std::cout << sbgd::format_double(row.q) << ',' << row.J << ',' << sbgd::format_double(row.p)
                  << ',' << sbgd::format_double(row.mean_deviation) << ','
                  << sbgd::format_double(row.min_deviation) << ','
                  << sbgd::format_double(row.iterations_mean) << ','
                  << sbgd::format_double(row.success_rate) << '\n';
    }
    return 0;
}

int oracle_command(const std::string& objective_name, double resolution) {
    const sbgd::Objective objective = sbgd::objective_by_name(objective_name);
    const sbgd::OracleResult oracle = sbgd::grid_oracle(objective, resolution);
    std::cout << "objective=" << objective.name << " argmin=(";
    for (std::size_t k = 0; k < oracle.argmin.size(); ++k)
        std::cout << (k ? "," : "") << sbgd::format_double(oracle.argmin[k]);
    std::cout << ") f_min=" << sbgd::format_double(oracle.f_min)
              << " resolution=" << sbgd::format_double(oracle.grid_resolution) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"swarm-based gradient descent experiment harness"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    std::string objective_name;
    double resolution = 1e-4;

    CLI::App* cmd_run = app.add_subcommand("run", "execute seeded replicates of a config");
    cmd_run->add_option("--config", config_path, "config file")->required();
    CLI::Option* run_seed = cmd_run->add_option("--seed", seed, "override the base seed");
    CLI::Option* run_out = cmd_run->add_option("--out", out_dir, "override the output directory");

    CLI::App* cmd_sweep = app.add_subcommand("sweep", "run the config's (p,q,J) sweep");
    cmd_sweep->add_option("--config", config_path, "config file")->required();

    CLI::App* cmd_oracle = app.add_subcommand("oracle", "brute-force grid oracle for an objective");
    cmd_oracle->add_option("--objective", objective_name, "objective name")->required();
    cmd_oracle->add_option("--resolution", resolution, "grid resolution");

    CLI::App* cmd_baseline = app.add_subcommand("baseline", "run the config with variant=baseline");
    cmd_baseline->add_option("--config", config_path, "config file")->required();
    CLI::Option* base_seed = cmd_baseline->add_option("--seed", seed, "override the base seed");
    CLI::Option* base_out = cmd_baseline->add_option("--out", out_dir, "override the output directory");

    try {
        app.parse(argc, argv);
        if (cmd_run->parsed())
            return run_command(config_path,
                               run_seed->count() ? std::optional<std::uint64_t>(seed) : std::nullopt,
                               run_out->count() ? std::optional<std::string>(out_dir) : std::nullopt,
                               std::nullopt);
        if (cmd_sweep->parsed()) return sweep_command(config_path);
        if (cmd_oracle->parsed()) return oracle_command(objective_name, resolution);
        if (cmd_baseline->parsed())
            return run_command(config_path,
                               base_seed->count() ? std::optional<std::uint64_t>(seed) : std::nullopt,
                               base_out->count() ? std::optional<std::string>(out_dir) : std::nullopt,
                               sbgd::Variant::baseline);
        return kExitConfig;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    } catch (const sbgd::line_search_error& e) {
        std::cerr << "line-search failure: " << e.what() << '\n';
        return kExitLineSearch;
    } catch (const sbgd::io_error& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const sbgd::error& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    }
}

#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sbgd/driver.hpp"
#include "sbgd/errors.hpp"
#include "sbgd/objectives.hpp"
#include "sbgd/oracle.hpp"
#include "sbgd/trajectory_io.hpp"

namespace sbgd {

/// How the run's Lipschitz bound is chosen: the objective's own bound when it
/// ships one (falling back to sampling), a forced sampling estimate, or a
/// user-fixed number (never treated as exact).
enum class LipschitzMode { auto_hint, estimate, fixed };

struct ExperimentConfig {
    std::string objective_name = "paper-f";
    SBGDParams params;
    int repeats = 1;
    std::vector<double> sweep_p;
    std::vector<double> sweep_q;
    std::vector<int> sweep_J;
    std::string output_dir = "out";
    LipschitzMode lipschitz_mode = LipschitzMode::auto_hint;
    double fixed_lipschitz = 0.0;
    double oracle_resolution = 0.0; // 0 = auto: 1e-4 in 1-D, 1e-2 in 2-D
    int lipschitz_samples = 256;
};

struct SweepRow {
    int J = 0;
    double p = 1.0;
    double q = 1.0;
    double mean_deviation = 0.0;
    double min_deviation = 0.0;
    double iterations_mean = 0.0;
    double success_rate = 0.0;  // fraction of replicates with deviation <= 1e-2
};

struct SweepReport {
    std::vector<SweepRow> rows;
    OracleResult oracle;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline double config_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw config_error("config field '" + key + "': expected a number, got '" + value + "'");
    }
}

inline long long config_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw config_error("config field '" + key + "': expected an integer, got '" + value + "'");
    }
}

template <typename T, typename Parse>
std::vector<T> config_list(const std::string& key, const std::string& value, Parse parse) {
    std::vector<T> items;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty())
            throw config_error("config field '" + key + "': empty list element");
        items.push_back(parse(key, item));
    }
    if (items.empty()) throw config_error("config field '" + key + "': empty list");
    return items;
}

} // namespace detail

inline InitScheme init_scheme_from_string(const std::string& key, const std::string& value) {
    if (value == "uniform-random") return InitScheme::uniform_random;
    if (value == "equidistant") return InitScheme::equidistant;
    if (value == "left-cluster") return InitScheme::left_cluster;
    throw config_error("config field '" + key + "': unknown init scheme '" + value +
                       "' (uniform-random | equidistant | left-cluster)");
}

inline Variant variant_from_string(const std::string& key, const std::string& value) {
    if (value == "basic") return Variant::basic;
    if (value == "tolerance") return Variant::tolerance;
    if (value == "baseline") return Variant::baseline;
    throw config_error("config field '" + key + "': unknown variant '" + value +
                       "' (basic | tolerance | baseline)");
}

/// Flat key=value config file; '#' starts a comment. Unknown keys are errors
/// so typos cannot silently fall back to defaults.
inline ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("load_config: cannot open " + path.string());

    ExperimentConfig config;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (value.empty()) throw config_error("config field '" + key + "': empty value");

        if (key == "objective") {
            config.objective_name = value;
        } else if (key == "variant") {
            config.params.variant = variant_from_string(key, value);
        } else if (key == "J") {
            config.params.agent_count = static_cast<int>(detail::config_int(key, value));
        } else if (key == "p") {
            config.params.mass_exponent = detail::config_double(key, value);
        } else if (key == "q") {
            config.params.step_exponent = detail::config_double(key, value);
        } else if (key == "lambda") {
            config.params.armijo_fraction = detail::config_double(key, value);
        } else if (key == "gamma") {
            config.params.shrink_factor = detail::config_double(key, value);
        } else if (key == "L") {
            if (value == "estimate") {
                config.lipschitz_mode = LipschitzMode::estimate;
            } else {
                config.lipschitz_mode = LipschitzMode::fixed;
                config.fixed_lipschitz = detail::config_double(key, value);
            }
        } else if (key == "tolm") {
            config.params.tol_mass = detail::config_double(key, value);
        } else if (key == "tolmerge") {
            config.params.tol_merge = detail::config_double(key, value);
        } else if (key == "tolres") {
            config.params.tol_residual = detail::config_double(key, value);
        } else if (key == "init") {
            config.params.init_scheme = init_scheme_from_string(key, value);
        } else if (key == "seed") {
            config.params.seed = static_cast<std::uint64_t>(detail::config_int(key, value));
        } else if (key == "repeats") {
            config.repeats = static_cast<int>(detail::config_int(key, value));
        } else if (key == "max_iterations") {
            config.params.max_iterations = static_cast<int>(detail::config_int(key, value));
        } else if (key == "max_shrinks") {
            config.params.max_shrinks = static_cast<int>(detail::config_int(key, value));
        } else if (key == "oracle_resolution") {
            config.oracle_resolution = detail::config_double(key, value);
        } else if (key == "sweep.p") {
            config.sweep_p = detail::config_list<double>(key, value, detail::config_double);
        } else if (key == "sweep.q") {
            config.sweep_q = detail::config_list<double>(key, value, detail::config_double);
        } else if (key == "sweep.J") {
            config.sweep_J = detail::config_list<int>(key, value, [](const std::string& k, const std::string& v) {
                return static_cast<int>(detail::config_int(k, v));
            });
        } else if (key == "out") {
            config.output_dir = value;
        } else {
            throw config_error("config field '" + key + "': unknown key");
        }
    }
    if (config.repeats < 1) throw config_error("config field 'repeats': must be >= 1");
    return config;
}

/// Resolves the objective and fills in the run's Lipschitz bound according to
/// the config's mode. Only an objective's own shipped bound may count as
/// exact.
inline Objective resolve_objective(const ExperimentConfig& config, SBGDParams& params) {
    Objective objective = objective_by_name(config.objective_name);
    switch (config.lipschitz_mode) {
    case LipschitzMode::fixed:
        params.lipschitz = config.fixed_lipschitz;
        params.lipschitz_exact = false;
        break;
    case LipschitzMode::estimate:
        params.lipschitz = estimate_lipschitz(objective, config.lipschitz_samples, params.seed);
        params.lipschitz_exact = false;
        break;
    case LipschitzMode::auto_hint:
        if (objective.lipschitz_hint > 0.0) {
            params.lipschitz = objective.lipschitz_hint;
            params.lipschitz_exact = objective.lipschitz_exact;
        } else {
            params.lipschitz = estimate_lipschitz(objective, config.lipschitz_samples, params.seed);
            params.lipschitz_exact = false;
        }
        break;
    }
    params.validate();
    return objective;
}

inline double effective_oracle_resolution(const ExperimentConfig& config,
                                           const Objective& objective) {
    if (config.oracle_resolution > 0.0) return config.oracle_resolution;
    return objective.dim() == 1 ? 1e-4 : 1e-2;
}

inline std::optional<OracleResult> experiment_oracle(const ExperimentConfig& config,
                                                     const Objective& objective) {
    if (objective.dim() > 2) return std::nullopt;
    return grid_oracle(objective, effective_oracle_resolution(config, objective));
}

/// Executes `repeats` seeded replicates (replicate k uses seed + k), writing
/// trajectory_<k>.csv per run and one summary.csv. Returns results in
/// replicate order.
inline std::vector<RunResult> run_experiment(const ExperimentConfig& config) {
    SBGDParams params = config.params;
    const Objective objective = resolve_objective(config, params);
    const std::optional<OracleResult> oracle = experiment_oracle(config, objective);

    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec) throw io_error("run_experiment: cannot create output dir " + config.output_dir);

    std::vector<RunResult> results;
    results.reserve(static_cast<std::size_t>(config.repeats));
    for (int k = 0; k < config.repeats; ++k) {
        SBGDParams rep = params;
        rep.seed = params.seed + static_cast<std::uint64_t>(k);
        results.push_back(run(rep, objective));
        emit_trajectory_csv(results.back(), std::filesystem::path(config.output_dir) /
                                                ("trajectory_" + std::to_string(k) + ".csv"));
    }
    emit_summary(results, oracle ? &*oracle : nullptr, objective.dim(),
                 std::filesystem::path(config.output_dir) / "summary.csv");
    return results;
}

/// Cartesian (q, J, p) sweep, rows in ascending (q, J, p) order, each cell
/// aggregating `repeats` seeded replicates against one shared oracle.
inline SweepReport run_sweep(const ExperimentConfig& config) {
    SBGDParams base = config.params;
    const Objective objective = resolve_objective(config, base);
    if (objective.dim() > 2)
        throw config_error("sweep: deviation needs a 1-D or 2-D objective (grid oracle)");

    SweepReport report;
    report.oracle = grid_oracle(objective, effective_oracle_resolution(config, objective));

    std::vector<double> ps = config.sweep_p.empty() ? std::vector<double>{base.mass_exponent} : config.sweep_p;
    std::vector<double> qs = config.sweep_q.empty() ? std::vector<double>{base.step_exponent} : config.sweep_q;
    std::vector<int> Js = config.sweep_J.empty() ? std::vector<int>{base.agent_count} : config.sweep_J;
    std::sort(ps.begin(), ps.end());
    std::sort(qs.begin(), qs.end());
    std::sort(Js.begin(), Js.end());

    for (double q : qs) {
        for (int J : Js) {
            for (double p : ps) {
                SweepRow row;
                row.J = J;
                row.p = p;
                row.q = q;
                row.min_deviation = std::numeric_limits<double>::infinity();
                double dev_sum = 0.0, iter_sum = 0.0;
                int successes = 0;
                for (int k = 0; k < config.repeats; ++k) {
                    SBGDParams cell = base;
                    cell.agent_count = J;
                    cell.mass_exponent = p;
                    cell.step_exponent = q;
                    cell.seed = base.seed + static_cast<std::uint64_t>(k);
                    const RunResult r = run(cell, objective);
                    const double dev = distance(r.solution, report.oracle.argmin);
                    dev_sum += dev;
                    iter_sum += r.iterations_used;
                    row.min_deviation = std::min(row.min_deviation, dev);
                    if (dev <= 1e-2) ++successes;
                }
                row.mean_deviation = dev_sum / config.repeats;
                row.iterations_mean = iter_sum / config.repeats;
                row.success_rate = static_cast<double>(successes) / config.repeats;
                report.rows.push_back(row);
            }
        }
    }

    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec) throw io_error("run_sweep: cannot create output dir " + config.output_dir);
    std::ofstream out(std::filesystem::path(config.output_dir) / "sweep.csv");
    if (!out) throw io_error("run_sweep: cannot open sweep.csv in " + config.output_dir);
    out << "q,J,p,mean_deviation,min_deviation,iterations_mean,success_rate\n";
    for (const SweepRow& row : report.rows) {
        out << format_double(row.q) << ',' << row.J << ',' << format_double(row.p) << ','
            << format_double(row.mean_deviation) << ',' << format_double(row.min_deviation) << ','
            << format_double(row.iterations_mean) << ',' << format_double(row.success_rate) << '\n';
    }
    if (!out) throw io_error("run_sweep: write failed for sweep.csv");
    return report;
}

} // namespace sbgd

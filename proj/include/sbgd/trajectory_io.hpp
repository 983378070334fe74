#pragma once

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "sbgd/driver.hpp"
#include "sbgd/errors.hpp"
#include "sbgd/oracle.hpp"

namespace sbgd {

/// Shortest round-trip decimal form of a double (17 significant digits).
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string trajectory_csv_header(std::size_t dim) {
    std::string header = "iteration,agent_id,active,mass,f_value";
    for (std::size_t k = 0; k < dim; ++k) header += ",x_" + std::to_string(k);
    header += ",is_minimizer,is_heaviest";
    return header;
}

/// One row per (iteration, agent), inactive agents included so agent ids stay
/// addressable across the run. Floats are serialized with 17 significant
/// digits and parse back bit-exactly.
inline void emit_trajectory_csv(const RunResult& result, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw io_error("emit_trajectory_csv: cannot open " + path.string());
    const std::size_t dim =
        result.trajectory.empty() ? 0 : result.trajectory.front().agents.front().position.size();
    out << trajectory_csv_header(dim) << '\n';
    for (const TrajectoryRecord& rec : result.trajectory) {
        for (const AgentSnapshot& a : rec.agents) {
            out << rec.iteration << ',' << a.agent_id << ',' << (a.active ? 1 : 0) << ','
                << format_double(a.mass) << ',' << format_double(a.f_value);
            for (double x : a.position) out << ',' << format_double(x);
            out << ',' << (a.agent_id == rec.minimizer_index ? 1 : 0) << ','
                << (a.agent_id == rec.heaviest_index ? 1 : 0) << '\n';
        }
    }
    if (!out) throw io_error("emit_trajectory_csv: write failed for " + path.string());
}

/// Inverse of emit_trajectory_csv. f_min/f_max are rebuilt from the active
/// rows; positions and masses come back bit-exact.
inline std::vector<TrajectoryRecord> parse_trajectory_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("parse_trajectory_csv: cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw io_error("parse_trajectory_csv: empty file " + path.string());

    std::size_t dim = 0;
    {
        std::stringstream header(line);
        std::string col;
        while (std::getline(header, col, ','))
            if (col.rfind("x_", 0) == 0) ++dim;
    }
    if (dim == 0) throw io_error("parse_trajectory_csv: no coordinate columns in " + path.string());

    std::vector<TrajectoryRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string cell;
        auto next_cell = [&]() {
            if (!std::getline(row, cell, ','))
                throw io_error("parse_trajectory_csv: short row in " + path.string());
            return cell.c_str();
        };
        const std::int64_t iteration = std::strtoll(next_cell(), nullptr, 10);
        AgentSnapshot snap;
        snap.agent_id = static_cast<int>(std::strtol(next_cell(), nullptr, 10));
        snap.active = std::strtol(next_cell(), nullptr, 10) != 0;
        snap.mass = std::strtod(next_cell(), nullptr);
        snap.f_value = std::strtod(next_cell(), nullptr);
        snap.position.resize(dim);
        for (std::size_t k = 0; k < dim; ++k) snap.position[k] = std::strtod(next_cell(), nullptr);
        const bool is_minimizer = std::strtol(next_cell(), nullptr, 10) != 0;
        const bool is_heaviest = std::strtol(next_cell(), nullptr, 10) != 0;

        if (records.empty() || records.back().iteration != iteration) {
            records.emplace_back();
            records.back().iteration = iteration;
            records.back().f_min = std::numeric_limits<double>::infinity();
            records.back().f_max = -std::numeric_limits<double>::infinity();
        }
        TrajectoryRecord& rec = records.back();
        if (is_minimizer) rec.minimizer_index = snap.agent_id;
        if (is_heaviest) rec.heaviest_index = snap.agent_id;
        if (snap.active) {
            rec.f_min = std::min(rec.f_min, snap.f_value);
            rec.f_max = std::max(rec.f_max, snap.f_value);
        }
        rec.agents.push_back(std::move(snap));
    }
    return records;
}

/// One line per replicate: seed, termination, iterations, solution
/// coordinates, final value, Euclidean deviation from the oracle argmin (nan
/// when no oracle is available for the dimension).
inline void emit_summary(const std::vector<RunResult>& results, const OracleResult* oracle,
                         std::size_t dim, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw io_error("emit_summary: cannot open " + path.string());
    out << "seed,termination,iterations_used";
    for (std::size_t k = 0; k < dim; ++k) out << ",x_" << k;
    out << ",f_solution,deviation_from_oracle\n";
    for (const RunResult& r : results) {
        out << r.seed << ',' << to_string(r.termination) << ',' << r.iterations_used;
        for (double x : r.solution) out << ',' << format_double(x);
        const double deviation =
            oracle ? distance(r.solution, oracle->argmin) : std::numeric_limits<double>::quiet_NaN();
        out << ',' << format_double(r.f_solution) << ',' << format_double(deviation) << '\n';
    }
    if (!out) throw io_error("emit_summary: write failed for " + path.string());
}

} // namespace sbgd

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "sbgd/driver.hpp"
#include "sbgd/objective.hpp"

namespace sbgd {

/// F at the swarm minimizer, one entry per trajectory record. The descent
/// property makes this sequence non-increasing.
inline std::vector<double> minimizer_value_series(const RunResult& result) {
    std::vector<double> series;
    series.reserve(result.trajectory.size());
    for (const TrajectoryRecord& rec : result.trajectory) series.push_back(rec.f_min);
    return series;
}

inline bool minimizer_monotone(const RunResult& result) {
    const std::vector<double> series = minimizer_value_series(result);
    for (std::size_t n = 1; n < series.size(); ++n)
        if (series[n] > series[n - 1]) return false;
    return true;
}

/// Per-iteration terms min{|gF(X+)|, |gF(X-)|, |gF(X+)||gF(X-)|}^2 where X-
/// is the minimizer and X+ the heaviest agent. Their partial sums stay
/// bounded and the increments vanish as the run settles.
inline std::vector<double> summability_terms(const RunResult& result, const Objective& objective) {
    std::vector<double> terms;
    terms.reserve(result.trajectory.size());
    for (const TrajectoryRecord& rec : result.trajectory) {
        const auto& minimizer = rec.agents[static_cast<std::size_t>(rec.minimizer_index)];
        const auto& heaviest = rec.agents[static_cast<std::size_t>(rec.heaviest_index)];
        const double g_minus = norm(objective.gradient(minimizer.position));
        const double g_plus = norm(objective.gradient(heaviest.position));
        const double m = std::min({g_plus, g_minus, g_plus * g_minus});
        terms.push_back(m * m);
    }
    return terms;
}

inline std::vector<double> partial_sums(const std::vector<double>& terms) {
    std::vector<double> sums;
    sums.reserve(terms.size());
    double s = 0.0;
    for (double t : terms) {
        s += t;
        sums.push_back(s);
    }
    return sums;
}

/// Range bound M = max_i F(x_i^0) - f_reference; every later record keeps
/// f_max - f_min within it.
inline bool within_initial_range(const RunResult& result, double f_reference) {
    if (result.trajectory.empty()) return true;
    const double bound = result.trajectory.front().f_max - f_reference;
    for (const TrajectoryRecord& rec : result.trajectory)
        if (rec.f_max - rec.f_min > bound + 1e-12 * std::max(1.0, std::abs(bound)))
            return false;
    return true;
}

} // namespace sbgd

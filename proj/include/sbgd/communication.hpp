#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "sbgd/core.hpp"
#include "sbgd/objective.hpp"

namespace sbgd {

/// Relative heights of the active agents: 0 at the swarm minimum, 1 at the
/// swarm maximum. eta is indexed by agent_id and is 0 for inactive agents.
/// f_values caches F at every agent's current position (inactive included).
struct HeightProfile {
    std::vector<double> eta;
    std::vector<double> f_values;
    double f_min = 0.0;
    double f_max = 0.0;
    int minimizer_index = -1;
    int maximizer_index = -1;
};

namespace detail {

inline std::vector<double> evaluate_all(const Swarm& swarm, const Objective& objective) {
    std::vector<double> f(swarm.agents.size());
    for (std::size_t i = 0; i < swarm.agents.size(); ++i)
        f[i] = objective.value(swarm.agents[i].position);
    return f;
}

} // namespace detail

/// argmin/argmax of F over active agents, ties broken by lowest agent id.
/// Throws invalid_swarm_error when no agent is active.
inline HeightProfile find_active_extremes(const Swarm& swarm, const Objective& objective) {
    HeightProfile profile;
    profile.f_values = detail::evaluate_all(swarm, objective);
    profile.f_min = std::numeric_limits<double>::infinity();
    profile.f_max = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < swarm.agents.size(); ++i) {
        if (!swarm.agents[i].active) continue;
        if (profile.f_values[i] < profile.f_min) {
            profile.f_min = profile.f_values[i];
            profile.minimizer_index = static_cast<int>(i);
        }
        if (profile.f_values[i] > profile.f_max) {
            profile.f_max = profile.f_values[i];
            profile.maximizer_index = static_cast<int>(i);
        }
    }
    if (profile.minimizer_index < 0)
        throw invalid_swarm_error("find_active_extremes: no active agents");
    return profile;
}

/// Full height profile eta_i = (F(x_i) - F_min) / (F_max - F_min) over active
/// agents. A flat swarm (F_max = F_min) gets eta = 0 everywhere so no mass
/// moves; termination is then the driver's stall detector's job.
inline HeightProfile relative_heights(const Swarm& swarm, const Objective& objective) {
    if (swarm.active_count() < 2)
        throw invalid_swarm_error("relative_heights: need at least two active agents");
    HeightProfile profile = find_active_extremes(swarm, objective);
    profile.eta.assign(swarm.agents.size(), 0.0);
    const double span = profile.f_max - profile.f_min;
    if (span > 0.0) {
        for (std::size_t i = 0; i < swarm.agents.size(); ++i) {
            if (!swarm.agents[i].active) continue;
            profile.eta[i] = (profile.f_values[i] - profile.f_min) / span;
        }
    }
    return profile;
}

/// Mass communication step: every active non-minimizer sheds phi_p(eta_i) m_i;
/// the minimizer collects the total in one assignment, so the unit total is
/// conserved up to rounding. The maximizer (eta = 1) sheds everything exactly
/// and is deactivated; any agent whose mass hits zero is deactivated with it.
/// Returns the shed total.
inline double redistribute_mass(Swarm& swarm, const HeightProfile& profile,
                                double mass_exponent) {
    if (profile.minimizer_index < 0 || profile.eta.size() != swarm.agents.size())
        throw invalid_swarm_error("redistribute_mass: profile does not match swarm");
    double shed = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < swarm.agents.size(); ++i) {
        Agent& agent = swarm.agents[i];
        if (!agent.active || static_cast<int>(i) == profile.minimizer_index) continue;
        const double delta = phi(mass_exponent, profile.eta[i]) * agent.mass;
        agent.mass -= delta;
        if (agent.mass == 0.0) agent.active = false;
        // Neumaier-compensated accumulation; J can be 1000.
        double t = shed + delta;
        if (std::abs(shed) >= std::abs(delta))
            comp += (shed - t) + delta;
        else
            comp += (delta - t) + shed;
        shed = t;
    }
    shed += comp;
    swarm.agents[static_cast<std::size_t>(profile.minimizer_index)].mass += shed;
    return shed;
}

/// Greedy pairwise merge: scan active pairs in ascending agent-id order; any
/// pair closer than tol_merge collapses onto the lower-F member (ties keep the
/// lower id), which inherits the combined mass. Repeats until no active pair
/// is within tol_merge. Returns the number of agents merged away.
inline int merge_close_agents(Swarm& swarm, double tol_merge, const Objective& objective) {
    if (!(tol_merge > 0.0)) throw param_error("merge_close_agents: tol_merge must be > 0");
    std::vector<double> f = detail::evaluate_all(swarm, objective);
    int merged = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < swarm.agents.size(); ++i) {
            if (!swarm.agents[i].active) continue;
            for (std::size_t j = i + 1; j < swarm.agents.size(); ++j) {
                if (!swarm.agents[j].active) continue;
                if (distance(swarm.agents[i].position, swarm.agents[j].position) >= tol_merge)
                    continue;
                const std::size_t survivor = f[j] < f[i] ? j : i;
                const std::size_t loser = f[j] < f[i] ? i : j;
                swarm.agents[survivor].mass += swarm.agents[loser].mass;
                swarm.agents[loser].mass = 0.0;
                swarm.agents[loser].active = false;
                ++merged;
                changed = true;
                if (loser == i) break;
            }
        }
    }
    return merged;
}

} // namespace sbgd

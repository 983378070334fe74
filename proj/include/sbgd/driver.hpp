#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "sbgd/communication.hpp"
#include "sbgd/core.hpp"
#include "sbgd/line_search.hpp"
#include "sbgd/objective.hpp"
#include "sbgd/rng.hpp"

namespace sbgd {

enum class Termination { single_agent, residual, max_iterations, stalled };

inline const char* to_string(Termination t) {
    switch (t) {
    case Termination::single_agent: return "single-agent";
    case Termination::residual: return "residual";
    case Termination::max_iterations: return "max-iterations";
    case Termination::stalled: return "stalled";
    }
    return "?";
}

struct RunResult {
    std::vector<double> solution;
    double f_solution = 0.0;
    int iterations_used = 0;
    Termination termination = Termination::max_iterations;
    std::vector<TrajectoryRecord> trajectory;
    std::uint64_t seed = 0;
};

/// Snapshot of the whole swarm: every agent's position, mass, F-value and
/// activity, plus the active argmin/argmax-mass indices (ties to lowest id).
inline TrajectoryRecord make_trajectory_record(const Swarm& swarm, const Objective& objective) {
    TrajectoryRecord rec;
    rec.iteration = swarm.iteration;
    rec.agents.reserve(swarm.agents.size());
    rec.f_min = std::numeric_limits<double>::infinity();
    rec.f_max = -std::numeric_limits<double>::infinity();
    double heaviest = -1.0;
    for (std::size_t i = 0; i < swarm.agents.size(); ++i) {
        const Agent& a = swarm.agents[i];
        AgentSnapshot snap;
        snap.agent_id = static_cast<int>(i);
        snap.position = a.position;
        snap.mass = a.mass;
        snap.f_value = objective.value(a.position);
        snap.active = a.active;
        if (a.active) {
            if (snap.f_value < rec.f_min) {
                rec.f_min = snap.f_value;
                rec.minimizer_index = snap.agent_id;
            }
            if (snap.f_value > rec.f_max) rec.f_max = snap.f_value;
            if (a.mass > heaviest) {
                heaviest = a.mass;
                rec.heaviest_index = snap.agent_id;
            }
        }
        rec.agents.push_back(std::move(snap));
    }
    if (rec.minimizer_index < 0)
        throw invalid_swarm_error("make_trajectory_record: no active agents");
    return rec;
}

/// J active agents with mass 1/J each. uniform-random draws i.i.d. from the
/// box (agent-major, coordinate-minor, seeded); equidistant spaces J points
/// along the box diagonal including endpoints; left-cluster does the same
/// over the leftmost 10% of each coordinate range. J = 1 sits at the
/// (sub)box midpoint.
inline Swarm init_swarm(const SBGDParams& params, const Objective& objective) {
    params.validate();
    const Box& box = objective.domain;
    if (!box.bounded() || box.dim() == 0)
        throw param_error("init_swarm: objective domain must be a bounded box");

    const int J = params.agent_count;
    const std::size_t d = box.dim();
    Swarm swarm;
    swarm.dim = d;
    swarm.agents.assign(static_cast<std::size_t>(J), Agent{});

    std::mt19937_64 rng(params.seed);
    for (int i = 0; i < J; ++i) {
        Agent& agent = swarm.agents[static_cast<std::size_t>(i)];
        agent.mass = 1.0 / static_cast<double>(J);
        agent.active = true;
        agent.position.resize(d);
        switch (params.init_scheme) {
        case InitScheme::uniform_random:
            for (std::size_t k = 0; k < d; ++k)
                agent.position[k] = uniform_in(rng, box.lower[k], box.upper[k]);
            break;
        case InitScheme::equidistant: {
            const double t = J == 1 ? 0.5 : static_cast<double>(i) / static_cast<double>(J - 1);
            for (std::size_t k = 0; k < d; ++k)
                agent.position[k] = box.lower[k] + t * (box.upper[k] - box.lower[k]);
            break;
        }
        case InitScheme::left_cluster: {
            const double t = J == 1 ? 0.5 : static_cast<double>(i) / static_cast<double>(J - 1);
            for (std::size_t k = 0; k < d; ++k)
                agent.position[k] = box.lower[k] + t * 0.1 * (box.upper[k] - box.lower[k]);
            break;
        }
        }
    }
    return swarm;
}

namespace detail {

/// Stages (3)-(4) of an iteration: fix m_+ and the relative masses, then move
/// every active agent by its own mass-scaled backtracking step. Gradients are
/// taken at pre-update positions (each agent's update reads only its own
/// state). Returns the largest displacement.
inline double mass_scaled_position_update(Swarm& swarm, const SBGDParams& params,
                                          const Objective& objective,
                                          const HeightProfile& profile) {
    double m_plus = 0.0;
    for (const Agent& a : swarm.agents)
        if (a.active) m_plus = std::max(m_plus, a.mass);

    double max_disp = 0.0;
    std::vector<double> next(swarm.dim);
    for (std::size_t i = 0; i < swarm.agents.size(); ++i) {
        Agent& agent = swarm.agents[i];
        if (!agent.active) continue;
        const double m_tilde = relative_mass(agent.mass, m_plus);
        // psi of a featherweight agent can underflow to zero; the line
        // search's (0,1) domain wants the limit value instead.
        const double lambda_eff =
            std::max(params.armijo_fraction * psi(params.step_exponent, m_tilde),
                     std::numeric_limits<double>::min());
        const std::vector<double> grad = objective.gradient(agent.position);
        const LineSearchOutcome out =
            backtrack(agent.position, profile.f_values[i], grad, lambda_eff,
                      params.shrink_factor, objective, params.lipschitz,
                      params.max_shrinks, params.lipschitz_exact);
        for (std::size_t k = 0; k < swarm.dim; ++k)
            next[k] = agent.position[k] - out.h * grad[k];
        max_disp = std::max(max_disp, distance(next, agent.position));
        agent.position = next;
    }
    return max_disp;
}

/// Max per-agent displacement between two consecutive snapshots.
inline double record_displacement(const TrajectoryRecord& before, const TrajectoryRecord& after) {
    double d = 0.0;
    for (std::size_t i = 0; i < after.agents.size(); ++i)
        d = std::max(d, distance(before.agents[i].position, after.agents[i].position));
    return d;
}

/// Deactivate active non-minimizer agents lighter than the threshold; their
/// mass joins the minimizer so the unit total survives the cull.
inline void cull_light_agents(Swarm& swarm, double threshold, int minimizer_index) {
    double culled = 0.0;
    for (std::size_t i = 0; i < swarm.agents.size(); ++i) {
        Agent& agent = swarm.agents[i];
        if (!agent.active || static_cast<int>(i) == minimizer_index) continue;
        if (agent.mass < threshold) {
            culled += agent.mass;
            agent.mass = 0.0;
            agent.active = false;
        }
    }
    swarm.agents[static_cast<std::size_t>(minimizer_index)].mass += culled;
}

/// Plain per-agent backtracking descent: no communication, no elimination.
/// psi_q(m~) is identically 1 here, so the Armijo fraction is the bare
/// lambda. Stops when no agent moved by tol_residual, or on the iteration
/// budget. Also the path a single-agent swarm takes in every variant.
inline RunResult independent_descent(const SBGDParams& params, const Objective& objective,
                                     Swarm swarm) {
    const int max_iter = params.effective_max_iterations();
    RunResult result;
    result.seed = params.seed;
    result.trajectory.push_back(make_trajectory_record(swarm, objective));
    result.termination = Termination::max_iterations;

    std::vector<double> next(swarm.dim);
    while (swarm.iteration < max_iter) {
        double max_disp = 0.0;
        for (Agent& agent : swarm.agents) {
            if (!agent.active) continue;
            const double f_at_x = objective.value(agent.position);
            const std::vector<double> grad = objective.gradient(agent.position);
            const LineSearchOutcome out =
                backtrack(agent.position, f_at_x, grad, params.armijo_fraction,
                          params.shrink_factor, objective, params.lipschitz,
                          params.max_shrinks, params.lipschitz_exact);
            for (std::size_t k = 0; k < swarm.dim; ++k)
                next[k] = agent.position[k] - out.h * grad[k];
            max_disp = std::max(max_disp, distance(next, agent.position));
            agent.position = next;
        }
        ++swarm.iteration;
        result.trajectory.push_back(make_trajectory_record(swarm, objective));
        if (max_disp < params.tol_residual) {
            result.termination = Termination::residual;
            break;
        }
    }

    const TrajectoryRecord& last = result.trajectory.back();
    result.solution = last.agents[static_cast<std::size_t>(last.minimizer_index)].position;
    result.f_solution = objective.value(result.solution);
    result.iterations_used = static_cast<int>(swarm.iteration);
    return result;
}

} // namespace detail

/// One full iteration: height profile, mass communication, then mass-scaled
/// position updates, in that order. The pre-step maximizer ends the
/// communication phase with zero mass and inactive. Returns the post-step
/// snapshot.
inline TrajectoryRecord step(Swarm& swarm, const SBGDParams& params, const Objective& objective) {
    if (swarm.dim != objective.dim())
        throw invalid_swarm_error("step: swarm dimension does not match objective");
    if (swarm.active_count() < 2)
        throw invalid_swarm_error("step: need at least two active agents");
    const HeightProfile profile = relative_heights(swarm, objective);
    redistribute_mass(swarm, profile, params.mass_exponent);
    detail::mass_scaled_position_update(swarm, params, objective, profile);
    ++swarm.iteration;
    return make_trajectory_record(swarm, objective);
}

/// Survival-of-the-fittest loop: iterate `step` until one active agent
/// remains (the worst agent loses all mass each round) or the budget runs
/// out. The returned solution is the heaviest agent's position. A flat,
/// frozen swarm (two consecutive iterations without movement above 1e-15 and
/// f_max = f_min) terminates as `stalled`; a flat swarm has no worst agent,
/// so no elimination happens there.
inline RunResult run_basic(const SBGDParams& params, const Objective& objective, Swarm swarm) {
    params.validate();
    if (params.variant != Variant::basic)
        throw param_error("run_basic: params.variant must be 'basic'");
    if (swarm.dim != objective.dim())
        throw invalid_swarm_error("run_basic: swarm dimension does not match objective");
    if (swarm.active_count() == 1) return detail::independent_descent(params, objective, std::move(swarm));

    const int max_iter = params.effective_max_iterations();
    RunResult result;
    result.seed = params.seed;
    result.trajectory.push_back(make_trajectory_record(swarm, objective));
    int still_streak = 0;
    bool stalled = false;

    while (swarm.iteration < max_iter && swarm.active_count() >= 2) {
        const TrajectoryRecord rec = step(swarm, params, objective);
        const double disp = detail::record_displacement(result.trajectory.back(), rec);
        result.trajectory.push_back(rec);
        still_streak = disp <= 1e-15 ? still_streak + 1 : 0;
        if (still_streak >= 2 && rec.f_max == rec.f_min) {
            stalled = true;
            break;
        }
    }

    if (stalled)
        result.termination = Termination::stalled;
    else if (swarm.active_count() == 1)
        result.termination = Termination::single_agent;
    else
        result.termination = Termination::max_iterations;

    const TrajectoryRecord& last = result.trajectory.back();
    result.solution = last.agents[static_cast<std::size_t>(last.heaviest_index)].position;
    result.f_solution = objective.value(result.solution);
    result.iterations_used = static_cast<int>(swarm.iteration);
    return result;
}

inline RunResult run_basic(const SBGDParams& params, const Objective& objective) {
    return run_basic(params, objective, init_swarm(params, objective));
}

/// Tolerance-factor loop: each iteration culls agents below (tol_mass / N)
/// before the shed (N = current active count), redistributes, moves,
/// merges near-duplicates, and stops once the minimizer's position settles:
/// res = |x_min_new - x_min_old| < tol_residual. The solution is the current
/// minimizer's position.
inline RunResult run_tolerance(const SBGDParams& params, const Objective& objective, Swarm swarm) {
    params.validate();
    if (params.variant != Variant::tolerance)
        throw param_error("run_tolerance: params.variant must be 'tolerance'");
    if (swarm.dim != objective.dim())
        throw invalid_swarm_error("run_tolerance: swarm dimension does not match objective");
    if (swarm.active_count() == 1) return detail::independent_descent(params, objective, std::move(swarm));

    const int max_iter = params.effective_max_iterations();
    RunResult result;
    result.seed = params.seed;
    result.trajectory.push_back(make_trajectory_record(swarm, objective));
    int still_streak = 0;
    bool stalled = false;
    bool settled = false;

    while (swarm.iteration < max_iter && swarm.active_count() >= 2) {
        const HeightProfile profile = relative_heights(swarm, objective);
        const std::vector<double> prev_min_pos =
            swarm.agents[static_cast<std::size_t>(profile.minimizer_index)].position;

        const double threshold = params.tol_mass / static_cast<double>(swarm.active_count());
        detail::cull_light_agents(swarm, threshold, profile.minimizer_index);
        redistribute_mass(swarm, profile, params.mass_exponent);
        detail::mass_scaled_position_update(swarm, params, objective, profile);
        merge_close_agents(swarm, params.tol_merge, objective);
        ++swarm.iteration;

        const TrajectoryRecord rec = make_trajectory_record(swarm, objective);
        const double disp = detail::record_displacement(result.trajectory.back(), rec);
        result.trajectory.push_back(rec);

        const double res = distance(
            rec.agents[static_cast<std::size_t>(rec.minimizer_index)].position, prev_min_pos);
        if (res < params.tol_residual) {
            settled = true;
            break;
        }
        still_streak = disp <= 1e-15 ? still_streak + 1 : 0;
        if (still_streak >= 2 && rec.f_max == rec.f_min) {
            stalled = true;
            break;
        }
    }

    if (settled)
        result.termination = Termination::residual;
    else if (stalled)
        result.termination = Termination::stalled;
    else if (swarm.active_count() == 1)
        result.termination = Termination::single_agent;
    else
        result.termination = Termination::max_iterations;

    const TrajectoryRecord& last = result.trajectory.back();
    result.solution = last.agents[static_cast<std::size_t>(last.minimizer_index)].position;
    result.f_solution = objective.value(result.solution);
    result.iterations_used = static_cast<int>(swarm.iteration);
    return result;
}

inline RunResult run_tolerance(const SBGDParams& params, const Objective& objective) {
    return run_tolerance(params, objective, init_swarm(params, objective));
}

/// Communication-free reference: J independent backtracking descents with
/// uniform masses. Solution is the best (lowest-F) agent.
inline RunResult run_baseline(const SBGDParams& params, const Objective& objective, Swarm swarm) {
    params.validate();
    if (params.variant != Variant::baseline)
        throw param_error("run_baseline: params.variant must be 'baseline'");
    if (swarm.dim != objective.dim())
        throw invalid_swarm_error("run_baseline: swarm dimension does not match objective");
    return detail::independent_descent(params, objective, std::move(swarm));
}

inline RunResult run_baseline(const SBGDParams& params, const Objective& objective) {
    return run_baseline(params, objective, init_swarm(params, objective));
}

inline RunResult run(const SBGDParams& params, const Objective& objective) {
    switch (params.variant) {
    case Variant::basic: return run_basic(params, objective);
    case Variant::tolerance: return run_tolerance(params, objective);
    case Variant::baseline: return run_baseline(params, objective);
    }
    throw param_error("run: unknown variant");
}

} // namespace sbgd

#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "sbgd/errors.hpp"

namespace sbgd {

/// One swarm member: a search-space position, a share of the unit total mass,
/// and an activity flag. An agent is inactive exactly when its mass is zero;
/// inactive agents stay in the collection so agent ids remain stable.
struct Agent {
    std::vector<double> position;
    double mass = 0.0;
    bool active = false;
};

struct Swarm {
    std::vector<Agent> agents;
    std::int64_t iteration = 0;
    std::size_t dim = 0;

    int active_count() const {
        int n = 0;
        for (const Agent& a : agents)
            if (a.active) ++n;
        return n;
    }
};

enum class InitScheme { uniform_random, equidistant, left_cluster };
enum class Variant { basic, tolerance, baseline };

inline const char* to_string(InitScheme s) {
    switch (s) {
    case InitScheme::uniform_random: return "uniform-random";
    case InitScheme::equidistant: return "equidistant";
    case InitScheme::left_cluster: return "left-cluster";
    }
    return "?";
}

inline const char* to_string(Variant v) {
    switch (v) {
    case Variant::basic: return "basic";
    case Variant::tolerance: return "tolerance";
    case Variant::baseline: return "baseline";
    }
    return "?";
}

/// All tunables of a run. `max_iterations == 0` means "auto": 10 * agent_count,
/// enough head room for the basic variant's J-1 eliminations.
struct SBGDParams {
    int agent_count = 10;          // J
    double mass_exponent = 1.0;    // p, mass-transition exponent
    double step_exponent = 1.0;    // q, step-scaling exponent
    double armijo_fraction = 0.2;  // lambda
    double shrink_factor = 0.9;    // gamma
    double lipschitz = 1.0;        // L, bound used for the initial step
    bool lipschitz_exact = false;  // whether the step lower-bound assertion applies
    double tol_mass = 1e-4;        // tolm
    double tol_merge = 1e-3;       // tolmerge
    double tol_residual = 1e-4;    // tolres
    int max_iterations = 0;        // 0 = auto (10 * agent_count)
    int max_shrinks = 200;         // backtracking loop cap
    InitScheme init_scheme = InitScheme::uniform_random;
    std::uint64_t seed = 0;
    Variant variant = Variant::basic;

    int effective_max_iterations() const {
        return max_iterations > 0 ? max_iterations : 10 * agent_count;
    }

    /// Throws param_error naming the offending field.
    void validate() const {
        if (agent_count < 1) throw param_error("agent_count (J) must be >= 1");
        if (!(mass_exponent > 0.0)) throw param_error("mass_exponent (p) must be > 0");
        if (!(step_exponent > 0.0)) throw param_error("step_exponent (q) must be > 0");
        if (!(armijo_fraction > 0.0 && armijo_fraction < 1.0))
            throw param_error("armijo_fraction (lambda) must be in (0,1)");
        if (!(shrink_factor > 0.0 && shrink_factor < 1.0))
            throw param_error("shrink_factor (gamma) must be in (0,1)");
        if (!(lipschitz > 0.0)) throw param_error("lipschitz (L) must be > 0");
        if (!(tol_mass > 0.0)) throw param_error("tol_mass (tolm) must be > 0");
        if (!(tol_merge > 0.0)) throw param_error("tol_merge (tolmerge) must be > 0");
        if (!(tol_residual > 0.0)) throw param_error("tol_residual (tolres) must be > 0");
        if (max_iterations < 0) throw param_error("max_iterations must be >= 0 (0 = auto)");
        if (max_shrinks < 1) throw param_error("max_shrinks must be >= 1");
    }
};

/// Per-agent entry of a trajectory snapshot.
struct AgentSnapshot {
    int agent_id = 0;
    std::vector<double> position;
    double mass = 0.0;
    double f_value = 0.0;
    bool active = false;
};

/// State of the whole swarm after one completed iteration (or the initial
/// state). minimizer_index / heaviest_index refer to active agents; f_min and
/// f_max range over active agents only.
struct TrajectoryRecord {
    std::int64_t iteration = 0;
    std::vector<AgentSnapshot> agents;
    int minimizer_index = -1;
    int heaviest_index = -1;
    double f_min = 0.0;
    double f_max = 0.0;
};

// ---- mass algebra ----------------------------------------------------------

/// psi_q(m~) = m~^q, the influence of relative mass on the Armijo fraction.
inline double psi(double q, double m_tilde) {
    if (!(q > 0.0)) throw param_error("psi: exponent q must be > 0");
    if (!(m_tilde >= 0.0 && m_tilde <= 1.0))
        throw param_error("psi: relative mass must be in [0,1]");
    return std::pow(m_tilde, q);
}

/// phi_p(eta) = eta^p, the degree of mass transition for relative height eta.
inline double phi(double p, double eta) {
    if (!(p > 0.0)) throw param_error("phi: exponent p must be > 0");
    if (!(eta >= 0.0 && eta <= 1.0))
        throw param_error("phi: relative height must be in [0,1]");
    return std::pow(eta, p);
}

/// m~ = m / m_+; equals 1 for the heaviest agent.
inline double relative_mass(double mass, double m_plus) {
    if (!(m_plus > 0.0))
        throw invalid_swarm_error("relative_mass: no active mass (m_+ = 0)");
    if (!(mass >= 0.0 && mass <= m_plus))
        throw param_error("relative_mass: mass must be in [0, m_+]");
    return mass / m_plus;
}

/// Sum of masses over active agents (Neumaier-compensated; the conservation
/// invariant is checked at 1e-12 even for J = 1000).
inline double total_mass(const Swarm& swarm) {
    double sum = 0.0, comp = 0.0;
    for (const Agent& a : swarm.agents) {
        if (!a.active) continue;
        double t = sum + a.mass;
        if (std::abs(sum) >= std::abs(a.mass))
            comp += (sum - t) + a.mass;
        else
            comp += (a.mass - t) + sum;
        sum = t;
    }
    return sum + comp;
}

} // namespace sbgd

#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "sbgd/errors.hpp"
#include "sbgd/objective.hpp"

namespace sbgd {

/// Result of one backtracking search. The accepted step is h = h0 * gamma^k
/// with k = shrink_count; armijo_lhs <= armijo_rhs holds for the accepted h.
struct LineSearchOutcome {
    double h = 0.0;
    int shrink_count = 0;
    double armijo_lhs = 0.0;
    double armijo_rhs = 0.0;
};

/// h0 = (2/L)(1 - lambda_eff), the largest step the descent lemma certifies
/// under a gradient-Lipschitz bound L. lambda_eff = lambda * psi_q(m~).
inline double initial_step(double lipschitz, double lambda_eff) {
    if (!(lipschitz > 0.0)) throw param_error("initial_step: lipschitz (L) must be > 0");
    if (!(lambda_eff > 0.0 && lambda_eff < 1.0))
        throw param_error("initial_step: lambda_eff must be in (0,1)");
    return (2.0 / lipschitz) * (1.0 - lambda_eff);
}

/// Backtracking line search from x along -grad. Shrinks h by gamma while
/// F(x - h grad) > F(x) - lambda_eff * h * |grad|^2 (strict, so equality
/// accepts; a NaN value also shrinks). A zero gradient accepts h0 untouched.
///
/// When lipschitz_exact is set, the accepted step is additionally checked
/// against the lower bound (2 gamma / L)(1 - lambda_eff), which a true
/// Lipschitz bound guarantees; a violation means L was not in fact a bound.
inline LineSearchOutcome backtrack(std::span<const double> x, double f_at_x,
                                   std::span<const double> grad_at_x, double lambda_eff,
                                   double gamma, const Objective& objective,
                                   double lipschitz, int max_shrinks,
                                   bool lipschitz_exact = false) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw param_error("backtrack: gamma must be in (0,1)");
    const double h0 = initial_step(lipschitz, lambda_eff);
    const double grad_sq = squared_norm(grad_at_x);

    std::vector<double> trial(x.size());
    double h = h0;
    for (int k = 0; k <= max_shrinks; ++k) {
        for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] - h * grad_at_x[i];
        const double lhs = objective.value(trial);
        const double rhs = f_at_x - lambda_eff * h * grad_sq;
        if (lhs <= rhs) {
            if (lipschitz_exact && k > 1)
                throw line_search_error(
                    "backtrack: accepted step fell below the guaranteed lower bound; "
                    "lipschitz bound marked exact is not a bound for this objective");
            return {h, k, lhs, rhs};
        }
        h *= gamma;
    }
    throw line_search_error("backtrack: no step accepted within max_shrinks; "
                            "objective may be non-smooth or L badly mis-scaled");
}

inline LineSearchOutcome backtrack(std::span<const double> x, double lambda_eff,
                                   double gamma, const Objective& objective,
                                   double lipschitz, int max_shrinks,
                                   bool lipschitz_exact = false) {
    const double f_at_x = objective.value(x);
    const std::vector<double> grad = objective.gradient(x);
    return backtrack(x, f_at_x, grad, lambda_eff, gamma, objective, lipschitz,
                     max_shrinks, lipschitz_exact);
}

} // namespace sbgd

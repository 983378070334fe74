#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "sbgd/objective.hpp"

namespace sbgd {

/// Ground truth from exhaustive search: the grid minimizer refined locally to
/// ~1e-10. f_min is a true lower bound over the scanned grid.
struct OracleResult {
    std::vector<double> argmin;
    double f_min = 0.0;
    double grid_resolution = 0.0;
};

namespace detail {

/// Golden-section refinement of a bracket [a,b] believed to contain a single
/// local minimum. Returns the best point probed; never trusted blindly by the
/// caller (the grid minimum is kept as a fallback).
inline std::pair<double, double> golden_section_1d(const Objective& objective,
                                                   double a, double b) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = objective.value(std::vector<double>{x1});
    double f2 = objective.value(std::vector<double>{x2});
    while (b - a > 1e-10) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = objective.value(std::vector<double>{x1});
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = objective.value(std::vector<double>{x2});
        }
    }
    double xm = 0.5 * (a + b);
    return {xm, objective.value(std::vector<double>{xm})};
}

/// Shrinking 5x5 local grid around the incumbent, halving the window until it
/// is below the target precision.
inline std::pair<std::vector<double>, double>
grid_bisection_2d(const Objective& objective, std::vector<double> center, double f_center,
                  double window) {
    std::vector<double> probe(2);
    while (window > 1e-10) {
        std::vector<double> best = center;
        double f_best = f_center;
        for (int i = -2; i <= 2; ++i) {
            for (int j = -2; j <= 2; ++j) {
                probe[0] = center[0] + 0.5 * window * i;
                probe[1] = center[1] + 0.5 * window * j;
                double f = objective.value(probe);
                if (f < f_best) {
                    f_best = f;
                    best = probe;
                }
            }
        }
        center = best;
        f_center = f_best;
        window *= 0.5;
    }
    return {center, f_center};
}

} // namespace detail

/// Exhaustive scan of a 1-D or 2-D box at the given resolution, followed by
/// local refinement to ~1e-10. Ties between grid points go to the
/// lexicographically smallest point. Grids beyond 1e8 points are refused.
inline OracleResult grid_oracle(const Objective& objective, double resolution) {
    if (!(resolution > 0.0)) throw param_error("grid_oracle: resolution must be > 0");
    const Box& box = objective.domain;
    if (!box.bounded()) throw param_error("grid_oracle: domain must be bounded");
    const std::size_t d = box.dim();
    if (d != 1 && d != 2)
        throw param_error("grid_oracle: only 1-D and 2-D domains are supported");

    std::vector<std::int64_t> counts(d);
    double total = 1.0;
    for (std::size_t k = 0; k < d; ++k) {
        counts[k] = static_cast<std::int64_t>(std::floor((box.upper[k] - box.lower[k]) / resolution)) + 1;
        counts[k] = std::max<std::int64_t>(counts[k], 2);
        total *= static_cast<double>(counts[k]);
    }
    if (total > 1e8) throw resource_error("grid_oracle: grid exceeds 1e8 points");

    auto coord = [&](std::size_t k, std::int64_t i) {
        double x = box.lower[k] + resolution * static_cast<double>(i);
        return std::min(x, box.upper[k]);
    };

    std::vector<double> best(d);
    double f_best = std::numeric_limits<double>::infinity();
    std::vector<double> probe(d);
    if (d == 1) {
        for (std::int64_t i = 0; i < counts[0]; ++i) {
            probe[0] = coord(0, i);
            double f = objective.value(probe);
            if (f < f_best) {
                f_best = f;
                best = probe;
            }
        }
    } else {
        for (std::int64_t i = 0; i < counts[0]; ++i) {
            probe[0] = coord(0, i);
            for (std::int64_t j = 0; j < counts[1]; ++j) {
                probe[1] = coord(1, j);
                double f = objective.value(probe);
                if (f < f_best) {
                    f_best = f;
                    best = probe;
                }
            }
        }
    }

    OracleResult result;
    result.grid_resolution = resolution;
    result.argmin = best;
    result.f_min = f_best;

    if (d == 1) {
        double a = std::max(box.lower[0], best[0] - resolution);
        double b = std::min(box.upper[0], best[0] + resolution);
        auto [x, f] = detail::golden_section_1d(objective, a, b);
        if (f < result.f_min) {
            result.argmin = {x};
            result.f_min = f;
        }
    } else {
        auto [x, f] = detail::grid_bisection_2d(objective, best, f_best, resolution);
        if (f < result.f_min) {
            result.argmin = std::move(x);
            result.f_min = f;
        }
    }
    return result;
}

} // namespace sbgd

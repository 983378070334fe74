#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sbgd/errors.hpp"
#include "sbgd/rng.hpp"

namespace sbgd {

/// Per-coordinate closed interval. Bounds initialization and the grid oracle;
/// evaluators stay total on R^d, so iterates may leave the box.
struct Box {
    std::vector<double> lower;
    std::vector<double> upper;

    std::size_t dim() const { return lower.size(); }

    bool bounded() const {
        if (lower.empty() || lower.size() != upper.size()) return false;
        for (std::size_t k = 0; k < lower.size(); ++k) {
            if (!std::isfinite(lower[k]) || !std::isfinite(upper[k])) return false;
            if (!(lower[k] <= upper[k])) return false;
        }
        return true;
    }

    double volume() const {
        double v = 1.0;
        for (std::size_t k = 0; k < lower.size(); ++k) v *= upper[k] - lower[k];
        return v;
    }
};

/// Value + gradient evaluator over a box domain. Both maps are pure and total;
/// lipschitz_hint = 0 means "no hint". lipschitz_exact marks hints that are
/// true bounds on |grad F(x) - grad F(y)| / |x - y|, which arms the
/// step-length lower-bound assertion.
struct Objective {
    std::string name;
    std::function<double(std::span<const double>)> value;
    std::function<std::vector<double>(std::span<const double>)> gradient;
    Box domain;
    double lipschitz_hint = 0.0;
    bool lipschitz_exact = false;

    std::size_t dim() const { return domain.dim(); }
};

inline double norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline double squared_norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

inline double distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        double d = a[k] - b[k];
        s += d * d;
    }
    return std::sqrt(s);
}

/// Central differences (F(x + h e_k) - F(x - h e_k)) / 2h per coordinate.
inline std::vector<double> finite_diff_gradient(const Objective& objective,
                                                std::span<const double> x, double h) {
    if (!(h > 0.0)) throw param_error("finite_diff_gradient: step h must be > 0");
    std::vector<double> grad(x.size());
    std::vector<double> probe(x.begin(), x.end());
    for (std::size_t k = 0; k < x.size(); ++k) {
        probe[k] = x[k] + h;
        double fp = objective.value(probe);
        probe[k] = x[k] - h;
        double fm = objective.value(probe);
        probe[k] = x[k];
        grad[k] = (fp - fm) / (2.0 * h);
    }
    return grad;
}

/// Sampled bound on |grad F(x) - grad F(y)| / |x - y| over the domain,
/// inflated by a 1.2 safety factor and floored at 1e-12 so the initial step
/// stays finite on (near-)linear objectives. The result is an estimate, never
/// an exact bound; callers must treat it as lipschitz_exact = false.
inline double estimate_lipschitz(const Objective& objective, int samples,
                                 std::uint64_t seed) {
    if (samples < 2) throw param_error("estimate_lipschitz: samples must be >= 2");
    const Box& box = objective.domain;
    if (!box.bounded()) throw param_error("estimate_lipschitz: domain must be bounded");
    if (!(box.volume() > 0.0))
        throw param_error("estimate_lipschitz: domain has zero volume");

    std::mt19937_64 rng(seed);
    std::vector<std::vector<double>> points(static_cast<std::size_t>(samples));
    std::vector<std::vector<double>> grads(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::vector<double> x(box.dim());
        for (std::size_t k = 0; k < box.dim(); ++k)
            x[k] = uniform_in(rng, box.lower[k], box.upper[k]);
        grads[i] = objective.gradient(x);
        points[i] = std::move(x);
    }

    double worst = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            double dx = distance(points[i], points[j]);
            if (dx == 0.0) continue;
            double dg = distance(grads[i], grads[j]);
            worst = std::max(worst, dg / dx);
        }
    }
    return std::max(1.2 * worst, 1e-12);
}

} // namespace sbgd

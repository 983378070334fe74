#pragma once

#include <charconv>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "sbgd/objective.hpp"

namespace sbgd {

/// 1-D multi-well benchmark F(x) = e^{sin(2x^2)} + (x - pi/2)^2 / 10 on
/// [-3,3]. Many local minima; one global minimum near x = 1.5355. CLI name
/// "paper-f".
inline Objective paper_objective() {
    Objective f;
    f.name = "paper-f";
    f.domain = Box{{-3.0}, {3.0}};
    f.value = [](std::span<const double> x) {
        double t = x[0] - std::numbers::pi / 2.0;
        return std::exp(std::sin(2.0 * x[0] * x[0])) + 0.1 * t * t;
    };
    f.gradient = [](std::span<const double> x) {
        double s = 2.0 * x[0] * x[0];
        double g = 4.0 * x[0] * std::cos(s) * std::exp(std::sin(s)) +
                   0.2 * (x[0] - std::numbers::pi / 2.0);
        return std::vector<double>{g};
    };
    return f;
}

/// 1-D oscillatory benchmark S(t) = (1.5t - 2)^2 cos(30pi + (3pi t)^2) on
/// [0,2]. CLI name "signal-s".
inline Objective signal_objective() {
    Objective f;
    f.name = "signal-s";
    f.domain = Box{{0.0}, {2.0}};
    f.value = [](std::span<const double> x) {
        double a = 1.5 * x[0] - 2.0;
        double w = 3.0 * std::numbers::pi * x[0];
        return a * a * std::cos(30.0 * std::numbers::pi + w * w);
    };
    f.gradient = [](std::span<const double> x) {
        double a = 1.5 * x[0] - 2.0;
        double w = 3.0 * std::numbers::pi * x[0];
        double theta = 30.0 * std::numbers::pi + w * w;
        // product rule; d(theta)/dt = 18 pi^2 t
        double g = 3.0 * a * std::cos(theta) -
                   a * a * std::sin(theta) * 18.0 * std::numbers::pi * std::numbers::pi * x[0];
        return std::vector<double>{g};
    };
    return f;
}

/// F(x) = |x|^2 on [-5,5]^d. L = 2 is the exact gradient Lipschitz constant.
inline Objective quadratic_objective(int dim) {
    if (dim < 1) throw param_error("quadratic_objective: dim must be >= 1");
    Objective f;
    f.name = "quadratic-" + std::to_string(dim);
    f.domain = Box{std::vector<double>(dim, -5.0), std::vector<double>(dim, 5.0)};
    f.lipschitz_hint = 2.0;
    f.lipschitz_exact = true;
    f.value = [](std::span<const double> x) { return squared_norm(x); };
    f.gradient = [](std::span<const double> x) {
        std::vector<double> g(x.size());
        for (std::size_t k = 0; k < x.size(); ++k) g[k] = 2.0 * x[k];
        return g;
    };
    return f;
}

/// Rastrigin in its standard form, 10d + sum(x_k^2 - 10 cos(2 pi x_k)), on
/// [-5.12, 5.12]^d. The Hessian is diagonal with entries 2 + 40pi^2 cos(2pi x),
/// so L = 2 + 40pi^2 is exact and attained at the origin.
inline Objective rastrigin_objective(int dim) {
    if (dim < 1) throw param_error("rastrigin_objective: dim must be >= 1");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    Objective f;
    f.name = "rastrigin-" + std::to_string(dim);
    f.domain = Box{std::vector<double>(dim, -5.12), std::vector<double>(dim, 5.12)};
    f.lipschitz_hint = 2.0 + 40.0 * std::numbers::pi * std::numbers::pi;
    f.lipschitz_exact = true;
    f.value = [](std::span<const double> x) {
        double s = 10.0 * static_cast<double>(x.size());
        for (double xk : x) s += xk * xk - 10.0 * std::cos(two_pi * xk);
        return s;
    };
    f.gradient = [](std::span<const double> x) {
        std::vector<double> g(x.size());
        for (std::size_t k = 0; k < x.size(); ++k)
            g[k] = 2.0 * x[k] + 10.0 * two_pi * std::sin(two_pi * x[k]);
        return g;
    };
    return f;
}

/// Resolves the CLI objective names: "paper-f", "signal-s", "quadratic-<d>",
/// "rastrigin-<d>". Throws config_error for anything else.
inline Objective objective_by_name(std::string_view name) {
    if (name == "paper-f") return paper_objective();
    if (name == "signal-s") return signal_objective();

    auto parse_dim = [&](std::string_view prefix) -> int {
        std::string_view rest = name.substr(prefix.size());
        int d = 0;
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), d);
        if (ec != std::errc{} || ptr != rest.data() + rest.size() || d < 1)
            throw config_error("objective: bad dimension suffix in '" + std::string(name) + "'");
        return d;
    };
    if (name.starts_with("quadratic-")) return quadratic_objective(parse_dim("quadratic-"));
    if (name.starts_with("rastrigin-")) return rastrigin_objective(parse_dim("rastrigin-"));

    throw config_error("objective: unknown objective '" + std::string(name) +
                       "' (expected paper-f, signal-s, quadratic-<d> or rastrigin-<d>)");
}

} // namespace sbgd

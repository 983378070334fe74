#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "sbgd/sbgd.hpp"
#include "test_support.hpp"

using namespace sbgd;

TEST_CASE("initial_step formula") {
    CHECK(initial_step(2.0, 0.2) == (2.0 / 2.0) * (1.0 - 0.2));
    CHECK(initial_step(4.0, 0.5) == 0.25);
    CHECK(initial_step(2.0, 1e-12) == Catch::Approx(1.0).margin(1e-10));
    CHECK_THROWS_AS(initial_step(0.0, 0.2), param_error);
    CHECK_THROWS_AS(initial_step(-1.0, 0.2), param_error);
}

TEST_CASE("backtrack at the Armijo-equality boundary of the quadratic") {
    // In exact arithmetic h0 = 0.8 satisfies Armijo with equality:
    // F(1-1.6) = 0.36 = 1 - 0.2*0.8*4. Double rounding tips the strict
    // comparison by 2 ulps, so at most one shrink happens and the accepted
    // step stays at or above gamma*h0 either way.
    const Objective objective = quadratic_objective(1);
    const std::vector<double> x{1.0};
    const LineSearchOutcome out = backtrack(x, 0.2, 0.9, objective, 2.0, 200, true);
    const double h0 = initial_step(2.0, 0.2);
    CHECK(out.shrink_count <= 1);
    CHECK(out.h >= 0.9 * h0);
    CHECK(out.h <= h0);
    CHECK(out.armijo_lhs <= out.armijo_rhs);
    CHECK(out.armijo_lhs == Catch::Approx(0.36).margin(0.17)); // 0.36 or 0.1936
}

TEST_CASE("backtrack with zero gradient keeps h0 and moves nothing") {
    const Objective objective = quadratic_objective(1);
    const std::vector<double> x{0.0};
    const LineSearchOutcome out = backtrack(x, 0.2, 0.9, objective, 2.0, 200, true);
    CHECK(out.h == initial_step(2.0, 0.2));
    CHECK(out.shrink_count == 0);
    CHECK(out.armijo_lhs == out.armijo_rhs);
}

TEST_CASE("accepted steps satisfy Armijo re-evaluated from scratch") {
    // Both sides recomputed here with fresh objective calls, for several
    // objectives and random (x, lambda_eff).
    std::mt19937_64 rng(7);
    const Objective objectives[] = {paper_objective(), signal_objective(),
                                    quadratic_objective(2), rastrigin_objective(1)};
    for (const Objective& objective : objectives) {
        const double L = objective.lipschitz_hint > 0.0 ? objective.lipschitz_hint
                                                        : estimate_lipschitz(objective, 128, 5);
        for (int trial = 0; trial < 200; ++trial) {
            const std::vector<double> x = testsupport::random_interior_point(objective, rng, 0.0);
            const double lambda_eff = 0.01 + 0.98 * uniform01(rng);
            const LineSearchOutcome out =
                backtrack(x, lambda_eff, 0.9, objective, L, 400, false);

            const std::vector<double> grad = objective.gradient(x);
            std::vector<double> moved(x.size());
            for (std::size_t k = 0; k < x.size(); ++k) moved[k] = x[k] - out.h * grad[k];
            const double lhs = objective.value(moved);
            const double rhs = objective.value(x) - lambda_eff * out.h * squared_norm(grad);
            CHECK(lhs <= rhs);
            CHECK(lhs <= objective.value(x)); // monotone descent
            CHECK(out.h > 0.0);
        }
    }
}

TEST_CASE("lower bound h >= gamma*h0 holds under an exact Lipschitz bound") {
    std::mt19937_64 rng(13);
    for (const Objective& objective : {quadratic_objective(1), quadratic_objective(3)}) {
        for (int trial = 0; trial < 500; ++trial) {
            const std::vector<double> x = testsupport::random_interior_point(objective, rng, 0.0);
            const double lambda_eff = 0.01 + 0.98 * uniform01(rng);
            const double gamma = 0.5 + 0.45 * uniform01(rng);
            const LineSearchOutcome out =
                backtrack(x, lambda_eff, gamma, objective, 2.0, 200, true);
            CHECK(out.h >= gamma * ((2.0 / 2.0) * (1.0 - lambda_eff)));
            CHECK(out.shrink_count <= 1);
        }
    }
}

TEST_CASE("exp-sine benchmark: accepted step passes Armijo and the relaxed bound") {
    const Objective objective = paper_objective();
    const double L = estimate_lipschitz(objective, 256, 3);
    const std::vector<double> x{-3.0};
    const LineSearchOutcome out = backtrack(x, 0.2, 0.9, objective, L, 400, false);

    const std::vector<double> grad = objective.gradient(x);
    const double lhs = objective.value(std::vector<double>{x[0] - out.h * grad[0]});
    const double rhs = objective.value(x) - 0.2 * out.h * grad[0] * grad[0];
    CHECK(lhs <= rhs);
    // The estimate exceeds the true local bound here, so the guaranteed
    // lower bound holds even without exactness.
    CHECK(out.h >= (2.0 * 0.9 / L) * (1.0 - 0.2));
}

TEST_CASE("backtrack exhausts max_shrinks on a pathological objective") {
    // A step discontinuity no sufficient-decrease step can satisfy.
    Objective cliff;
    cliff.name = "cliff";
    cliff.domain = Box{{-1.0}, {1.0}};
    cliff.value = [](std::span<const double> x) { return x[0] == 0.0 ? 0.0 : 1.0; };
    cliff.gradient = [](std::span<const double>) { return std::vector<double>{1.0}; };
    const std::vector<double> x{0.0};
    CHECK_THROWS_AS(backtrack(x, 0.2, 0.9, cliff, 2.0, 50, false), line_search_error);
}

TEST_CASE("backtrack is deterministic") {
    const Objective objective = paper_objective();
    const std::vector<double> x{0.37};
    const LineSearchOutcome a = backtrack(x, 0.11, 0.9, objective, 25.0, 200, false);
    const LineSearchOutcome b = backtrack(x, 0.11, 0.9, objective, 25.0, 200, false);
    CHECK(a.h == b.h);
    CHECK(a.shrink_count == b.shrink_count);
    CHECK(a.armijo_lhs == b.armijo_lhs);
    CHECK(a.armijo_rhs == b.armijo_rhs);
}

TEST_CASE("the accepted step is exactly h0 shrunk shrink_count times") {
    std::mt19937_64 rng(29);
    const Objective objective = signal_objective();
    const double L = estimate_lipschitz(objective, 128, 2);
    for (int trial = 0; trial < 100; ++trial) {
        const std::vector<double> x{uniform_in(rng, 0.0, 2.0)};
        const double lambda_eff = 0.01 + 0.98 * uniform01(rng);
        const LineSearchOutcome out = backtrack(x, lambda_eff, 0.9, objective, L, 400, false);
        double h = initial_step(L, lambda_eff);
        for (int k = 0; k < out.shrink_count; ++k) h *= 0.9;
        CHECK(out.h == h);
    }
}

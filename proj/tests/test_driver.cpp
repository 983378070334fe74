#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "sbgd/sbgd.hpp"
#include "test_support.hpp"

using namespace sbgd;

TEST_CASE("init_swarm equidistant spacing and masses") {
    SBGDParams params;
    params.agent_count = 10;
    params.init_scheme = InitScheme::equidistant;
    const Objective objective = paper_objective();
    const Swarm swarm = init_swarm(params, objective);

    REQUIRE(swarm.agents.size() == 10);
    for (int i = 0; i < 10; ++i) {
        CHECK(swarm.agents[i].position[0] ==
              Catch::Approx(-3.0 + (2.0 / 3.0) * i).margin(1e-12));
        CHECK(swarm.agents[i].mass == Catch::Approx(0.1).margin(1e-16));
        CHECK(swarm.agents[i].active);
    }
    CHECK(swarm.agents.front().position[0] == -3.0);
    CHECK(swarm.agents.back().position[0] == 3.0);

    SBGDParams four = params;
    four.agent_count = 4;
    const Swarm s4 = init_swarm(four, objective);
    for (const Agent& a : s4.agents) CHECK(a.mass == 0.25);
}

TEST_CASE("init_swarm left-cluster covers the leftmost tenth") {
    SBGDParams params;
    params.agent_count = 20;
    params.init_scheme = InitScheme::left_cluster;
    const Objective objective = paper_objective();
    const Swarm swarm = init_swarm(params, objective);
    CHECK(swarm.agents.front().position[0] == -3.0);
    CHECK(swarm.agents.back().position[0] == Catch::Approx(-2.4).margin(1e-12));
    for (const Agent& a : swarm.agents) {
        CHECK(a.position[0] >= -3.0);
        CHECK(a.position[0] <= -2.4 + 1e-12);
    }
}

TEST_CASE("init_swarm uniform-random is seed-deterministic and in-box") {
    SBGDParams params;
    params.agent_count = 25;
    params.seed = 77;
    const Objective objective = quadratic_objective(3);
    const Swarm a = init_swarm(params, objective);
    const Swarm b = init_swarm(params, objective);
    for (std::size_t i = 0; i < a.agents.size(); ++i) {
        CHECK(a.agents[i].position == b.agents[i].position);
        for (std::size_t k = 0; k < 3; ++k) {
            CHECK(a.agents[i].position[k] >= -5.0);
            CHECK(a.agents[i].position[k] < 5.0);
        }
    }
    params.seed = 78;
    const Swarm c = init_swarm(params, objective);
    CHECK(c.agents[0].position != a.agents[0].position);
}

TEST_CASE("init_swarm rejects bad input") {
    SBGDParams params;
    params.agent_count = 0;
    CHECK_THROWS_AS(init_swarm(params, paper_objective()), param_error);

    params.agent_count = 5;
    Objective unbounded = paper_objective();
    unbounded.domain.upper[0] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(init_swarm(params, unbounded), param_error);
}

TEST_CASE("step hand-trace on the quadratic with two agents") {
    // Agents at 1 and 2 with equal masses: the far agent has eta = 1, sheds
    // everything and freezes; the near one ends with mass 1, m~ = 1, and
    // moves to 1 - 2h where h comes straight from the line search.
    const Objective objective = quadratic_objective(1);
    SBGDParams params;
    params.agent_count = 2;
    params.lipschitz = 2.0;
    params.lipschitz_exact = true;

    Swarm swarm = testsupport::swarm_at({1.0, 2.0});
    const LineSearchOutcome expected =
        backtrack(std::vector<double>{1.0}, params.armijo_fraction, params.shrink_factor,
                  objective, params.lipschitz, params.max_shrinks, true);

    const TrajectoryRecord rec = step(swarm, params, objective);

    CHECK(swarm.agents[1].mass == 0.0);
    CHECK_FALSE(swarm.agents[1].active);
    CHECK(swarm.agents[1].position[0] == 2.0); // eliminated agents do not move
    CHECK(swarm.agents[0].mass == 1.0);
    CHECK(swarm.agents[0].position[0] ==
          Catch::Approx(1.0 - expected.h * 2.0).margin(1e-15));
    CHECK(swarm.iteration == 1);
    CHECK(rec.iteration == 1);
    CHECK(rec.minimizer_index == 0);
    CHECK(rec.heaviest_index == 0);
}

TEST_CASE("step on a flat swarm keeps masses and does plain backtracking") {
    const Objective objective = quadratic_objective(1);
    SBGDParams params;
    params.agent_count = 2;
    params.lipschitz = 2.0;
    params.lipschitz_exact = true;

    Swarm swarm = testsupport::swarm_at({1.0, -1.0}); // same F, opposite gradients
    step(swarm, params, objective);
    CHECK(swarm.agents[0].mass == 0.5);
    CHECK(swarm.agents[1].mass == 0.5);
    CHECK(swarm.agents[0].active);
    CHECK(swarm.agents[1].active);
    // m~ = 1 for both, so both take the h of a bare lambda step.
    const LineSearchOutcome out =
        backtrack(std::vector<double>{1.0}, params.armijo_fraction, params.shrink_factor,
                  objective, params.lipschitz, params.max_shrinks, true);
    CHECK(swarm.agents[0].position[0] == Catch::Approx(1.0 - out.h * 2.0).margin(1e-15));
    CHECK(swarm.agents[1].position[0] == Catch::Approx(-1.0 + out.h * 2.0).margin(1e-15));
}

TEST_CASE("step survives featherweight masses whose psi underflows") {
    const Objective objective = quadratic_objective(1);
    SBGDParams params;
    params.agent_count = 2;
    params.step_exponent = 3.0;
    params.lipschitz = 2.0;
    params.lipschitz_exact = true;

    // The featherweight sits between the extremes so it survives the shed
    // and reaches the line search with an underflowed relative mass.
    Swarm swarm;
    swarm.dim = 1;
    swarm.agents = {Agent{{0.5}, 0.7, true}, Agent{{1.0}, 1e-310, true},
                    Agent{{2.0}, 0.3 - 1e-310, true}};
    REQUIRE(psi(3.0, relative_mass(1e-310, 0.7)) == 0.0);
    CHECK_NOTHROW(step(swarm, params, objective));
    CHECK(swarm.agents[1].active); // it shed a fraction, not everything
}

TEST_CASE("step requires two active agents and matching dimensions") {
    const Objective objective = quadratic_objective(1);
    SBGDParams params;
    Swarm one = testsupport::swarm_at({1.0});
    CHECK_THROWS_AS(step(one, params, objective), invalid_swarm_error);

    Swarm wrongdim = testsupport::swarm_at({1.0, 2.0});
    CHECK_THROWS_AS(step(wrongdim, params, quadratic_objective(2)), invalid_swarm_error);
}

TEST_CASE("per-agent descent holds along seeded runs") {
    SBGDParams params;
    params.agent_count = 12;
    params.seed = 5;
    params.lipschitz = 5.0;
    const Objective objective = paper_objective();
    const RunResult result = run_basic(params, objective);

    for (std::size_t n = 1; n < result.trajectory.size(); ++n) {
        const TrajectoryRecord& prev = result.trajectory[n - 1];
        const TrajectoryRecord& cur = result.trajectory[n];
        for (std::size_t i = 0; i < cur.agents.size(); ++i)
            if (prev.agents[i].active && cur.agents[i].active)
                CHECK(cur.agents[i].f_value <= prev.agents[i].f_value);
    }
}

TEST_CASE("run_basic eliminates down to a single agent on a convex quadratic") {
    const Objective objective = quadratic_objective(1);
    SBGDParams params;
    params.agent_count = 2;
    params.seed = 3;
    params.lipschitz = 2.0;
    params.lipschitz_exact = true;

    const RunResult result = run_basic(params, objective, testsupport::swarm_at({0.5, 2.0}));
    CHECK(result.termination == Termination::single_agent);
    CHECK(result.iterations_used == 1);
    // The survivor keeps descending toward 0 only if iterations continue;
    // after one elimination the run stops with the heaviest at its updated spot.
    CHECK(std::abs(result.solution[0]) < 0.5);
    CHECK(result.f_solution == result.trajectory.back().f_min);

    SBGDParams bigger = params;
    bigger.agent_count = 8;
    const RunResult r8 = run_basic(bigger, objective);
    CHECK(r8.termination == Termination::single_agent);
    CHECK(r8.trajectory.size() == static_cast<std::size_t>(r8.iterations_used) + 1);
    int active = 0;
    for (const AgentSnapshot& a : r8.trajectory.back().agents) active += a.active ? 1 : 0;
    CHECK(active == 1);
}

TEST_CASE("run_basic minimizer sequence is monotone") {
    SBGDParams params;
    params.agent_count = 15;
    params.lipschitz = 5.0;
    const Objective objective = paper_objective();
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        SBGDParams p = params;
        p.seed = seed;
        const RunResult result = run_basic(p, objective);
        CHECK(minimizer_monotone(result));
    }
}

TEST_CASE("stalled termination on a constant objective") {
    Objective flat;
    flat.name = "flat";
    flat.domain = Box{{-1.0}, {1.0}};
    flat.value = [](std::span<const double>) { return 1.0; };
    flat.gradient = [](std::span<const double>) { return std::vector<double>{0.0}; };

    SBGDParams params;
    params.agent_count = 4;
    params.init_scheme = InitScheme::equidistant;
    const RunResult result = run_basic(params, flat);
    CHECK(result.termination == Termination::stalled);
    CHECK(result.iterations_used == 2); // two frozen iterations trip the detector
    CHECK(result.f_solution == 1.0);
}

TEST_CASE("run_tolerance merges, culls and stops on the residual") {
    const Objective objective = paper_objective();
    SBGDParams params;
    params.variant = Variant::tolerance;
    params.agent_count = 100;
    params.init_scheme = InitScheme::equidistant;
    params.lipschitz = 25.0;

    const RunResult result = run_tolerance(params, objective);
    CHECK(result.termination == Termination::residual);
    CHECK(result.iterations_used <= 8);
    CHECK(std::abs(result.solution[0] - testsupport::kExpSineArgmin) <= 5e-2);
    for (const TrajectoryRecord& rec : result.trajectory) {
        double total = 0.0;
        for (const AgentSnapshot& a : rec.agents)
            if (a.active) total += a.mass;
        CHECK(std::abs(total - 1.0) <= 1e-12);
    }
}

TEST_CASE("run_tolerance with a huge tolres stops on the first residual check") {
    const Objective objective = paper_objective();
    SBGDParams params;
    params.variant = Variant::tolerance;
    params.agent_count = 20;
    params.init_scheme = InitScheme::equidistant;
    params.lipschitz = 25.0;
    params.tol_residual = 1e300;
    const RunResult result = run_tolerance(params, objective);
    CHECK(result.termination == Termination::residual);
    CHECK(result.iterations_used == 1);
}

TEST_CASE("run_tolerance with a vanishing tolres reduces toward the basic loop") {
    const Objective objective = paper_objective();
    SBGDParams params;
    params.variant = Variant::tolerance;
    params.agent_count = 20;
    params.init_scheme = InitScheme::equidistant;
    params.lipschitz = 25.0;
    params.tol_residual = 1e-300;
    const RunResult result = run_tolerance(params, objective);
    CHECK(result.termination != Termination::residual);
    CHECK(result.iterations_used > 1);
}

TEST_CASE("run_tolerance culls featherweight agents into the minimizer") {
    const Objective objective = quadratic_objective(1);
    SBGDParams params;
    params.variant = Variant::tolerance;
    params.agent_count = 3;
    params.lipschitz = 2.0;
    params.lipschitz_exact = true;
    params.tol_mass = 0.5; // threshold 0.5/3 = 0.1667 swallows the light agent

    Swarm swarm;
    swarm.dim = 1;
    swarm.agents = {Agent{{0.5}, 0.6, true}, Agent{{1.0}, 0.3, true}, Agent{{2.0}, 0.1, true}};
    const RunResult result = run_tolerance(params, objective, std::move(swarm));
    const TrajectoryRecord& first = result.trajectory[1];
    CHECK_FALSE(first.agents[2].active);
    double total = 0.0;
    for (const AgentSnapshot& a : first.agents)
        if (a.active) total += a.mass;
    CHECK(std::abs(total - 1.0) <= 1e-12);
}

TEST_CASE("run_baseline single agent decays geometrically on the quadratic") {
    // Closed form: the accepted step is h0 = 0.8 or (after the 2-ulp
    // boundary shrink) 0.72, so x_{n+1} = (1 - 2h) x_n contracts by -0.6 or
    // -0.44 and F decays at worst like 0.36^n.
    const Objective objective = quadratic_objective(1);
    SBGDParams params;
    params.variant = Variant::baseline;
    params.agent_count = 1;
    params.lipschitz = 2.0;
    params.lipschitz_exact = true;
    params.max_iterations = 20;
    params.tol_residual = 1e-300;

    const RunResult result = run_baseline(params, objective, testsupport::swarm_at({1.0}));
    REQUIRE(result.trajectory.size() == 21);
    for (std::size_t n = 1; n < result.trajectory.size(); ++n) {
        const double x_prev = result.trajectory[n - 1].agents[0].position[0];
        const double x_cur = result.trajectory[n].agents[0].position[0];
        const double h = (x_prev - x_cur) / (2.0 * x_prev);
        CHECK(std::min(std::abs(h - 0.8), std::abs(h - 0.72)) < 1e-12);
        CHECK(result.trajectory[n].agents[0].f_value <=
              0.3601 * result.trajectory[n - 1].agents[0].f_value);
    }
    CHECK(result.termination == Termination::max_iterations);
    CHECK(result.f_solution < 1e-8);
}

TEST_CASE("run_baseline keeps all agents and returns the best one") {
    const Objective objective = paper_objective();
    SBGDParams params;
    params.variant = Variant::baseline;
    params.agent_count = 10;
    params.init_scheme = InitScheme::equidistant;
    params.lipschitz = 5.0;
    params.max_iterations = 200;

    const RunResult result = run_baseline(params, objective);
    CHECK(result.termination == Termination::residual);
    const TrajectoryRecord& last = result.trajectory.back();
    for (const AgentSnapshot& a : last.agents) {
        CHECK(a.active);
        CHECK(a.mass == Catch::Approx(0.1).margin(1e-16));
        CHECK(a.f_value >= last.f_min);
    }
    CHECK(result.solution ==
          last.agents[static_cast<std::size_t>(last.minimizer_index)].position);
}

TEST_CASE("run_baseline from an equidistant start reaches the global basin") {
    // One of the evenly spread agents starts inside the global basin and
    // plain descent keeps it there, unlike the left-cluster start.
    const Objective objective = paper_objective();
    const OracleResult oracle = grid_oracle(objective, 1e-3);
    SBGDParams params;
    params.variant = Variant::baseline;
    params.agent_count = 10;
    params.init_scheme = InitScheme::equidistant;
    params.lipschitz = 5.0;
    params.max_iterations = 300;

    const RunResult result = run_baseline(params, objective);
    CHECK(result.f_solution - oracle.f_min < 0.1);
    CHECK(std::abs(result.solution[0] - oracle.argmin[0]) < 0.1);
}

TEST_CASE("basic with one agent matches baseline bit for bit") {
    const Objective objective = paper_objective();
    for (std::uint64_t seed : {1ull, 2ull}) {
        SBGDParams basic;
        basic.agent_count = 1;
        basic.seed = seed;
        basic.lipschitz = 5.0;
        SBGDParams baseline = basic;
        baseline.variant = Variant::baseline;

        const RunResult a = run_basic(basic, objective);
        const RunResult b = run_baseline(baseline, objective);
        REQUIRE(a.trajectory.size() == b.trajectory.size());
        for (std::size_t n = 0; n < a.trajectory.size(); ++n) {
            CHECK(a.trajectory[n].agents[0].position == b.trajectory[n].agents[0].position);
            CHECK(a.trajectory[n].agents[0].mass == b.trajectory[n].agents[0].mass);
            CHECK(a.trajectory[n].agents[0].f_value == b.trajectory[n].agents[0].f_value);
        }
        CHECK(a.termination == b.termination);
        CHECK(a.solution == b.solution);
    }
}

TEST_CASE("runs are deterministic") {
    SBGDParams params;
    params.agent_count = 10;
    params.seed = 2024;
    params.lipschitz = 5.0;
    const Objective objective = paper_objective();
    const RunResult a = run_basic(params, objective);
    const RunResult b = run_basic(params, objective);
    REQUIRE(a.trajectory.size() == b.trajectory.size());
    for (std::size_t n = 0; n < a.trajectory.size(); ++n)
        for (std::size_t i = 0; i < a.trajectory[n].agents.size(); ++i) {
            CHECK(a.trajectory[n].agents[i].position == b.trajectory[n].agents[i].position);
            CHECK(a.trajectory[n].agents[i].mass == b.trajectory[n].agents[i].mass);
        }
    CHECK(a.solution == b.solution);
    CHECK(a.f_solution == b.f_solution);
}

TEST_CASE("variant preconditions are enforced") {
    SBGDParams params;
    params.variant = Variant::tolerance;
    CHECK_THROWS_AS(run_basic(params, paper_objective()), param_error);
    params.variant = Variant::basic;
    CHECK_THROWS_AS(run_tolerance(params, paper_objective()), param_error);
    CHECK_THROWS_AS(run_baseline(params, paper_objective()), param_error);
}

TEST_CASE("diagnostics: range bound and summability on a full run") {
    const Objective objective = paper_objective();
    SBGDParams params;
    params.agent_count = 20;
    params.seed = 9;
    params.lipschitz = 5.0;
    const RunResult result = run_basic(params, objective);

    const OracleResult oracle = grid_oracle(objective, 1e-3);
    CHECK(within_initial_range(result, oracle.f_min));
    CHECK(oracle.f_min <= result.f_solution + 1e-12);

    const std::vector<double> terms = summability_terms(result, objective);
    const std::vector<double> sums = partial_sums(terms);
    REQUIRE(!sums.empty());
    for (std::size_t n = 1; n < sums.size(); ++n) CHECK(sums[n] >= sums[n - 1]);
    CHECK(std::isfinite(sums.back()));
    // Increments shrink as the run settles.
    CHECK(terms.back() <= 0.01 * (terms.front() + 1e-30) + 1e-12);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cascade/polytope.hpp"
#include "cascade/simplex.hpp"

using namespace cascade;

TEST_CASE("single variable with bound rows") {
    LinearProgram lp = LinearProgram::with_vars(1, LpSense::minimize);
    lp.objective[0] = 1.0;
    lp.lower[0] = -kInfinity;
    lp.add_row({1.0}, LpRelation::greater_equal, 3.0);
    lp.add_row({1.0}, LpRelation::less_equal, 10.0);
    LpSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.objective == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(sol.primal[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(sol.duals[0] == doctest::Approx(1.0));  // the binding >= row
    CHECK(sol.duals[1] == doctest::Approx(0.0));
}

TEST_CASE("two variable maximization") {
    LinearProgram lp = LinearProgram::with_vars(2, LpSense::maximize);
    lp.objective = {1.0, 1.0};
    lp.add_row({1.0, 1.0}, LpRelation::less_equal, 1.0);
    LpSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.objective == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sol.duality_gap <= 1e-7);
}

TEST_CASE("infeasible and unbounded are statuses, not crashes") {
    LinearProgram lp = LinearProgram::with_vars(1, LpSense::minimize);
    lp.objective[0] = 1.0;
    lp.add_row({1.0}, LpRelation::greater_equal, 3.0);
    lp.add_row({1.0}, LpRelation::less_equal, 2.0);
    CHECK(solve_lp(lp).status == LpStatus::infeasible);

    LinearProgram ub = LinearProgram::with_vars(1, LpSense::minimize);
    ub.objective[0] = -1.0;
    CHECK(solve_lp(ub).status == LpStatus::unbounded);
}

TEST_CASE("equality row duals") {
    LinearProgram lp = LinearProgram::with_vars(2, LpSense::minimize);
    lp.objective = {1.0, 2.0};
    lp.add_row({1.0, 1.0}, LpRelation::equal, 2.0);
    LpSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.objective == doctest::Approx(2.0));
    CHECK(sol.primal[0] == doctest::Approx(2.0));
    CHECK(sol.duals[0] == doctest::Approx(1.0));
    CHECK(sol.duality_gap <= 1e-7);
}

TEST_CASE("free variable") {
    LinearProgram lp = LinearProgram::with_vars(1, LpSense::minimize);
    lp.objective[0] = 1.0;
    lp.lower[0] = -kInfinity;
    lp.add_row({1.0}, LpRelation::greater_equal, -5.0);
    LpSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.objective == doctest::Approx(-5.0));
}

TEST_CASE("fixed variables are respected") {
    LinearProgram lp = LinearProgram::with_vars(2, LpSense::maximize);
    lp.objective = {1.0, 1.0};
    lp.lower[0] = lp.upper[0] = 0.25;
    lp.upper[1] = 0.5;
    lp.add_row({1.0, 1.0}, LpRelation::less_equal, 10.0);
    LpSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.primal[0] == doctest::Approx(0.25));
    CHECK(sol.objective == doctest::Approx(0.75));
}

TEST_CASE("Beale's cycling example terminates at its optimum") {
    LinearProgram lp = LinearProgram::with_vars(4, LpSense::minimize);
    lp.objective = {-0.75, 150.0, -0.02, 6.0};
    lp.add_row({0.25, -60.0, -1.0 / 25.0, 9.0}, LpRelation::less_equal, 0.0);
    lp.add_row({0.5, -90.0, -1.0 / 50.0, 3.0}, LpRelation::less_equal, 0.0);
    lp.add_row({0.0, 0.0, 1.0, 0.0}, LpRelation::less_equal, 1.0);
    LpSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.objective == doctest::Approx(-0.05).epsilon(1e-9));
}

TEST_CASE("deterministic across repeated solves") {
    LinearProgram lp = LinearProgram::with_vars(3, LpSense::maximize);
    lp.objective = {1.0, 2.0, 3.0};
    lp.upper = {1.0, 1.0, 1.0};
    lp.add_row({1.0, 1.0, 1.0}, LpRelation::less_equal, 2.0);
    LpSolution a = solve_lp(lp);
    LpSolution b = solve_lp(lp);
    REQUIRE(a.status == LpStatus::optimal);
    CHECK(a.primal == b.primal);
    CHECK(a.duals == b.duals);
}

TEST_CASE("simplex-box cross-oracle: LP matches the greedy closed form") {
    std::mt19937_64 rng(20240701);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t dim = 2 + rng() % 4;  // 2..5
        SimplexBoxSpec spec;
        spec.delta = 0.05 + 0.4 * static_cast<double>(rng() % 1000) / 1000.0;
        double total = 0.0;
        for (std::size_t s = 0; s < dim; ++s) {
            spec.upstream.push_back(static_cast<int>(s));
            double w = 0.05 + static_cast<double>(rng() % 1000) / 1000.0;
            spec.base.push_back(w);
            total += w;
        }
        for (double& w : spec.base) w /= total;
        std::vector<double> cost(dim);
        for (double& c : cost) c = -2.0 + 4.0 * static_cast<double>(rng() % 10000) / 10000.0;

        for (BoxSense sense : {BoxSense::minimize, BoxSense::maximize}) {
            std::vector<double> greedy = solve_simplex_box(cost, spec, sense);
            GenericPolytope g = to_halfspace(spec);
            LinearProgram lp = LinearProgram::with_vars(
                dim, sense == BoxSense::minimize ? LpSense::minimize : LpSense::maximize);
            lp.objective = cost;
            for (std::size_t l = 0; l < g.u.size(); ++l) {
                lp.add_row(g.U[l], LpRelation::greater_equal, g.u[l]);
            }
            LpSolution sol = solve_lp(lp);
            REQUIRE(sol.status == LpStatus::optimal);
            double greedy_obj = 0.0;
            for (std::size_t s = 0; s < dim; ++s) greedy_obj += cost[s] * greedy[s];
            CHECK(std::abs(sol.objective - greedy_obj) <= 1e-9);
        }
    }
}

TEST_CASE("random feasible LPs satisfy duality and complementary slackness") {
    std::mt19937_64 rng(987654);
    auto uniform = [&](double lo, double hi) {
        return lo + (hi - lo) * static_cast<double>(rng() % 100000) / 100000.0;
    };
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + rng() % 5;
        const std::size_t m = 1 + rng() % 5;
        LinearProgram lp = LinearProgram::with_vars(n, trial % 2 == 0 ? LpSense::minimize
                                                                      : LpSense::maximize);
        std::vector<double> interior(n);
        for (std::size_t j = 0; j < n; ++j) {
            lp.objective[j] = uniform(-3.0, 3.0);
            lp.lower[j] = 0.0;
            lp.upper[j] = uniform(0.5, 2.0);
            interior[j] = lp.upper[j] / 2.0;
        }
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<double> coeffs(n);
            double ax = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                coeffs[j] = uniform(-2.0, 2.0);
                ax += coeffs[j] * interior[j];
            }
            lp.add_row(std::move(coeffs), LpRelation::less_equal, ax + uniform(0.1, 1.0));
        }
        LpSolution sol = solve_lp(lp);
        REQUIRE(sol.status == LpStatus::optimal);
        CHECK(sol.primal_residual <= 1e-7);
        CHECK(sol.duality_gap <= 1e-7 * (1.0 + std::abs(sol.objective)));
        CHECK(sol.cs_residual <= 1e-6);
    }
}

TEST_CASE("malformed input throws") {
    LinearProgram lp = LinearProgram::with_vars(2, LpSense::minimize);
    CHECK_THROWS_AS(lp.add_row({1.0}, LpRelation::less_equal, 0.0), std::invalid_argument);
    lp.lower[0] = 2.0;
    lp.upper[0] = 1.0;
    CHECK_THROWS_AS(solve_lp(lp), std::invalid_argument);
}

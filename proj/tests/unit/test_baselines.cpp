#include <doctest.h>

#include "asl1/baselines.hpp"
#include "asl1/data_io.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace asl1;

namespace {

std::shared_ptr<FunctionOracle> linear(Vector c) {
  const std::size_t n = c.size();
  return std::make_shared<FunctionOracle>(
      n, [c](std::span<const double> x) { return testing::dotp(c, x); },
      [c](std::span<const double>, std::span<double> g) {
        std::copy(c.begin(), c.end(), g.begin());
      });
}

}  // namespace

TEST_CASE("atom weights") {
  const AtomWeights o = AtomWeights::origin(3);
  CHECK(o.valid());
  CHECK(o.total() == 1.0);
  CHECK(o.weight({0, false}) == 0.5);
  CHECK(o.weight({0, true}) == 0.5);
  CHECK(o.represented(2.0) == Vector{0.0, 0.0, 0.0});

  const AtomWeights v = AtomWeights::vertex(3, {2, true});
  CHECK(v.represented(1.5) == Vector{0.0, 0.0, -1.5});
  REQUIRE(v.support().size() == 1);
  CHECK(v.support()[0].first == Atom{2, true});

  AtomWeights w(2);
  CHECK_FALSE(w.valid());
  w.set({1, false}, 0.25);
  w.set({0, true}, 0.75);
  CHECK(w.valid());
  const auto s = w.support();
  REQUIRE(s.size() == 2);
  CHECK(s[0].first == Atom{1, false});
  CHECK(s[1].first == Atom{0, true});
  const Vector x = w.represented(2.0);
  CHECK(x[0] == -1.5);
  CHECK(x[1] == 0.5);
  w.set({1, false}, 0.0);
  CHECK(w.support().size() == 1);
  CHECK_FALSE(w.valid());

  CHECK_THROWS_AS(w.set({5, false}, 0.1), std::out_of_range);
  CHECK_THROWS_AS(w.set({0, false}, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(AtomWeights(0), std::invalid_argument);
}

TEST_CASE("nmspg on simple quadratics") {
  SolverConfig cfg;
  {
    const ProblemInstance p(testing::shifted_norm({0.1, 0.1}), 1.0);
    const SolverResult r = solve_nmspg(p, Vector{0.0, 0.0}, cfg);
    CHECK(r.status == SolverStatus::Converged);
    CHECK(r.residual <= cfg.tolerance);
    CHECK(r.x[0] == doctest::Approx(0.1).epsilon(1e-6));
    CHECK(r.x[1] == doctest::Approx(0.1).epsilon(1e-6));
  }
  {
    const ProblemInstance p(testing::shifted_norm({5.0, 0.0}), 1.0);
    const SolverResult r = solve_nmspg(p, Vector{0.0, 0.0}, cfg);
    CHECK(r.status == SolverStatus::Converged);
    CHECK(r.x[0] == doctest::Approx(1.0));
    CHECK(std::abs(r.x[1]) <= 1e-9);
  }
}

TEST_CASE("nmspg matches the active-set solver on random quadratics") {
  Rng rng(61);
  SolverConfig cfg;
  cfg.tolerance = 1e-7;
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 2 + rng.below(20);
    auto q = testing::Quadratic::random(n, rng, 1.0, 0.05);
    const ProblemInstance p(q, rng.uniform(0.1, 2.0));
    const SolverResult a = solve_asl1(p, cfg);
    const SolverResult b = solve_nmspg(p, Vector(n, 0.0), cfg);
    CHECK(b.status == SolverStatus::Converged);
    CHECK(check_feasible(p, b.x, kFeasibilityTolerance));
    CHECK(std::abs(a.objective - b.objective) <= 1e-6 * (1.0 + std::abs(a.objective)));
    const auto& rows = b.trace.rows();
    for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
      CHECK(rows[k + 1].objective <= rows[k].reference);
      CHECK(rows[k].alpha <= 1.0);
    }
  }
}

TEST_CASE("frank-wolfe on linear objectives") {
  // Already at the minimizing vertex: zero gap, immediate stop.
  {
    const ProblemInstance p(linear({-1.0, 0.5}), 2.0);
    const AfwResult r = solve_afw(p, AtomWeights::vertex(2, {0, false}), SolverConfig{});
    CHECK(r.result.status == SolverStatus::Converged);
    CHECK(r.result.iterations == 0);
    CHECK(r.result.x == Vector{2.0, 0.0});
  }
  // From the origin pair, one full step reaches -tau sign(g_j) e_j.
  {
    const ProblemInstance p(linear({0.5, -3.0, 3.0}), 1.0);
    const AfwResult r = solve_afw(p, AtomWeights::origin(3), SolverConfig{});
    CHECK(r.result.status == SolverStatus::Converged);
    CHECK(r.result.iterations == 1);
    CHECK(r.result.trace.rows()[0].alpha == 1.0);
    CHECK(r.result.x == Vector{0.0, 1.0, 0.0});
    CHECK(r.weights.weight({1, false}) == 1.0);
    CHECK(r.weights.support().size() == 1);
    CHECK(r.result.objective == -3.0);
  }
}

TEST_CASE("frank-wolfe keeps a valid convex combination") {
  Rng rng(67);
  SolverConfig cfg;
  cfg.tolerance = 1e-7;
  cfg.max_iterations = 20000;
  for (int rep = 0; rep < 15; ++rep) {
    const std::size_t n = 2 + rng.below(15);
    auto q = testing::Quadratic::random(n, rng, 1.0, 0.2);
    const ProblemInstance p(q, rng.uniform(0.1, 2.0));
    const AfwResult r = solve_afw(p, AtomWeights::origin(n), cfg);
    CHECK(r.weights.valid());
    for (const auto& [atom, w] : r.weights.support()) CHECK(w > 1e-12);
    const Vector xr = r.weights.represented(p.radius());
    CHECK(testing::dist2(xr, r.result.x) <= 1e-9);
    CHECK(check_feasible(p, r.result.x, kFeasibilityTolerance));
    for (const auto& row : r.result.trace.rows()) CHECK(row.alpha >= 0.0);

    const SolverResult a = solve_asl1(p, cfg);
    CHECK(r.result.objective <= a.objective + 1e-5 * (1.0 + std::abs(a.objective)));
    if (r.result.status == SolverStatus::Converged) CHECK(r.result.residual <= cfg.tolerance);
  }
}

TEST_CASE("frank-wolfe objective decreases monotonically") {
  const LassoInstance inst = generate_lasso(64, 4);
  const ProblemInstance p(std::make_shared<LassoObjective>(inst.problem), inst.tau);
  SolverConfig cfg;
  cfg.max_iterations = 500;
  const AfwResult r = solve_afw(p, AtomWeights::origin(64), cfg);
  const auto& rows = r.result.trace.rows();
  for (std::size_t k = 1; k < rows.size(); ++k) CHECK(rows[k].objective <= rows[k - 1].objective);
}

TEST_CASE("baselines reach the reference objective on a lasso instance") {
  const LassoInstance inst = generate_lasso(128, 9);
  const ProblemInstance p(std::make_shared<LassoObjective>(inst.problem), inst.tau);
  const SolverResult ref = solve_asl1(p, SolverConfig{});
  REQUIRE(ref.status == SolverStatus::Converged);
  SolverConfig cfg;
  cfg.target_objective = relative_target(ref.objective);
  const SolverResult s = solve_nmspg(p, Vector(128, 0.0), cfg);
  const AfwResult f = solve_afw(p, AtomWeights::origin(128), cfg);
  CHECK(s.objective <= *cfg.target_objective);
  CHECK(f.result.objective <= *cfg.target_objective);
  CHECK(s.status != SolverStatus::IterationLimit);
  CHECK(f.result.status != SolverStatus::IterationLimit);
}

TEST_CASE("baseline input validation") {
  const ProblemInstance p(testing::shifted_norm({0.5, 0.5}), 1.0);
  CHECK_THROWS_AS(solve_nmspg(p, Vector{1.0, 1.0}, SolverConfig{}), std::invalid_argument);
  CHECK_THROWS_AS(solve_afw(p, AtomWeights::origin(3), SolverConfig{}), DimensionError);
  CHECK_THROWS_AS(solve_afw(p, AtomWeights(2), SolverConfig{}), std::invalid_argument);
}

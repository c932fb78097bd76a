#include <doctest.h>

#include "asl1/active_set.hpp"
#include "asl1/data_io.hpp"
#include "asl1/solver.hpp"
#include "oracles.hpp"

#include <cmath>
#include <limits>

using namespace asl1;

namespace {

void check_converged_point(const ProblemInstance& p, const SolverResult& r,
                           const SolverConfig& cfg) {
  CHECK(r.status == SolverStatus::Converged);
  CHECK(r.residual <= cfg.tolerance);
  CHECK(check_feasible(p, r.x, kFeasibilityTolerance));
  Vector g(p.dimension());
  p.objective().value_and_gradient(r.x, g);
  const Vector psi = stationarity_violation(r.x, g, p.radius());
  double worst = 0.0;
  for (double v : psi) worst = std::max(worst, v);
  CHECK(worst <= 10.0 * cfg.tolerance * (1.0 + std::sqrt(testing::dotp(g, g))));
}

void check_trace(const SolverResult& r) {
  const auto& rows = r.trace.rows();
  REQUIRE(!rows.empty());
  CHECK(rows.back().iteration == r.iterations);
  double last_ref = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    CHECK(rows[k].iteration == k);
    if (k) CHECK(rows[k].time_s >= rows[k - 1].time_s);
    if (k + 1 < rows.size()) CHECK(rows[k + 1].objective <= rows[k].reference);
    if (!std::isnan(rows[k].reference)) {
      CHECK(rows[k].reference <= last_ref);
      last_ref = rows[k].reference;
    }
    if (k) CHECK(rows[k].epsilon <= rows[k - 1].epsilon);
  }
}

}  // namespace

TEST_CASE("interior optimum") {
  const ProblemInstance p(testing::shifted_norm({0.1, 0.1}), 1.0);
  const SolverConfig cfg;
  const SolverResult r = solve_asl1(p, cfg);
  check_converged_point(p, r, cfg);
  CHECK(r.x[0] == doctest::Approx(0.1).epsilon(1e-6));
  CHECK(r.x[1] == doctest::Approx(0.1).epsilon(1e-6));
  check_trace(r);
}

TEST_CASE("optimum on the boundary") {
  const ProblemInstance p(testing::shifted_norm({5.0, 0.0}), 1.0);
  const SolverConfig cfg;
  const SolverResult r = solve_asl1(p, cfg);
  check_converged_point(p, r, cfg);
  CHECK(r.x[0] == doctest::Approx(1.0));
  CHECK(std::abs(r.x[1]) <= 1e-9);
  check_trace(r);
}

TEST_CASE("start at a stationary point") {
  const ProblemInstance p(testing::shifted_norm({0.1, 0.1}), 1.0);
  const SolverResult r = solve_asl1(p, Vector{0.1, 0.1}, SolverConfig{});
  CHECK(r.status == SolverStatus::Converged);
  CHECK(r.iterations == 0);
  CHECK(r.residual == 0.0);
  CHECK(r.trace.size() == 1);
}

TEST_CASE("random quadratics") {
  Rng rng(53);
  // Ill-conditioned instances bottom out near 1e-8 in double precision: the
  // remaining decrease falls below the rounding of phi.
  SolverConfig cfg;
  cfg.tolerance = 1e-7;
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t n = 2 + rng.below(30);
    auto q = testing::Quadratic::random(n, rng, rng.uniform(0.1, 10.0), 0.05);
    const ProblemInstance p(q, rng.uniform(0.05, 2.0));
    const Vector x0 = testing::random_feasible(n, p.radius(), rng);
    const SolverResult r = solve_asl1(p, x0, cfg);
    check_converged_point(p, r, cfg);
    check_trace(r);
    CHECK(r.objective <= q->value(x0));
  }
}

TEST_CASE("synthetic lasso converges to a sparse point") {
  const LassoInstance inst = generate_lasso(256, 3);
  const ProblemInstance p(std::make_shared<LassoObjective>(inst.problem), inst.tau);
  const SolverConfig cfg;
  const SolverResult r = solve_asl1(p, cfg);
  check_converged_point(p, r, cfg);
  check_trace(r);
  CHECK(r.sparsity >= 0.9);
}

TEST_CASE("solver runs are deterministic") {
  const LassoInstance inst = generate_lasso(128, 5);
  const ProblemInstance p(std::make_shared<LassoObjective>(inst.problem), inst.tau);
  const SolverResult a = solve_asl1(p, SolverConfig{});
  const SolverResult b = solve_asl1(p, SolverConfig{});
  CHECK(a.iterations == b.iterations);
  CHECK(a.objective == b.objective);
  CHECK(a.x == b.x);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t k = 0; k < a.trace.size(); ++k) {
    CHECK(a.trace.rows()[k].objective == b.trace.rows()[k].objective);
    CHECK(a.trace.rows()[k].alpha == b.trace.rows()[k].alpha);
  }
}

TEST_CASE("stopping rules") {
  const LassoInstance inst = generate_lasso(128, 2);
  const ProblemInstance p(std::make_shared<LassoObjective>(inst.problem), inst.tau);

  SolverConfig cfg;
  cfg.max_iterations = 3;
  SolverResult r = solve_asl1(p, cfg);
  CHECK(r.status == SolverStatus::IterationLimit);
  CHECK(r.iterations == 3);
  CHECK(r.trace.size() == 4);
  CHECK(check_feasible(p, r.x, kFeasibilityTolerance));

  cfg = SolverConfig{};
  cfg.time_limit_s = 1e-9;
  r = solve_asl1(p, cfg);
  CHECK(r.status == SolverStatus::TimeLimit);

  const double f_star = solve_asl1(p, SolverConfig{}).objective;
  cfg = SolverConfig{};
  cfg.target_objective = relative_target(f_star);
  r = solve_asl1(p, cfg);
  CHECK((r.status == SolverStatus::TargetReached || r.status == SolverStatus::Converged));
  CHECK(r.objective <= relative_target(f_star));

  cfg = SolverConfig{};
  cfg.record_trace = false;
  r = solve_asl1(p, cfg);
  CHECK(r.trace.empty());
  CHECK(r.status == SolverStatus::Converged);
}

TEST_CASE("solver input validation") {
  const ProblemInstance p(testing::shifted_norm({0.5, 0.5}), 1.0);
  CHECK_THROWS_AS(solve_asl1(p, Vector{0.9, 0.9}, SolverConfig{}), std::invalid_argument);
  CHECK_THROWS_AS(solve_asl1(p, Vector{0.1}, SolverConfig{}), DimensionError);

  SolverConfig bad;
  bad.tolerance = 0.0;
  CHECK_THROWS_AS(solve_asl1(p, bad), std::invalid_argument);
  bad = SolverConfig{};
  bad.line_search.delta = 1.0;
  CHECK_THROWS_AS(solve_asl1(p, bad), std::invalid_argument);
  bad = SolverConfig{};
  bad.epsilon_shrink = 2.0;
  CHECK_THROWS_AS(solve_asl1(p, bad), std::invalid_argument);

  auto nan = std::make_shared<FunctionOracle>(
      1, [](std::span<const double>) { return std::nan(""); },
      [](std::span<const double>, std::span<double> g) { g[0] = 0.0; });
  CHECK_THROWS_AS(solve_asl1(ProblemInstance(nan, 1.0), SolverConfig{}), NumericalError);
}

TEST_CASE("relative target") {
  CHECK(relative_target(0.0) == 1e-6);
  CHECK(relative_target(10.0) == doctest::Approx(10.0 + 1.1e-5));
  CHECK(relative_target(-10.0) == doctest::Approx(-10.0 + 1.1e-5));
}

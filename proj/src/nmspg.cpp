#include "asl1/baselines.hpp"

#include "asl1/kernels.hpp"
#include "asl1/line_search.hpp"
#include "asl1/projection.hpp"
#include "solver_common.hpp"

#include <cmath>
#include <limits>

namespace asl1 {

SolverResult solve_nmspg(const ProblemInstance& problem,
                         std::span<const double> x0,
                         const SolverConfig& config) {
  config.validate();
  detail::require_feasible_start(problem, x0, "solve_nmspg");

  const ObjectiveOracle& oracle = problem.objective();
  const double tau = problem.radius();
  const std::size_t n = problem.dimension();

  Vector x(x0.begin(), x0.end()), g(n), d(n), x_next(n), g_next(n), probe(n);
  L1BallProjector projector;
  BBState bb;
  LineSearchMemory memory(config.memory_length);
  SolverResult result;
  Stopwatch clock;

  double phi = oracle.value_and_gradient(x, g);
  ++result.evaluations;
  detail::require_finite_value(phi, "solve_nmspg");

  std::size_t k = 0;
  double residual = 0.0;
  for (;; ++k) {
    kernels::waxpy(x, -1.0, g, probe);
    projector.project(probe, tau, probe);
    residual = std::sqrt(kernels::dist_sq(x, probe));
    const double elapsed = clock.seconds();

    TraceRow row;
    row.iteration = k;
    row.objective = phi;
    row.residual = residual;
    row.n_active = detail::count_zeros(x);
    row.n_nonactive = n - row.n_active;
    row.reference = std::numeric_limits<double>::quiet_NaN();

    std::optional<SolverStatus> stop;
    if (residual <= config.tolerance)
      stop = SolverStatus::Converged;
    else
      stop = detail::limit_reached(config, phi, k, elapsed);
    if (stop) {
      result.status = *stop;
      if (config.record_trace) {
        row.time_s = elapsed;
        result.trace.push(row);
      }
      break;
    }

    const double m = bb.update_full(x, g);
    kernels::waxpy(x, -1.0 / m, g, d);
    projector.project(d, tau, d);
    kernels::axpy(-1.0, x, d);

    memory.push(phi);
    const LineSearchResult ls = armijo_nonmonotone(
        oracle, x, phi, g, d, memory, config.line_search, x_next, g_next);
    result.evaluations += ls.evaluations;

    if (config.record_trace) {
      row.time_s = clock.seconds();
      row.alpha = ls.alpha;
      row.reference = memory.reference();
      row.backtrack_capped = ls.capped;
      result.trace.push(row);
    }

    std::swap(x, x_next);
    std::swap(g, g_next);
    phi = ls.value;
  }

  result.x = std::move(x);
  result.objective = phi;
  result.residual = residual;
  result.iterations = k;
  result.sparsity = sparsity(result.x);
  result.elapsed_s = clock.seconds();
  return result;
}

}  // namespace asl1

#include "asl1/solver.hpp"

#include "asl1/kernels.hpp"
#include "asl1/projection.hpp"
#include "solver_common.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace asl1 {

void SolverConfig::validate() const {
  if (!(tolerance > 0.0)) throw std::invalid_argument("SolverConfig: tolerance must be > 0");
  if (!(time_limit_s > 0.0)) throw std::invalid_argument("SolverConfig: time limit must be > 0");
  if (!(line_search.gamma > 0.0 && line_search.gamma < 1.0))
    throw std::invalid_argument("SolverConfig: gamma must be in (0,1)");
  if (!(line_search.delta > 0.0 && line_search.delta < 1.0))
    throw std::invalid_argument("SolverConfig: delta must be in (0,1)");
  if (line_search.max_backtracks < 0)
    throw std::invalid_argument("SolverConfig: max_backtracks must be >= 0");
  // EpsilonController validates its own constants.
  (void)EpsilonController(epsilon_initial, epsilon_shrink, epsilon_floor);
}

namespace {

// Working state of one run. Buffers are sized once.
struct Workspace {
  explicit Workspace(std::size_t n)
      : x(n), g(n), x_moved(n), g_moved(n), d(n), x_next(n), g_next(n),
        scratch(n) {}

  Vector x, g;              // current iterate and gradient
  Vector x_moved, g_moved;  // after the active-set move
  Vector d;
  Vector x_next, g_next;
  Vector scratch;
  std::vector<std::size_t> free;
  ActiveSetPartition partition;
  L1BallProjector projector;
};

double residual_at(Workspace& ws, double tau) {
  kernels::waxpy(ws.x, -1.0, ws.g, ws.scratch);
  ws.projector.project(ws.scratch, tau, ws.scratch);
  return std::sqrt(kernels::dist_sq(ws.x, ws.scratch));
}

}  // namespace

SolverResult solve_asl1(const ProblemInstance& problem,
                        std::span<const double> x0,
                        const SolverConfig& config) {
  config.validate();
  detail::require_feasible_start(problem, x0, "solve_asl1");

  const ObjectiveOracle& oracle = problem.objective();
  const double tau = problem.radius();
  const std::size_t n = problem.dimension();

  Workspace ws(n);
  std::copy(x0.begin(), x0.end(), ws.x.begin());
  SolverResult result;
  Stopwatch clock;

  double phi = oracle.value_and_gradient(ws.x, ws.g);
  ++result.evaluations;
  detail::require_finite_value(phi, "solve_asl1");

  EpsilonController eps(config.epsilon_initial, config.epsilon_shrink,
                        config.epsilon_floor);
  BBState bb;
  LineSearchMemory memory(config.memory_length);

  std::size_t k = 0;
  double residual = 0.0;
  for (;; ++k) {
    residual = residual_at(ws, tau);
    const double elapsed = clock.seconds();

    TraceRow row;
    row.iteration = k;
    row.objective = phi;
    row.residual = residual;
    row.reference = std::numeric_limits<double>::quiet_NaN();

    std::optional<SolverStatus> stop;
    if (residual <= config.tolerance) {
      stop = SolverStatus::Converged;
    } else {
      stop = detail::limit_reached(config, phi, k, elapsed);
    }
    estimate_active_set(ws.x, ws.g, tau, eps.epsilon(), ws.partition);
    if (!stop && ws.partition.steepest.empty()) stop = SolverStatus::Converged;
    if (stop) {
      result.status = *stop;
      if (config.record_trace) {
        row.time_s = elapsed;
        row.n_active = ws.partition.active.size();
        row.n_nonactive = ws.partition.nonactive.size();
        row.epsilon = eps.epsilon();
        result.trace.push(row);
      }
      break;
    }

    // Active-set move, backing epsilon off until it decreases phi.
    const std::size_t pivot = ws.partition.steepest.front();
    double phi_moved = phi;
    bool moved = false;
    for (;;) {
      moved = descent_move_into(ws.x, ws.g, pivot, ws.partition.active, ws.x_moved);
      if (!moved) break;
      phi_moved = oracle.value_and_gradient(ws.x_moved, ws.g_moved);
      ++result.evaluations;
      const auto verdict = eps.adapt(phi, phi_moved, moved);
      if (verdict == EpsilonController::Verdict::Accept) break;
      if (verdict == EpsilonController::Verdict::Fallback) {
        moved = false;
        break;
      }
      estimate_active_set(ws.x, ws.g, tau, eps.epsilon(), ws.partition);
    }
    if (!moved) {
      ws.x_moved = ws.x;
      ws.g_moved = ws.g;
      phi_moved = phi;
    }

    // Free coordinates: the estimated non-active set plus any coordinate the
    // move left nonzero (only possible after a fallback), so the restricted
    // step stays inside the ball.
    ws.free.clear();
    {
      auto it = ws.partition.nonactive.begin();
      const auto end = ws.partition.nonactive.end();
      for (std::size_t i = 0; i < n; ++i) {
        const bool in_nonactive = it != end && *it == i;
        if (in_nonactive) ++it;
        if (in_nonactive || ws.x_moved[i] != 0.0) ws.free.push_back(i);
      }
    }

    memory.push(phi_moved);
    const double m = bb.update(ws.x_moved, ws.g_moved, ws.free);
    direction(ws.x_moved, ws.g_moved, ws.free, 1.0 / m, tau, ws.d, ws.projector);
    const LineSearchResult ls =
        armijo_nonmonotone(oracle, ws.x_moved, phi_moved, ws.g_moved, ws.d,
                           memory, config.line_search, ws.x_next, ws.g_next);
    result.evaluations += ls.evaluations;

    // No progress at all: the estimate is too coarse for the current point.
    if (!moved && ls.alpha == 0.0) eps.shrink();

    if (config.record_trace) {
      row.time_s = clock.seconds();
      row.n_active = ws.partition.active.size();
      row.n_nonactive = ws.partition.nonactive.size();
      row.alpha = ls.alpha;
      row.epsilon = eps.epsilon();
      row.reference = memory.reference();
      row.backtrack_capped = ls.capped;
      result.trace.push(row);
    }

    std::swap(ws.x, ws.x_next);
    std::swap(ws.g, ws.g_next);
    phi = ls.value;
  }

  result.x = ws.x;
  result.objective = phi;
  result.residual = residual;
  result.iterations = k;
  result.sparsity = sparsity(result.x);
  result.elapsed_s = clock.seconds();
  return result;
}

SolverResult solve_asl1(const ProblemInstance& problem,
                        const SolverConfig& config) {
  const Vector origin(problem.dimension(), 0.0);
  return solve_asl1(problem, origin, config);
}

}  // namespace asl1

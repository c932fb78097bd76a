#pragma once

// Pieces shared by the three solver loops.

#include "asl1/core.hpp"
#include "asl1/solver.hpp"

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

namespace asl1::detail {

inline void require_feasible_start(const ProblemInstance& problem,
                                   std::span<const double> x0,
                                   const char* solver) {
  require_dimension(x0, problem.dimension(), solver);
  for (double v : x0)
    if (!std::isfinite(v))
      throw std::invalid_argument(std::string(solver) + ": non-finite starting point");
  if (!check_feasible(x0, problem.radius(), kFeasibilityTolerance))
    throw std::invalid_argument(std::string(solver) + ": starting point outside the l1-ball");
}

inline void require_finite_value(double phi, const char* solver) {
  if (!std::isfinite(phi))
    throw NumericalError(std::string(solver) + ": objective not finite at the starting point");
}

/// Limit checks shared by every loop, evaluated at the top of an iteration
/// after the convergence test.
inline std::optional<SolverStatus> limit_reached(const SolverConfig& config,
                                                 double phi, std::size_t k,
                                                 double elapsed) {
  if (config.target_objective && phi <= *config.target_objective)
    return SolverStatus::TargetReached;
  if (k >= config.max_iterations) return SolverStatus::IterationLimit;
  if (elapsed >= config.time_limit_s) return SolverStatus::TimeLimit;
  return std::nullopt;
}

inline std::size_t count_zeros(std::span<const double> x) {
  std::size_t zeros = 0;
  for (double v : x)
    if (v == 0.0) ++zeros;
  return zeros;
}

}  // namespace asl1::detail

#pragma once

#include "asl1/active_set.hpp"
#include "asl1/core.hpp"
#include "asl1/line_search.hpp"

#include <cstddef>
#include <limits>
#include <optional>
#include <span>

namespace asl1 {

struct SolverConfig {
  /// Stop once ||x - P(x - grad)|| <= tolerance.
  double tolerance = 1e-6;
  std::size_t max_iterations = 100000;
  double time_limit_s = 3600.0;
  /// Non-monotone memory: the reference is the max of the last n_m + 1 values.
  std::size_t memory_length = 10;
  LineSearchOptions line_search{};
  double epsilon_initial = EpsilonController::kDefaultInitial;
  double epsilon_shrink = EpsilonController::kDefaultShrink;
  double epsilon_floor = EpsilonController::kDefaultFloor;
  /// Comparison runs: stop as soon as the objective drops to this value.
  std::optional<double> target_objective;
  bool record_trace = true;

  void validate() const;
};

/// Objective threshold used when a baseline chases a reference value f*:
/// f* + 1e-6 (1 + |f*|).
inline double relative_target(double f_star) noexcept {
  return f_star + 1e-6 * (1.0 + (f_star < 0.0 ? -f_star : f_star));
}

/// Active-set method for min phi(x) s.t. ||x||_1 <= tau. Each iteration
/// estimates the active set at x, zeroes it while moving its mass onto a
/// steepest coordinate (with epsilon backed off until that move decreases
/// phi), then takes a spectral projected-gradient step over the remaining
/// coordinates with a non-monotone Armijo search.
///
/// x0 must be feasible and the objective finite there; otherwise throws.
SolverResult solve_asl1(const ProblemInstance& problem,
                        std::span<const double> x0, const SolverConfig& config);

/// Starts from the origin.
SolverResult solve_asl1(const ProblemInstance& problem,
                        const SolverConfig& config);

}  // namespace asl1

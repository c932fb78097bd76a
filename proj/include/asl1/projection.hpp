#pragma once

// Euclidean projections onto the l1-ball, onto the l1-ball restricted to a
// coordinate subspace, and onto the unit simplex.

#include "asl1/core.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace asl1 {

/// The set {x : ||x||_1 <= radius, x_i = 0 for i not in free_indices}.
class RestrictedManifold {
 public:
  /// free_indices must be strictly increasing and below dimension.
  RestrictedManifold(double radius, std::vector<std::size_t> free_indices,
                     std::size_t dimension);

  double radius() const noexcept { return radius_; }
  const std::vector<std::size_t>& free_indices() const noexcept { return free_; }
  std::size_t dimension() const noexcept { return dimension_; }

 private:
  double radius_;
  std::vector<std::size_t> free_;
  std::size_t dimension_;
};

/// Threshold theta with sum_i max(|v_i| - theta, 0) = tau, from sorted
/// magnitudes and their running sums. Returns 0 when ||v||_1 <= tau.
double l1_ball_threshold(std::span<const double> v, double tau);

/// Reference projection onto {||w||_1 <= tau}: sort-based threshold search.
Vector project_l1_ball(std::span<const double> v, double tau);

/// Same projection through the linear-time scan (Condat's method).
Vector project_l1_ball_fast(std::span<const double> v, double tau);

/// Reusable scratch for the scan-based projection; the solvers hold one to
/// avoid per-iteration allocations. Not thread-safe.
class L1BallProjector {
 public:
  /// Writes P(v) into out (out may alias v) and returns the threshold used.
  double project(std::span<const double> v, double tau, std::span<double> out);

  double threshold(std::span<const double> v, double tau);

 private:
  std::vector<double> active_;
  std::vector<double> deferred_;
};

/// Projection onto the restricted ball. Coordinates outside the free set are
/// zero in the result; an empty free set yields the zero vector.
Vector project_restricted(std::span<const double> v,
                          const RestrictedManifold& manifold);

/// Projection onto {y >= 0, sum y = 1}.
Vector project_simplex(std::span<const double> v);

/// ||x - P(x - g)|| with P the projection onto the radius-tau l1-ball.
double projected_gradient_residual(std::span<const double> x,
                                   std::span<const double> g, double tau);

}  // namespace asl1

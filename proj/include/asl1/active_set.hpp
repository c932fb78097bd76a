#pragma once

// Active-set machinery for minimization over the l1-ball: estimate which
// coordinates are zero at a nearby stationary point, zero them while moving
// their l1 mass onto a steepest coordinate, and adapt the estimate parameter
// when that move fails to decrease the objective.

#include "asl1/core.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace asl1 {

struct ActiveSetPartition {
  std::vector<std::size_t> active;     // predicted zeros at the solution
  std::vector<std::size_t> nonactive;  // complement of active
  std::vector<std::size_t> steepest;   // argmax_i |g_i|; empty iff g == 0
};

/// Index i is active when either
///   eps*tau*g'(tau e_i + x) <= 0 <= x_i <= eps*tau*g'(tau e_i - x)   or
///   eps*tau*g'(tau e_i + x) <= x_i <= 0 <= eps*tau*g'(tau e_i - x).
/// Only g'x is needed beyond the coordinates themselves, so the cost is two
/// passes over the vectors.
ActiveSetPartition estimate_active_set(std::span<const double> x,
                                       std::span<const double> g, double tau,
                                       double epsilon);

/// Allocation-free form for the solver loop; `out` is overwritten.
void estimate_active_set(std::span<const double> x, std::span<const double> g,
                         double tau, double epsilon, ActiveSetPartition& out);

struct DescentMove {
  Vector x;                 // the moved point
  std::size_t pivot = 0;    // steepest coordinate receiving the mass
  bool moved = false;       // false when the zeroed set carried no mass
};

/// Zeroes the coordinates in `zeroed` (a subset of partition.active) and
/// shifts x_j by -sign(g_j) * sum |x_h| for the smallest steepest index j.
/// Returns nullopt when the steepest set is empty (g == 0): x is then a
/// stationary point of the unconstrained problem and the caller should stop.
std::optional<DescentMove> descent_move(std::span<const double> x,
                                        std::span<const double> g,
                                        const ActiveSetPartition& partition,
                                        std::span<const std::size_t> zeroed);

/// Convenience overload zeroing the whole estimated active set.
std::optional<DescentMove> descent_move(std::span<const double> x,
                                        std::span<const double> g,
                                        const ActiveSetPartition& partition);

/// Writes the move into `out` and reports whether any mass was transferred.
bool descent_move_into(std::span<const double> x, std::span<const double> g,
                       std::size_t pivot, std::span<const std::size_t> zeroed,
                       std::span<double> out);

/// Psi_i(x) = max{0, -g'(tau e_i - x), -g'(-tau e_i - x)}. x is stationary iff
/// every entry is zero.
Vector stationarity_violation(std::span<const double> x,
                              std::span<const double> g, double tau);

/// Owns the active-set parameter epsilon for one solver run. Epsilon only ever
/// shrinks, geometrically, and never below the floor.
class EpsilonController {
 public:
  enum class Verdict {
    Accept,    // keep the moved point
    Retry,     // epsilon was reduced; re-estimate and move again
    Fallback,  // epsilon already at the floor; use the unmoved point
  };

  static constexpr double kDefaultInitial = 1e-6;
  static constexpr double kDefaultShrink = 0.1;
  static constexpr double kDefaultFloor = 1e-16;

  EpsilonController(double initial = kDefaultInitial,
                    double shrink_factor = kDefaultShrink,
                    double floor = kDefaultFloor);

  double epsilon() const noexcept { return epsilon_; }
  double shrink_factor() const noexcept { return shrink_; }
  double floor() const noexcept { return floor_; }
  bool at_floor() const noexcept { return epsilon_ <= floor_; }

  /// phi_after must be strictly below phi_before whenever the point moved.
  Verdict adapt(double phi_before, double phi_after, bool moved) noexcept;

  /// One shrink step clamped at the floor. Returns false if already there.
  bool shrink() noexcept;

 private:
  double epsilon_;
  double shrink_;
  double floor_;
};

}  // namespace asl1

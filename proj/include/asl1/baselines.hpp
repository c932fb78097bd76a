#pragma once

// Comparison solvers: non-monotone spectral projected gradient over the whole
// ball, and away-step Frank-Wolfe over the 2n vertices +-tau e_i.

#include "asl1/core.hpp"
#include "asl1/solver.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace asl1 {

/// x_{k+1} = x_k + alpha_k d_k with d_k = P(x_k - grad / m_k) - x_k over the
/// full ball, m_k the safeguarded spectral coefficient on full vectors, and the
/// same non-monotone Armijo search (reference over phi(x_k)) as solve_asl1.
SolverResult solve_nmspg(const ProblemInstance& problem,
                         std::span<const double> x0, const SolverConfig& config);

/// Vertex sign * tau * e_index of the l1-ball.
struct Atom {
  std::size_t index = 0;
  bool negative = false;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Convex combination of l1-ball vertices. Weights are non-negative and sum to
/// one (within 1e-10).
class AtomWeights {
 public:
  explicit AtomWeights(std::size_t dimension);

  /// 1/2 on +tau e_0 and 1/2 on -tau e_0: represents the origin.
  static AtomWeights origin(std::size_t dimension);
  static AtomWeights vertex(std::size_t dimension, Atom atom);

  std::size_t dimension() const noexcept { return dimension_; }
  double weight(Atom atom) const;
  void set(Atom atom, double weight);

  /// Atoms with positive weight, in insertion order.
  std::vector<std::pair<Atom, double>> support() const;
  double total() const noexcept;
  bool valid(double tol = 1e-10) const noexcept;

  /// sum_v w_v * v for the given radius.
  Vector represented(double tau) const;

 private:
  std::size_t slot(Atom atom) const;

  std::size_t dimension_;
  std::vector<double> weights_;        // [0, n): +e_i, [n, 2n): -e_i
  std::vector<std::size_t> support_;   // slots with weight > 0
};

struct AfwResult {
  SolverResult result;
  AtomWeights weights;
  std::size_t away_steps = 0;
  std::size_t drop_steps = 0;
};

/// Away-step Frank-Wolfe with monotone Armijo backtracking. Per iteration the
/// Frank-Wolfe vertex is -tau sign(g_j) e_j for the smallest j maximizing
/// |g_j|, and the away vertex is the support atom maximizing g'v. Atoms whose
/// weight falls to 1e-12 or below are dropped. Stops on the projected-gradient
/// residual, a zero Frank-Wolfe gap, the target objective or a limit.
AfwResult solve_afw(const ProblemInstance& problem, const AtomWeights& start,
                    const SolverConfig& config);

}  // namespace asl1

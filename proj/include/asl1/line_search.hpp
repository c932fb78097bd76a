#pragma once

// Spectral (Barzilai-Borwein) scaling, projected directions on a coordinate
// subspace of the l1-ball, and Armijo backtracking with a non-monotone
// reference value.

#include "asl1/core.hpp"
#include "asl1/projection.hpp"

#include <cstddef>
#include <deque>
#include <span>
#include <vector>

namespace asl1 {

inline constexpr double kSpectralMin = 1e-10;
inline constexpr double kSpectralMax = 1e10;

/// Safeguarded spectral coefficient from a secant pair (s, y):
///   m_a = s'y / ||s||^2, m_b = ||y||^2 / s'y
///   0 < m_a < max   -> max(min, m_a)
///   m_a >= max      -> max(min, min(max, m_b))
///   m_a <= 0        -> max(min, min(1, ||g_N|| / ||x_N||))   (1 if x_N = 0)
/// A zero s is treated as the m_a <= 0 case.
double bb_coefficient(std::span<const double> s, std::span<const double> y,
                      std::span<const double> x_free,
                      std::span<const double> g_free);

/// Keeps the previous point and gradient so consecutive calls can form the
/// secant pair. The first call after construction or reset() returns 1.
class BBState {
 public:
  /// Pair restricted to the coordinates free both now and at the previous
  /// call; an empty intersection resets the coefficient to 1.
  double update(std::span<const double> x, std::span<const double> g,
                std::span<const std::size_t> free);

  /// Pair over all coordinates.
  double update_full(std::span<const double> x, std::span<const double> g);

  void reset() noexcept { has_previous_ = false; }
  double last() const noexcept { return last_; }

 private:
  Vector prev_x_;
  Vector prev_g_;
  std::vector<char> prev_free_;
  Vector s_, y_, x_free_, g_free_;
  bool has_previous_ = false;
  double last_ = 1.0;
};

/// d_A = 0 and d_N = P_N(x - step * g)_N - x_N, where P_N projects onto the
/// l1-ball of radius tau restricted to the free coordinates. `free` must be
/// sorted. Satisfies g'd <= -||d||^2 / step and ||d|| <= step * ||g||.
void direction(std::span<const double> x, std::span<const double> g,
               std::span<const std::size_t> free, double step, double tau,
               std::span<double> d, L1BallProjector& projector);

Vector direction(std::span<const double> x, std::span<const double> g,
                 std::span<const std::size_t> free, double step, double tau);

/// Last n_m + 1 objective values; the reference is their maximum.
class LineSearchMemory {
 public:
  explicit LineSearchMemory(std::size_t memory_length);

  void push(double value);
  double reference() const;
  std::size_t size() const noexcept { return values_.size(); }
  std::size_t capacity() const noexcept { return length_ + 1; }
  void clear() noexcept { values_.clear(); }

 private:
  std::size_t length_;
  std::deque<double> values_;
};

struct LineSearchOptions {
  double gamma = 1e-4;
  double delta = 0.5;
  int max_backtracks = 60;
};

struct LineSearchResult {
  double alpha = 0.0;
  double value = 0.0;          // objective at x + alpha d
  std::size_t evaluations = 0;
  bool capped = false;         // backtracking limit hit
};

/// Backtracking from alpha_init: accept the first alpha = alpha_init * delta^t
/// with phi(x + alpha d) <= reference + gamma * alpha * g'd. If g'd >= 0 the
/// step is zero. Non-finite trial values count as failures. When the cap is
/// hit, the best trial is taken if it improves on phi(x), otherwise alpha = 0.
/// x_out and grad_out receive the accepted point and its gradient.
LineSearchResult backtracking_armijo(const ObjectiveOracle& oracle,
                                     std::span<const double> x, double phi_x,
                                     std::span<const double> g,
                                     std::span<const double> d,
                                     double reference, double alpha_init,
                                     const LineSearchOptions& options,
                                     std::span<double> x_out,
                                     std::span<double> grad_out);

/// Non-monotone Armijo search starting from alpha = 1 against the memory's
/// reference value.
LineSearchResult armijo_nonmonotone(const ObjectiveOracle& oracle,
                                    std::span<const double> x, double phi_x,
                                    std::span<const double> g,
                                    std::span<const double> d,
                                    const LineSearchMemory& memory,
                                    const LineSearchOptions& options,
                                    std::span<double> x_out,
                                    std::span<double> grad_out);

}  // namespace asl1

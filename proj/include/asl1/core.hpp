#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace asl1 {

using Vector = std::vector<double>;

/// Zero threshold used when reporting the fraction of zeros in a solution.
inline constexpr double kSparsityThreshold = 1e-5;

/// Relative slack accepted by feasibility checks on solver output.
inline constexpr double kFeasibilityTolerance = 1e-12;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Smooth objective with value and gradient access. Implementations must be
/// deterministic and safe to call concurrently from several solver runs.
class ObjectiveOracle {
 public:
  virtual ~ObjectiveOracle() = default;

  virtual std::size_t dimension() const noexcept = 0;

  virtual double value(std::span<const double> x) const = 0;

  /// Writes the gradient at x into grad and returns the objective value.
  virtual double value_and_gradient(std::span<const double> x,
                                    std::span<double> grad) const = 0;

  void gradient(std::span<const double> x, std::span<double> grad) const {
    (void)value_and_gradient(x, grad);
  }
};

/// Oracle built from a pair of callables. Handy for small analytic test
/// problems; the data-backed objectives live in objectives.hpp.
class FunctionOracle final : public ObjectiveOracle {
 public:
  using ValueFn = std::function<double(std::span<const double>)>;
  using GradFn = std::function<void(std::span<const double>, std::span<double>)>;

  FunctionOracle(std::size_t n, ValueFn value, GradFn grad);

  std::size_t dimension() const noexcept override { return n_; }
  double value(std::span<const double> x) const override;
  double value_and_gradient(std::span<const double> x,
                            std::span<double> grad) const override;

 private:
  std::size_t n_;
  ValueFn value_;
  GradFn grad_;
};

/// Minimize objective(x) subject to ||x||_1 <= radius.
class ProblemInstance {
 public:
  ProblemInstance(std::shared_ptr<const ObjectiveOracle> objective,
                  double radius);

  const ObjectiveOracle& objective() const noexcept { return *objective_; }
  std::shared_ptr<const ObjectiveOracle> objective_ptr() const noexcept {
    return objective_;
  }
  double radius() const noexcept { return radius_; }
  std::size_t dimension() const noexcept { return objective_->dimension(); }

 private:
  std::shared_ptr<const ObjectiveOracle> objective_;
  double radius_;
};

enum class SolverStatus {
  Converged,       // projected-gradient residual below tolerance
  TargetReached,   // objective reached the caller's target (comparison runs)
  IterationLimit,
  TimeLimit,
};

std::string_view to_string(SolverStatus status) noexcept;

struct TraceRow {
  std::size_t iteration = 0;
  double time_s = 0.0;
  double objective = 0.0;
  double residual = 0.0;
  std::size_t n_active = 0;
  std::size_t n_nonactive = 0;
  double alpha = 0.0;
  double epsilon = 0.0;
  // Not part of the CSV layout: the non-monotone reference value used by the
  // line search of this iteration (NaN when not applicable).
  double reference = 0.0;
  bool backtrack_capped = false;
};

/// Per-iteration history. Iteration indices must strictly increase and wall
/// time must not go backwards.
class ConvergenceTrace {
 public:
  void push(const TraceRow& row);

  const std::vector<TraceRow>& rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return rows_.empty(); }
  void clear() noexcept { rows_.clear(); }

 private:
  std::vector<TraceRow> rows_;
};

struct SolverResult {
  Vector x;
  double objective = 0.0;
  double residual = 0.0;
  std::size_t iterations = 0;
  SolverStatus status = SolverStatus::IterationLimit;
  double sparsity = 0.0;
  double elapsed_s = 0.0;
  std::size_t evaluations = 0;
  ConvergenceTrace trace;
};

/// true iff ||x||_1 <= tau * (1 + tol).
bool check_feasible(std::span<const double> x, double tau, double tol);

/// Same, but validates x against the problem dimension first.
bool check_feasible(const ProblemInstance& problem, std::span<const double> x,
                    double tol);

/// Fraction of coordinates with |x_i| <= threshold.
double sparsity(std::span<const double> x,
                double threshold = kSparsityThreshold) noexcept;

/// Max over i of |grad_i - fd_i| / (1 + |fd_i|) with central differences of
/// step 1e-6 * (1 + |x_i|).
double gradient_check(const ObjectiveOracle& oracle, std::span<const double> x);

/// sign with sign(0) = +1.
inline double sign_nonneg(double v) noexcept { return v < 0.0 ? -1.0 : 1.0; }

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void require_dimension(std::span<const double> x, std::size_t n,
                       std::string_view what);

}  // namespace asl1

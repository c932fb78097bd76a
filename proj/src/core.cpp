#include "asl1/core.hpp"

#include "asl1/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace asl1 {

FunctionOracle::FunctionOracle(std::size_t n, ValueFn value, GradFn grad)
    : n_(n), value_(std::move(value)), grad_(std::move(grad)) {
  if (n_ == 0) throw std::invalid_argument("FunctionOracle: dimension must be >= 1");
  if (!value_ || !grad_) throw std::invalid_argument("FunctionOracle: empty callable");
}

double FunctionOracle::value(std::span<const double> x) const {
  require_dimension(x, n_, "FunctionOracle::value");
  return value_(x);
}

double FunctionOracle::value_and_gradient(std::span<const double> x,
                                          std::span<double> grad) const {
  require_dimension(x, n_, "FunctionOracle::value_and_gradient");
  require_dimension(grad, n_, "FunctionOracle gradient buffer");
  grad_(x, grad);
  return value_(x);
}

ProblemInstance::ProblemInstance(
    std::shared_ptr<const ObjectiveOracle> objective, double radius)
    : objective_(std::move(objective)), radius_(radius) {
  if (!objective_) throw std::invalid_argument("ProblemInstance: null objective");
  if (!(radius_ > 0.0) || !std::isfinite(radius_))
    throw std::invalid_argument("ProblemInstance: radius must be positive and finite");
  if (objective_->dimension() == 0)
    throw std::invalid_argument("ProblemInstance: dimension must be >= 1");
}

std::string_view to_string(SolverStatus status) noexcept {
  switch (status) {
    case SolverStatus::Converged: return "converged";
    case SolverStatus::TargetReached: return "target_reached";
    case SolverStatus::IterationLimit: return "iteration_limit";
    case SolverStatus::TimeLimit: return "time_limit";
  }
  return "unknown";
}

void ConvergenceTrace::push(const TraceRow& row) {
  if (!rows_.empty()) {
    const TraceRow& last = rows_.back();
    if (row.iteration <= last.iteration)
      throw std::logic_error("ConvergenceTrace: iteration index must increase");
    if (row.time_s < last.time_s)
      throw std::logic_error("ConvergenceTrace: wall time went backwards");
  }
  rows_.push_back(row);
}

void require_dimension(std::span<const double> x, std::size_t n,
                       std::string_view what) {
  if (x.size() != n) {
    throw DimensionError(std::string(what) + ": expected length " +
                         std::to_string(n) + ", got " +
                         std::to_string(x.size()));
  }
}

bool check_feasible(std::span<const double> x, double tau, double tol) {
  if (tol < 0.0) throw std::invalid_argument("check_feasible: tol must be >= 0");
  return kernels::norm1(x) <= tau * (1.0 + tol);
}

bool check_feasible(const ProblemInstance& problem, std::span<const double> x,
                    double tol) {
  require_dimension(x, problem.dimension(), "check_feasible");
  return check_feasible(x, problem.radius(), tol);
}

double sparsity(std::span<const double> x, double threshold) noexcept {
  if (x.empty()) return 0.0;
  const auto zeros = std::count_if(x.begin(), x.end(), [threshold](double v) {
    return std::fabs(v) <= threshold;
  });
  return static_cast<double>(zeros) / static_cast<double>(x.size());
}

double gradient_check(const ObjectiveOracle& oracle, std::span<const double> x) {
  const std::size_t n = oracle.dimension();
  require_dimension(x, n, "gradient_check");
  if (!std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); }))
    throw std::invalid_argument("gradient_check: non-finite point");

  Vector grad(n);
  oracle.gradient(x, grad);
  Vector probe(x.begin(), x.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double h = 1e-6 * (1.0 + std::fabs(x[i]));
    probe[i] = x[i] + h;
    const double fp = oracle.value(probe);
    probe[i] = x[i] - h;
    const double fm = oracle.value(probe);
    probe[i] = x[i];
    const double fd = (fp - fm) / (2.0 * h);
    if (!std::isfinite(fd) || !std::isfinite(grad[i]))
      throw NumericalError("gradient_check: non-finite oracle output at coordinate " +
                           std::to_string(i));
    worst = std::max(worst, std::fabs(grad[i] - fd) / (1.0 + std::fabs(fd)));
  }
  return worst;
}

}  // namespace asl1

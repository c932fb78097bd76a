#include "asl1/objectives.hpp"

#include "asl1/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace asl1 {

void LassoProblem::validate() const {
  if (A.cols() == 0) throw std::invalid_argument("LassoProblem: matrix has no columns");
  if (b.size() != A.rows())
    throw DimensionError("LassoProblem: b has " + std::to_string(b.size()) +
                         " entries, matrix has " + std::to_string(A.rows()) + " rows");
}

void LogisticProblem::validate() const {
  if (samples.cols() == 0) throw std::invalid_argument("LogisticProblem: no features");
  if (labels.size() != samples.rows())
    throw DimensionError("LogisticProblem: label count does not match sample count");
  for (double y : labels)
    if (y != 1.0 && y != -1.0) throw std::invalid_argument("LogisticProblem: labels must be +1 or -1");
}

LassoObjective::LassoObjective(LassoProblem problem) : problem_(std::move(problem)) {
  problem_.validate();
}

double LassoObjective::value(std::span<const double> x) const {
  require_dimension(x, dimension(), "LassoObjective::value");
  Vector r(problem_.A.rows());
  problem_.A.multiply(x, r);
  kernels::axpy(-1.0, problem_.b, r);
  visited_ += problem_.A.nonzeros();
  return kernels::norm2_sq(r);
}

double LassoObjective::value_and_gradient(std::span<const double> x,
                                          std::span<double> grad) const {
  require_dimension(x, dimension(), "LassoObjective::value_and_gradient");
  require_dimension(grad, dimension(), "LassoObjective gradient buffer");
  Vector r(problem_.A.rows());
  problem_.A.multiply(x, r);
  kernels::axpy(-1.0, problem_.b, r);
  const double phi = kernels::norm2_sq(r);
  problem_.A.multiply_transpose(r, grad);
  for (double& gi : grad) gi *= 2.0;
  visited_ += 2 * problem_.A.nonzeros();
  return phi;
}

double log1p_exp_neg(double t) noexcept {
  return t >= 0.0 ? std::log1p(std::exp(-t)) : -t + std::log1p(std::exp(t));
}

double logistic_neg(double t) noexcept {
  if (t >= 0.0) {
    const double e = std::exp(-t);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(t));
}

LogisticObjective::LogisticObjective(LogisticProblem problem)
    : problem_(std::move(problem)) {
  problem_.validate();
}

double LogisticObjective::value(std::span<const double> x) const {
  require_dimension(x, dimension(), "LogisticObjective::value");
  Vector margin(problem_.samples.rows());
  problem_.samples.multiply(x, margin);
  visited_ += problem_.samples.nonzeros();
  double phi = 0.0;
  for (std::size_t i = 0; i < margin.size(); ++i)
    phi += log1p_exp_neg(problem_.labels[i] * margin[i]);
  return phi;
}

double LogisticObjective::value_and_gradient(std::span<const double> x,
                                             std::span<double> grad) const {
  require_dimension(x, dimension(), "LogisticObjective::value_and_gradient");
  require_dimension(grad, dimension(), "LogisticObjective gradient buffer");
  Vector margin(problem_.samples.rows());
  problem_.samples.multiply(x, margin);
  double phi = 0.0;
  for (std::size_t i = 0; i < margin.size(); ++i) {
    const double y = problem_.labels[i];
    const double t = y * margin[i];
    phi += log1p_exp_neg(t);
    margin[i] = -y * logistic_neg(t);  // reuse as the per-sample weight
  }
  problem_.samples.multiply_transpose(margin, grad);
  visited_ += 2 * problem_.samples.nonzeros();
  return phi;
}

}  // namespace asl1

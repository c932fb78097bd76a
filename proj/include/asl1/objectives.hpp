#pragma once

#include "asl1/core.hpp"
#include "asl1/sparse_matrix.hpp"

#include <atomic>
#include <cstdint>
#include <span>
#include <vector>

namespace asl1 {

struct LassoProblem {
  SparseMatrix A;  // m x n
  Vector b;        // m

  void validate() const;
};

struct LogisticProblem {
  SparseMatrix samples;  // one row per sample
  Vector labels;         // each +1 or -1

  std::size_t num_samples() const noexcept { return samples.rows(); }
  std::size_t num_features() const noexcept { return samples.cols(); }
  void validate() const;
};

/// phi(x) = ||A x - b||^2 (no 1/2), grad = 2 A'(A x - b).
class LassoObjective final : public ObjectiveOracle {
 public:
  explicit LassoObjective(LassoProblem problem);

  std::size_t dimension() const noexcept override { return problem_.A.cols(); }
  double value(std::span<const double> x) const override;
  double value_and_gradient(std::span<const double> x,
                            std::span<double> grad) const override;

  const LassoProblem& problem() const noexcept { return problem_; }

  /// Stored nonzeros touched so far: nnz per value(), 2 nnz per
  /// value_and_gradient() (one product with A, one with A').
  std::uint64_t nonzeros_visited() const noexcept { return visited_.load(); }

 private:
  LassoProblem problem_;
  mutable std::atomic<std::uint64_t> visited_{0};
};

/// phi(x) = sum_i log(1 + exp(-y_i a_i'x)).
class LogisticObjective final : public ObjectiveOracle {
 public:
  explicit LogisticObjective(LogisticProblem problem);

  std::size_t dimension() const noexcept override { return problem_.samples.cols(); }
  double value(std::span<const double> x) const override;
  double value_and_gradient(std::span<const double> x,
                            std::span<double> grad) const override;

  const LogisticProblem& problem() const noexcept { return problem_; }
  std::uint64_t nonzeros_visited() const noexcept { return visited_.load(); }

 private:
  LogisticProblem problem_;
  mutable std::atomic<std::uint64_t> visited_{0};
};

/// log(1 + exp(-t)) without overflow for large |t|.
double log1p_exp_neg(double t) noexcept;

/// 1 / (1 + exp(t)), i.e. the logistic function at -t.
double logistic_neg(double t) noexcept;

}  // namespace asl1

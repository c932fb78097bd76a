#pragma once

// Instance readers and generators, and trace output.

#include "asl1/core.hpp"
#include "asl1/objectives.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

namespace asl1 {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Message reads "line N: ..." or, with a path, "path:N: ...".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, const std::string& path = {});
  std::size_t line() const noexcept { return line_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

/// Reads "label idx:val idx:val ..." lines with 1-based feature indices.
/// Blank lines and anything after '#' are ignored. Labels may use the
/// {-1,+1}, {0,1} (0 -> -1) or {1,2} (2 -> -1) convention, but one file must
/// stick to one of them. The feature count is the largest index seen unless
/// `num_features` is given (it must then cover every index).
LogisticProblem read_libsvm(const std::filesystem::path& path,
                            std::optional<std::size_t> num_features = {});

/// Parses LIBSVM text from a string (same rules as read_libsvm).
LogisticProblem parse_libsvm(const std::string& text,
                             std::optional<std::size_t> num_features = {});

/// Same text format with real-valued targets, read as a least-squares
/// problem: each line is one row of A and its label is the entry of b.
LassoProblem read_libsvm_regression(const std::filesystem::path& path,
                                    std::optional<std::size_t> num_features = {});
LassoProblem parse_libsvm_regression(const std::string& text,
                                     std::optional<std::size_t> num_features = {});

/// Writes labels as +1/-1 and values with 17 significant digits.
void write_libsvm(const LogisticProblem& problem,
                  const std::filesystem::path& path);

struct LassoInstance {
  LassoProblem problem;
  Vector x_true;  // planted sparse solution
  double tau = 0.0;
};

/// m = n/2 rows with U(0,1) entries; the planted x has round(0.05 m) entries
/// set to +-1 at random positions with independent random signs;
/// b = A x + 0.001 v with v standard normal; tau = 0.99 ||x||_1.
/// Requires n >= 20. Deterministic in the seed.
LassoInstance generate_lasso(std::size_t n, std::uint64_t seed);

/// Synthetic classification data: each feature present with probability
/// `density` (standard normal value), labels from the sign of a sparse planted
/// linear model plus small noise.
LogisticProblem generate_logistic(std::size_t samples, std::size_t features,
                                  std::uint64_t seed, double density = 0.1);

/// CSV with header iter,time_s,obj,residual,n_active,n_nonactive,alpha,epsilon
/// and floats at 17 significant digits.
void write_trace(const ConvergenceTrace& trace,
                 const std::filesystem::path& path);

/// Reads a file produced by write_trace (CSV columns only).
ConvergenceTrace read_trace(const std::filesystem::path& path);

inline constexpr const char* kTraceHeader =
    "iter,time_s,obj,residual,n_active,n_nonactive,alpha,epsilon";

}  // namespace asl1

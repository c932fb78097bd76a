#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace asl1 {

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Compressed-row matrix. Column indices are 0-based and strictly increasing
/// within each row. The transpose is stored alongside so that both A x and
/// A' r run as row-wise gather products.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  /// Raw CSR arrays; validated.
  SparseMatrix(std::size_t rows, std::size_t cols,
               std::vector<std::size_t> row_offsets,
               std::vector<std::uint32_t> col_indices,
               std::vector<double> values);

  /// Duplicates are rejected; explicit zeros are kept.
  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols,
                                    std::vector<Triplet> entries);

  /// Row-major dense input; every entry is stored, zeros included.
  static SparseMatrix from_dense(std::size_t rows, std::size_t cols,
                                 std::span<const double> row_major);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nonzeros() const noexcept { return values_.size(); }

  std::span<const std::size_t> row_offsets() const noexcept { return offsets_; }
  std::span<const std::uint32_t> col_indices() const noexcept { return cols_idx_; }
  std::span<const double> values() const noexcept { return values_; }

  std::span<const std::uint32_t> row_indices(std::size_t r) const;
  std::span<const double> row_values(std::size_t r) const;

  /// y = A x
  void multiply(std::span<const double> x, std::span<double> y) const;
  /// y = A' r
  void multiply_transpose(std::span<const double> r, std::span<double> y) const;

 private:
  void validate() const;
  void build_transpose();

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::uint32_t> cols_idx_;
  std::vector<double> values_;

  std::vector<std::size_t> t_offsets_{0};
  std::vector<std::uint32_t> t_idx_;
  std::vector<double> t_values_;
};

}  // namespace asl1

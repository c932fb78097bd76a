#include "asl1/sparse_matrix.hpp"

#include "asl1/core.hpp"
#include "asl1/kernels.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace asl1 {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols,
                           std::vector<std::size_t> row_offsets,
                           std::vector<std::uint32_t> col_indices,
                           std::vector<double> values)
    : rows_(rows),
      cols_(cols),
      offsets_(std::move(row_offsets)),
      cols_idx_(std::move(col_indices)),
      values_(std::move(values)) {
  validate();
  build_transpose();
}

void SparseMatrix::validate() const {
  if (cols_ > std::numeric_limits<std::int32_t>::max())
    throw std::invalid_argument("SparseMatrix: too many columns");
  if (offsets_.size() != rows_ + 1 || offsets_.front() != 0)
    throw std::invalid_argument("SparseMatrix: row offsets must have rows+1 entries starting at 0");
  if (offsets_.back() != cols_idx_.size() || cols_idx_.size() != values_.size())
    throw std::invalid_argument("SparseMatrix: offsets, indices and values disagree");
  for (std::size_t r = 0; r < rows_; ++r) {
    if (offsets_[r + 1] < offsets_[r])
      throw std::invalid_argument("SparseMatrix: row offsets must be non-decreasing");
    for (std::size_t k = offsets_[r]; k < offsets_[r + 1]; ++k) {
      if (cols_idx_[k] >= cols_)
        throw std::invalid_argument("SparseMatrix: column index out of range in row " + std::to_string(r));
      if (k > offsets_[r] && cols_idx_[k] <= cols_idx_[k - 1])
        throw std::invalid_argument("SparseMatrix: column indices must increase within row " + std::to_string(r));
    }
  }
}

void SparseMatrix::build_transpose() {
  t_offsets_.assign(cols_ + 1, 0);
  for (std::uint32_t c : cols_idx_) ++t_offsets_[c + 1];
  for (std::size_t c = 0; c < cols_; ++c) t_offsets_[c + 1] += t_offsets_[c];
  t_idx_.resize(values_.size());
  t_values_.resize(values_.size());
  std::vector<std::size_t> fill(t_offsets_.begin(), t_offsets_.end() - 1);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = offsets_[r]; k < offsets_[r + 1]; ++k) {
      const std::size_t dst = fill[cols_idx_[k]]++;
      t_idx_[dst] = static_cast<std::uint32_t>(r);
      t_values_[dst] = values_[k];
    }
  }
}

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                         std::vector<Triplet> entries) {
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<std::size_t> offsets(rows + 1, 0);
  std::vector<std::uint32_t> idx;
  std::vector<double> vals;
  idx.reserve(entries.size());
  vals.reserve(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const Triplet& t = entries[k];
    if (t.row >= rows || t.col >= cols)
      throw std::invalid_argument("SparseMatrix::from_triplets: entry out of range");
    if (k > 0 && entries[k - 1].row == t.row && entries[k - 1].col == t.col)
      throw std::invalid_argument("SparseMatrix::from_triplets: duplicate entry");
    ++offsets[t.row + 1];
    idx.push_back(static_cast<std::uint32_t>(t.col));
    vals.push_back(t.value);
  }
  for (std::size_t r = 0; r < rows; ++r) offsets[r + 1] += offsets[r];
  return SparseMatrix(rows, cols, std::move(offsets), std::move(idx), std::move(vals));
}

SparseMatrix SparseMatrix::from_dense(std::size_t rows, std::size_t cols,
                                      std::span<const double> row_major) {
  require_dimension(row_major, rows * cols, "SparseMatrix::from_dense");
  std::vector<std::size_t> offsets(rows + 1);
  std::vector<std::uint32_t> idx(rows * cols);
  for (std::size_t r = 0; r <= rows; ++r) offsets[r] = r * cols;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) idx[r * cols + c] = static_cast<std::uint32_t>(c);
  return SparseMatrix(rows, cols, std::move(offsets), std::move(idx),
                      std::vector<double>(row_major.begin(), row_major.end()));
}

std::span<const std::uint32_t> SparseMatrix::row_indices(std::size_t r) const {
  return std::span<const std::uint32_t>(cols_idx_).subspan(offsets_[r], offsets_[r + 1] - offsets_[r]);
}

std::span<const double> SparseMatrix::row_values(std::size_t r) const {
  return std::span<const double>(values_).subspan(offsets_[r], offsets_[r + 1] - offsets_[r]);
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  require_dimension(x, cols_, "SparseMatrix::multiply input");
  require_dimension(y, rows_, "SparseMatrix::multiply output");
  const auto gather = kernels::active().gather_dot;
  for (std::size_t r = 0; r < rows_; ++r) {
    const std::size_t begin = offsets_[r];
    y[r] = gather(values_.data() + begin, cols_idx_.data() + begin, x.data(),
                  offsets_[r + 1] - begin);
  }
}

void SparseMatrix::multiply_transpose(std::span<const double> r,
                                      std::span<double> y) const {
  require_dimension(r, rows_, "SparseMatrix::multiply_transpose input");
  require_dimension(y, cols_, "SparseMatrix::multiply_transpose output");
  const auto gather = kernels::active().gather_dot;
  for (std::size_t c = 0; c < cols_; ++c) {
    const std::size_t begin = t_offsets_[c];
    y[c] = gather(t_values_.data() + begin, t_idx_.data() + begin, r.data(),
                  t_offsets_[c + 1] - begin);
  }
}

}  // namespace asl1

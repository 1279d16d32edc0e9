#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pagelen::feat {

struct SparseEntry {
  std::uint32_t col = 0;
  double value = 0.0;

  bool operator==(const SparseEntry&) const = default;
};

// One row of a sparse matrix: entries sorted by strictly increasing column.
struct SparseVector {
  std::size_t size = 0;  // logical width
  std::vector<SparseEntry> entries;

  void push(std::uint32_t col, double value) {
    if (value != 0.0) entries.push_back({col, value});
  }
};

// Horizontal concatenation with column offsets; total width is the sum of the
// block widths. Throws Error(WidthMismatch) if a block's entries exceed its
// declared width.
SparseVector hstack(std::span<const SparseVector> blocks);

void l1_normalize(SparseVector& row);
void l2_normalize(SparseVector& row);

// Row-sparse feature matrix with an optional dense numeric tail block.
// Sparse entries use columns [0, sparse_cols); the tail occupies
// [sparse_cols, cols) and stores every value explicitly.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t sparse_cols, std::vector<std::string> dense_names);

  void append_row(const SparseVector& sparse_part, std::span<const double> dense_part);

  std::size_t rows() const { return row_ptr_.size() - 1; }
  std::size_t cols() const { return sparse_cols_ + dense_names_.size(); }
  std::size_t sparse_cols() const { return sparse_cols_; }
  std::size_t dense_cols() const { return dense_names_.size(); }
  const std::vector<std::string>& dense_names() const { return dense_names_; }

  std::span<const SparseEntry> row_sparse(std::size_t row) const {
    return {entries_.data() + row_ptr_[row], row_ptr_[row + 1] - row_ptr_[row]};
  }
  std::span<const double> row_dense(std::size_t row) const {
    return {dense_.data() + row * dense_names_.size(), dense_names_.size()};
  }
  std::span<double> row_dense_mutable(std::size_t row) {
    return {dense_.data() + row * dense_names_.size(), dense_names_.size()};
  }

  // Value at any logical column (binary search in the sparse part).
  double value_at(std::size_t row, std::size_t col) const;

  // Visits every stored value of a row: sparse nonzeros, then the full dense
  // tail (tail zeros included; they are explicit values).
  template <typename F>
  void for_each_value(std::size_t row, F&& fn) const {
    for (const auto& e : row_sparse(row)) fn(e.col, e.value);
    const auto dense = row_dense(row);
    for (std::size_t d = 0; d < dense.size(); ++d) {
      fn(static_cast<std::uint32_t>(sparse_cols_ + d), dense[d]);
    }
  }

  double dot_row(std::size_t row, std::span<const double> weights) const;
  double dot_rows(std::size_t row_a, std::size_t row_b) const;

  std::size_t nonzero_count() const { return entries_.size(); }

 private:
  std::size_t sparse_cols_ = 0;
  std::vector<std::string> dense_names_;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<SparseEntry> entries_;
  std::vector<double> dense_;
};

}  // namespace pagelen::feat

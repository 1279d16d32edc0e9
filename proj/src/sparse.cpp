#include "pagelen/sparse.hpp"

#include <algorithm>
#include <cmath>

#include "pagelen/error.hpp"

namespace pagelen::feat {

SparseVector hstack(std::span<const SparseVector> blocks) {
  SparseVector out;
  std::size_t offset = 0;
  for (const auto& block : blocks) {
    for (const auto& e : block.entries) {
      if (e.col >= block.size) {
        throw Error(ErrorCode::WidthMismatch,
                    "entry column " + std::to_string(e.col) + " outside block width " +
                        std::to_string(block.size));
      }
      out.entries.push_back({static_cast<std::uint32_t>(offset + e.col), e.value});
    }
    offset += block.size;
  }
  out.size = offset;
  return out;
}

void l1_normalize(SparseVector& row) {
  double sum = 0.0;
  for (const auto& e : row.entries) sum += std::abs(e.value);
  if (sum == 0.0) return;
  for (auto& e : row.entries) e.value /= sum;
}

void l2_normalize(SparseVector& row) {
  double sq = 0.0;
  for (const auto& e : row.entries) sq += e.value * e.value;
  if (sq == 0.0) return;
  const double norm = std::sqrt(sq);
  for (auto& e : row.entries) e.value /= norm;
}

FeatureMatrix::FeatureMatrix(std::size_t sparse_cols, std::vector<std::string> dense_names)
    : sparse_cols_(sparse_cols), dense_names_(std::move(dense_names)) {}

void FeatureMatrix::append_row(const SparseVector& sparse_part,
                               std::span<const double> dense_part) {
  if (sparse_part.size != sparse_cols_ || dense_part.size() != dense_names_.size()) {
    throw Error(ErrorCode::WidthMismatch,
                "row width " + std::to_string(sparse_part.size) + "+" +
                    std::to_string(dense_part.size()) + " does not match matrix width " +
                    std::to_string(sparse_cols_) + "+" + std::to_string(dense_names_.size()));
  }
  std::uint32_t prev_col = 0;
  bool first = true;
  for (const auto& e : sparse_part.entries) {
    if (e.col >= sparse_cols_ || (!first && e.col <= prev_col)) {
      throw Error(ErrorCode::WidthMismatch, "row entries must have strictly increasing columns");
    }
    prev_col = e.col;
    first = false;
    entries_.push_back(e);
  }
  row_ptr_.push_back(entries_.size());
  dense_.insert(dense_.end(), dense_part.begin(), dense_part.end());
}

double FeatureMatrix::value_at(std::size_t row, std::size_t col) const {
  if (col >= sparse_cols_) {
    return row_dense(row)[col - sparse_cols_];
  }
  const auto entries = row_sparse(row);
  auto it = std::lower_bound(entries.begin(), entries.end(), col,
                             [](const SparseEntry& e, std::size_t c) { return e.col < c; });
  if (it != entries.end() && it->col == col) return it->value;
  return 0.0;
}

double FeatureMatrix::dot_row(std::size_t row, std::span<const double> weights) const {
  double sum = 0.0;
  for (const auto& e : row_sparse(row)) sum += e.value * weights[e.col];
  const auto dense = row_dense(row);
  for (std::size_t d = 0; d < dense.size(); ++d) sum += dense[d] * weights[sparse_cols_ + d];
  return sum;
}

double FeatureMatrix::dot_rows(std::size_t row_a, std::size_t row_b) const {
  const auto a = row_sparse(row_a);
  const auto b = row_sparse(row_b);
  double sum = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].col < b[j].col) {
      ++i;
    } else if (a[i].col > b[j].col) {
      ++j;
    } else {
      sum += a[i].value * b[j].value;
      ++i;
      ++j;
    }
  }
  const auto da = row_dense(row_a);
  const auto db = row_dense(row_b);
  for (std::size_t d = 0; d < da.size(); ++d) sum += da[d] * db[d];
  return sum;
}

}  // namespace pagelen::feat

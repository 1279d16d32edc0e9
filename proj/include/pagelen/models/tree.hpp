#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"

#include "pagelen/models/config.hpp"
#include "pagelen/rng.hpp"
#include "pagelen/sparse.hpp"

namespace pagelen::models {

struct TreeNode {
  std::int32_t left = -1;   // -1: leaf
  std::int32_t right = -1;
  std::uint32_t col = 0;
  double threshold = 0.0;
  double value = 0.0;       // leaf prediction
};

struct RegressionTree {
  std::vector<TreeNode> nodes;

  double predict_row(const feat::FeatureMatrix& x, std::size_t row) const;

  nlohmann::json to_json() const;
  static RegressionTree from_json(const nlohmann::json& j);
};

// Column-major presort of a feature matrix: per column, (value, row) pairs in
// ascending (value, row) order, sparse zeros left implicit. Built once per
// fit and shared across every tree/stage grown on the same matrix.
class ColumnIndex {
 public:
  struct ColEntry {
    double value;
    std::uint32_t row;
  };

  static ColumnIndex build(const feat::FeatureMatrix& x);

  std::size_t cols() const { return columns_.size(); }
  std::size_t rows() const { return rows_; }
  std::span<const ColEntry> column(std::size_t c) const { return columns_[c]; }

 private:
  std::size_t rows_ = 0;
  std::vector<std::vector<ColEntry>> columns_;
};

// Second-order exact greedy growth over (gradient, hessian) row statistics.
// Sparse absences are literal zeros; each node's zero block enters the sorted
// value scan where its sign places it. Split thresholds are midpoints of
// consecutive distinct values; a split is kept only when
//   gain = 1/2 [G_L^2/(H_L+lambda) + G_R^2/(H_R+lambda) - G^2/(H+lambda)] - gamma
// is positive. Leaf weight is -G/(H+lambda).
//
// Squared-error CART is the lambda=0, gamma=0 instance with g = -w*y, h = w:
// leaves are then weighted target means and gain is half the SSE reduction,
// so argmax splits coincide with classic variance-reduction CART.
struct GrowthParams {
  int max_depth = 6;  // -1: unlimited
  int min_samples_leaf = 1;
  double lambda = 0.0;
  double gamma = 0.0;
  MaxFeaturesMode max_features = MaxFeaturesMode::all;
  Rng* rng = nullptr;  // required when max_features != all
};

// grad/hess are per-row sums already folded with any sample multiplicity;
// counts holds the integer multiplicities (0 excludes the row entirely).
// When train_predictions is non-null it receives the fitted leaf value for
// every included row (excluded rows are left untouched).
RegressionTree grow_tree(const ColumnIndex& index, const feat::FeatureMatrix& x,
                         std::span<const double> grad, std::span<const double> hess,
                         std::span<const std::uint32_t> counts, const GrowthParams& params,
                         std::vector<double>* train_predictions = nullptr);

}  // namespace pagelen::models

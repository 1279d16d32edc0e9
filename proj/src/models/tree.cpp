#include "pagelen/models/tree.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "pagelen/error.hpp"

namespace pagelen::models {

using nlohmann::json;

double RegressionTree::predict_row(const feat::FeatureMatrix& x, std::size_t row) const {
  std::int32_t node = 0;
  while (nodes[node].left >= 0) {
    const double v = x.value_at(row, nodes[node].col);
    node = v <= nodes[node].threshold ? nodes[node].left : nodes[node].right;
  }
  return nodes[node].value;
}

json RegressionTree::to_json() const {
  json left = json::array(), right = json::array(), col = json::array();
  json threshold = json::array(), value = json::array();
  for (const auto& n : nodes) {
    left.push_back(n.left);
    right.push_back(n.right);
    col.push_back(n.col);
    threshold.push_back(n.threshold);
    value.push_back(n.value);
  }
  return json{{"left", std::move(left)},
              {"right", std::move(right)},
              {"col", std::move(col)},
              {"threshold", std::move(threshold)},
              {"value", std::move(value)}};
}

RegressionTree RegressionTree::from_json(const json& j) {
  RegressionTree tree;
  const auto& left = j.at("left");
  const auto& right = j.at("right");
  const auto& col = j.at("col");
  const auto& threshold = j.at("threshold");
  const auto& value = j.at("value");
  tree.nodes.resize(left.size());
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    tree.nodes[i] = {left[i].get<std::int32_t>(), right[i].get<std::int32_t>(),
                     col[i].get<std::uint32_t>(), threshold[i].get<double>(),
                     value[i].get<double>()};
  }
  return tree;
}

ColumnIndex ColumnIndex::build(const feat::FeatureMatrix& x) {
  ColumnIndex index;
  index.rows_ = x.rows();
  index.columns_.resize(x.cols());

  std::vector<std::size_t> col_counts(x.cols(), 0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (const auto& e : x.row_sparse(i)) ++col_counts[e.col];
  }
  for (std::size_t d = 0; d < x.dense_cols(); ++d) {
    col_counts[x.sparse_cols() + d] = x.rows();
  }
  for (std::size_t c = 0; c < x.cols(); ++c) index.columns_[c].reserve(col_counts[c]);

  for (std::size_t i = 0; i < x.rows(); ++i) {
    const auto r = static_cast<std::uint32_t>(i);
    for (const auto& e : x.row_sparse(i)) index.columns_[e.col].push_back({e.value, r});
    const auto dense = x.row_dense(i);
    for (std::size_t d = 0; d < dense.size(); ++d) {
      index.columns_[x.sparse_cols() + d].push_back({dense[d], r});
    }
  }
  for (auto& column : index.columns_) {
    std::sort(column.begin(), column.end(), [](const ColEntry& a, const ColEntry& b) {
      return a.value != b.value ? a.value < b.value : a.row < b.row;
    });
  }
  return index;
}

namespace {

struct NodeStats {
  double g = 0.0;
  double h = 0.0;
  std::uint64_t count = 0;

  void add(double gg, double hh, std::uint64_t c) {
    g += gg;
    h += hh;
    count += c;
  }
};

struct LevelNode {
  std::int32_t node_id = 0;
  NodeStats total;
};

struct BestSplit {
  double gain = 0.0;
  std::int32_t col = -1;
  double threshold = 0.0;
};

struct BufferedEntry {
  double value;
  double g;
  double h;
  std::uint32_t count;
};

// Midpoint of two consecutive distinct values, nudged back to the left value
// if floating-point rounding would let the right value pass a <= comparison.
double split_threshold(double lo, double hi) {
  double t = lo + (hi - lo) / 2.0;
  if (!(lo <= t && t < hi)) t = lo;
  return t;
}

double split_gain(const NodeStats& left, const NodeStats& right, const NodeStats& total,
                  double lambda, double gamma) {
  const double hl = left.h + lambda;
  const double hr = right.h + lambda;
  const double ht = total.h + lambda;
  if (hl <= 0.0 || hr <= 0.0 || ht <= 0.0) return -1.0;
  return 0.5 * (left.g * left.g / hl + right.g * right.g / hr - total.g * total.g / ht) - gamma;
}

std::size_t sampled_feature_count(MaxFeaturesMode mode, std::size_t n_features) {
  switch (mode) {
    case MaxFeaturesMode::all:
      return n_features;
    case MaxFeaturesMode::sqrt_mode:
      return std::max<std::size_t>(
          1, static_cast<std::size_t>(std::sqrt(static_cast<double>(n_features))));
    case MaxFeaturesMode::log2_mode:
      return std::max<std::size_t>(
          1, static_cast<std::size_t>(std::log2(static_cast<double>(n_features))));
  }
  return n_features;
}

// Floyd's sampling of k distinct column ids from [0, n).
std::unordered_set<std::uint32_t> sample_columns(Rng& rng, std::size_t k, std::size_t n) {
  std::unordered_set<std::uint32_t> chosen;
  chosen.reserve(k * 2);
  for (std::size_t j = n - k; j < n; ++j) {
    const auto t = static_cast<std::uint32_t>(rng.next_below(j + 1));
    if (!chosen.insert(t).second) chosen.insert(static_cast<std::uint32_t>(j));
  }
  return chosen;
}

}  // namespace

RegressionTree grow_tree(const ColumnIndex& index, const feat::FeatureMatrix& x,
                         std::span<const double> grad, std::span<const double> hess,
                         std::span<const std::uint32_t> counts, const GrowthParams& params,
                         std::vector<double>* train_predictions) {
  const std::size_t n_rows = index.rows();
  const std::size_t n_cols = index.cols();
  if (params.max_features != MaxFeaturesMode::all && params.rng == nullptr) {
    throw Error(ErrorCode::InvalidConfig, "feature subsampling requires an rng");
  }

  RegressionTree tree;
  // slot of each row within the current level's node list; -1 = excluded or
  // already finalized in a leaf
  std::vector<std::int32_t> slot_of(n_rows, -1);

  NodeStats root;
  for (std::size_t i = 0; i < n_rows; ++i) {
    if (counts[i] > 0) {
      slot_of[i] = 0;
      root.add(grad[i], hess[i], counts[i]);
    }
  }
  tree.nodes.push_back(TreeNode{});
  tree.nodes[0].value = root.h + params.lambda > 0.0 ? -root.g / (root.h + params.lambda) : 0.0;

  std::vector<LevelNode> level{LevelNode{0, root}};
  int depth = 0;

  std::vector<std::vector<BufferedEntry>> buffers;
  std::vector<std::int32_t> touched;

  while (!level.empty() && (params.max_depth < 0 || depth < params.max_depth)) {
    const std::size_t n_nodes = level.size();
    if (buffers.size() < n_nodes) buffers.resize(n_nodes);

    // per-node sampled feature sets (empty set = all features allowed)
    std::vector<std::unordered_set<std::uint32_t>> sampled(n_nodes);
    if (params.max_features != MaxFeaturesMode::all) {
      const std::size_t k = sampled_feature_count(params.max_features, n_cols);
      if (k < n_cols) {
        for (std::size_t s = 0; s < n_nodes; ++s) {
          sampled[s] = sample_columns(*params.rng, k, n_cols);
        }
      }
    }

    std::vector<BestSplit> best(n_nodes);

    for (std::size_t c = 0; c < n_cols; ++c) {
      const auto column = index.column(c);
      if (column.empty()) continue;

      touched.clear();
      for (const auto& entry : column) {
        const std::int32_t s = slot_of[entry.row];
        if (s < 0) continue;
        if (!sampled[s].empty() && !sampled[s].contains(static_cast<std::uint32_t>(c))) continue;
        if (buffers[s].empty()) touched.push_back(s);
        buffers[s].push_back({entry.value, grad[entry.row], hess[entry.row], counts[entry.row]});
      }

      for (const std::int32_t s : touched) {
        auto& buf = buffers[s];
        const NodeStats total = level[s].total;

        NodeStats nonzero;
        for (const auto& b : buf) nonzero.add(b.g, b.h, b.count);
        NodeStats zero;
        zero.g = total.g - nonzero.g;
        zero.h = total.h - nonzero.h;
        zero.count = total.count - nonzero.count;
        bool zero_pending = zero.count > 0;

        // walk distinct values in ascending order, zero block included
        std::size_t i = 0;
        NodeStats running;
        double prev_value = 0.0;
        NodeStats prev_group;
        bool have_prev = false;

        auto next_group = [&](double& value_out, NodeStats& stats_out) -> bool {
          if (zero_pending && (i == buf.size() || buf[i].value > 0.0)) {
            zero_pending = false;
            value_out = 0.0;
            stats_out = zero;
            return true;
          }
          if (i == buf.size()) return false;
          const double v = buf[i].value;
          NodeStats s2;
          while (i < buf.size() && buf[i].value == v) {
            s2.add(buf[i].g, buf[i].h, buf[i].count);
            ++i;
          }
          if (zero_pending && v == 0.0) {  // explicit zeros merge with the block
            s2.add(zero.g, zero.h, zero.count);
            zero_pending = false;
          }
          value_out = v;
          stats_out = s2;
          return true;
        };

        double gv;
        NodeStats gs;
        while (next_group(gv, gs)) {
          if (have_prev) {
            running.add(prev_group.g, prev_group.h, prev_group.count);
            NodeStats right;
            right.g = total.g - running.g;
            right.h = total.h - running.h;
            right.count = total.count - running.count;
            if (running.count >= static_cast<std::uint64_t>(params.min_samples_leaf) &&
                right.count >= static_cast<std::uint64_t>(params.min_samples_leaf)) {
              const double gain = split_gain(running, right, total, params.lambda, params.gamma);
              if (gain > best[s].gain) {
                best[s] = {gain, static_cast<std::int32_t>(c), split_threshold(prev_value, gv)};
              }
            }
          }
          prev_value = gv;
          prev_group = gs;
          have_prev = true;
        }
        buf.clear();
      }
    }

    // materialize the chosen splits and build the next level
    std::vector<LevelNode> next_level;
    std::vector<std::int32_t> left_slot(n_nodes, -1), right_slot(n_nodes, -1);
    for (std::size_t s = 0; s < n_nodes; ++s) {
      if (best[s].col < 0 || best[s].gain <= 0.0) continue;
      TreeNode& node = tree.nodes[level[s].node_id];
      node.col = static_cast<std::uint32_t>(best[s].col);
      node.threshold = best[s].threshold;
      node.left = static_cast<std::int32_t>(tree.nodes.size());
      node.right = node.left + 1;
      tree.nodes.push_back(TreeNode{});
      tree.nodes.push_back(TreeNode{});
      left_slot[s] = static_cast<std::int32_t>(next_level.size());
      next_level.push_back({node.left, NodeStats{}});
      right_slot[s] = static_cast<std::int32_t>(next_level.size());
      next_level.push_back({node.right, NodeStats{}});
    }

    if (next_level.empty()) break;

    for (std::size_t i = 0; i < n_rows; ++i) {
      const std::int32_t s = slot_of[i];
      if (s < 0) continue;
      if (left_slot[s] < 0) {
        slot_of[i] = -1;  // this node became a leaf
        if (train_predictions) (*train_predictions)[i] = tree.nodes[level[s].node_id].value;
        continue;
      }
      const TreeNode& node = tree.nodes[level[s].node_id];
      const bool go_left = x.value_at(i, node.col) <= node.threshold;
      const std::int32_t child_slot = go_left ? left_slot[s] : right_slot[s];
      slot_of[i] = child_slot;
      next_level[child_slot].total.add(grad[i], hess[i], counts[i]);
    }

    for (auto& child : next_level) {
      tree.nodes[child.node_id].value =
          child.total.h + params.lambda > 0.0 ? -child.total.g / (child.total.h + params.lambda)
                                              : 0.0;
    }

    level = std::move(next_level);
    ++depth;
  }

  // rows still assigned to a node belong to leaves at the depth cutoff
  if (train_predictions) {
    for (std::size_t i = 0; i < n_rows; ++i) {
      const std::int32_t s = slot_of[i];
      if (s >= 0) (*train_predictions)[i] = tree.nodes[level[s].node_id].value;
    }
  }
  return tree;
}

}  // namespace pagelen::models

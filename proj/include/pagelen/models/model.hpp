#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "pagelen/models/config.hpp"
#include "pagelen/models/tree.hpp"
#include "pagelen/sparse.hpp"

namespace pagelen::models {

struct LinearParams {
  std::vector<double> weights;  // over the full trained width
  double intercept = 0.0;
};

struct SvrParams {
  // support vectors flattened over the full width (dense tail folded in)
  std::vector<feat::SparseVector> support_vectors;
  std::vector<double> dual_coef;  // beta = alpha - alpha*, one per support vector
  double bias = 0.0;
  double kernel_gamma = 1.0;  // resolved value used at fit time
};

struct MlpParams {
  int hidden_size = 0;
  std::vector<double> w1;  // width x hidden, row-major by feature
  std::vector<double> b1;  // hidden
  std::vector<double> w2;  // hidden
  double b2 = 0.0;
};

struct TreeParams {
  RegressionTree tree;
};

struct ForestParams {
  std::vector<RegressionTree> trees;
};

struct BoostParams {
  double base_score = 0.0;
  double shrinkage = 1.0;  // learning_rate / eta
  std::vector<RegressionTree> trees;
};

using LearnedParams =
    std::variant<LinearParams, SvrParams, MlpParams, TreeParams, ForestParams, BoostParams>;

struct TrainingInfo {
  std::uint64_t seed = 0;
  std::int64_t iterations = 0;
  bool converged = true;
  double final_kkt_violation = 0.0;        // svr
  std::optional<double> oob_r2;            // rf with oob_score
  std::vector<double> training_curve;      // mlp per-epoch loss / boosting per-stage mse
};

// Uniform train/predict surface over the seven regressors.
class FittedModel {
 public:
  FittedModel() = default;
  FittedModel(ModelConfig config, std::size_t trained_width, LearnedParams params,
              TrainingInfo info)
      : config_(std::move(config)),
        trained_width_(trained_width),
        params_(std::move(params)),
        info_(std::move(info)) {}

  // Throws Error(WidthMismatch) when x.cols() != trained_width, naming both.
  std::vector<double> predict(const feat::FeatureMatrix& x) const;

  Algorithm algorithm() const { return config_.algorithm; }
  const ModelConfig& config() const { return config_; }
  std::size_t trained_width() const { return trained_width_; }
  const LearnedParams& params() const { return params_; }
  const TrainingInfo& info() const { return info_; }

  nlohmann::json to_json() const;
  static FittedModel from_json(const nlohmann::json& j);

 private:
  ModelConfig config_;
  std::size_t trained_width_ = 0;
  LearnedParams params_;
  TrainingInfo info_;
};

FittedModel fit_linear_regression(const feat::FeatureMatrix& x, std::span<const double> y,
                                  const LinearConfig& cfg);
FittedModel fit_svr(const feat::FeatureMatrix& x, std::span<const double> y,
                    const SvrConfig& cfg);
FittedModel fit_mlp(const feat::FeatureMatrix& x, std::span<const double> y,
                    const MlpConfig& cfg);
FittedModel fit_tree(const feat::FeatureMatrix& x, std::span<const double> y,
                     const TreeConfig& cfg);
FittedModel fit_random_forest(const feat::FeatureMatrix& x, std::span<const double> y,
                              const ForestConfig& cfg, int threads = 1);
FittedModel fit_gradient_boosting(const feat::FeatureMatrix& x, std::span<const double> y,
                                  const GradientBoostingConfig& cfg);
FittedModel fit_xgb(const feat::FeatureMatrix& x, std::span<const double> y,
                    const XgbConfig& cfg);

// Dispatch on cfg.algorithm.
FittedModel fit_model(const feat::FeatureMatrix& x, std::span<const double> y,
                      const ModelConfig& cfg, int threads = 1);

}  // namespace pagelen::models

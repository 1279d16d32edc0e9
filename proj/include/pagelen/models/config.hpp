#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "json.hpp"

namespace pagelen::models {

enum class Algorithm { lr, svr, mlp, tree, rf, gb, xgb };

const char* algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name);

enum class KernelKind { linear, poly };
enum class GammaMode { automatic, fixed };
enum class MaxFeaturesMode { all, sqrt_mode, log2_mode };

const char* max_features_name(MaxFeaturesMode m);
MaxFeaturesMode max_features_from_name(const std::string& name);

// Defaults are the grid-search optima where the model appears in the tuned
// configuration table; everything else uses conventional library defaults.

struct LinearConfig {
  bool fit_intercept = true;
  double ridge_eps = 1e-8;  // conditioning ridge; 0 demands a full-rank system
};

struct SvrConfig {
  double c = 10.0;
  double epsilon = 0.1;
  KernelKind kernel = KernelKind::poly;
  int degree = 3;
  GammaMode gamma_mode = GammaMode::automatic;
  double gamma_value = 1.0;  // used when gamma_mode == fixed
  double tolerance = 1e-3;
  std::int64_t max_iter = 1'000'000;
  std::size_t row_cap = 4000;  // dense kernel guard
};

struct MlpConfig {
  int hidden_size = 100;
  double alpha = 5e-5;  // l2 penalty
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  int batch_size = 32;
  int epochs = 5;
  std::uint64_t seed = 0;
};

struct TreeConfig {
  int max_depth = 6;  // -1: unlimited
  int min_samples_leaf = 1;
};

struct ForestConfig {
  int n_estimators = 60;
  MaxFeaturesMode max_features = MaxFeaturesMode::all;
  bool bootstrap = true;
  bool oob_score = true;
  std::uint64_t seed = 0;
};

struct GradientBoostingConfig {
  int n_estimators = 100;
  double learning_rate = 0.1;
  int max_depth = 6;
  MaxFeaturesMode max_features = MaxFeaturesMode::all;
  std::uint64_t seed = 0;  // feature subsampling only
};

struct XgbConfig {
  int n_estimators = 70;
  double eta = 0.008;
  double gamma = 0.15;  // minimum split loss
  int max_depth = 6;
  double lambda = 1.0;  // l2 leaf regularization
};

using AlgorithmConfig = std::variant<LinearConfig, SvrConfig, MlpConfig, TreeConfig,
                                     ForestConfig, GradientBoostingConfig, XgbConfig>;

struct ModelConfig {
  Algorithm algorithm = Algorithm::xgb;
  AlgorithmConfig params = XgbConfig{};

  static ModelConfig defaults(Algorithm a);

  // Grid-search override hook: sets one named hyperparameter from a JSON
  // value (e.g. "C", "eta", "n_estimators"). Throws Error(InvalidConfig) for
  // names the algorithm does not have.
  void set_param(const std::string& name, const nlohmann::json& value);

  nlohmann::json to_json() const;
  static ModelConfig from_json(const nlohmann::json& j);
};

}  // namespace pagelen::models

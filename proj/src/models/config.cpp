#include "pagelen/models/config.hpp"

#include "pagelen/error.hpp"

namespace pagelen::models {

using nlohmann::json;

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::lr: return "lr";
    case Algorithm::svr: return "svr";
    case Algorithm::mlp: return "mlp";
    case Algorithm::tree: return "tree";
    case Algorithm::rf: return "rf";
    case Algorithm::gb: return "gb";
    case Algorithm::xgb: return "xgb";
  }
  return "unknown";
}

Algorithm algorithm_from_name(const std::string& name) {
  if (name == "lr") return Algorithm::lr;
  if (name == "svr") return Algorithm::svr;
  if (name == "mlp") return Algorithm::mlp;
  if (name == "tree") return Algorithm::tree;
  if (name == "rf") return Algorithm::rf;
  if (name == "gb") return Algorithm::gb;
  if (name == "xgb") return Algorithm::xgb;
  throw Error(ErrorCode::InvalidConfig, "unknown algorithm: " + name);
}

const char* max_features_name(MaxFeaturesMode m) {
  switch (m) {
    case MaxFeaturesMode::all: return "auto";
    case MaxFeaturesMode::sqrt_mode: return "sqrt";
    case MaxFeaturesMode::log2_mode: return "log2";
  }
  return "unknown";
}

MaxFeaturesMode max_features_from_name(const std::string& name) {
  // "auto" means every feature, the regression convention
  if (name == "auto" || name == "all") return MaxFeaturesMode::all;
  if (name == "sqrt") return MaxFeaturesMode::sqrt_mode;
  if (name == "log2") return MaxFeaturesMode::log2_mode;
  throw Error(ErrorCode::InvalidConfig, "unknown max_features mode: " + name);
}

ModelConfig ModelConfig::defaults(Algorithm a) {
  ModelConfig cfg;
  cfg.algorithm = a;
  switch (a) {
    case Algorithm::lr: cfg.params = LinearConfig{}; break;
    case Algorithm::svr: cfg.params = SvrConfig{}; break;
    case Algorithm::mlp: cfg.params = MlpConfig{}; break;
    case Algorithm::tree: cfg.params = TreeConfig{}; break;
    case Algorithm::rf: cfg.params = ForestConfig{}; break;
    case Algorithm::gb: cfg.params = GradientBoostingConfig{}; break;
    case Algorithm::xgb: cfg.params = XgbConfig{}; break;
  }
  return cfg;
}

namespace {

KernelKind kernel_from_name(const std::string& name) {
  if (name == "linear") return KernelKind::linear;
  if (name == "poly") return KernelKind::poly;
  throw Error(ErrorCode::InvalidConfig, "unknown kernel: " + name);
}

[[noreturn]] void unknown_param(Algorithm a, const std::string& name) {
  throw Error(ErrorCode::InvalidConfig, std::string("algorithm ") + algorithm_name(a) +
                                            " has no hyperparameter named " + name);
}

}  // namespace

void ModelConfig::set_param(const std::string& name, const json& value) {
  std::visit(
      [&](auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, LinearConfig>) {
          if (name == "fit_intercept") p.fit_intercept = value.get<bool>();
          else if (name == "ridge_eps") p.ridge_eps = value.get<double>();
          else unknown_param(algorithm, name);
        } else if constexpr (std::is_same_v<T, SvrConfig>) {
          if (name == "C") p.c = value.get<double>();
          else if (name == "epsilon") p.epsilon = value.get<double>();
          else if (name == "kernel") p.kernel = kernel_from_name(value.get<std::string>());
          else if (name == "degree") p.degree = value.get<int>();
          else if (name == "gamma") {
            if (value.is_string()) {
              if (value.get<std::string>() != "auto") {
                throw Error(ErrorCode::InvalidConfig, "gamma must be \"auto\" or a number");
              }
              p.gamma_mode = GammaMode::automatic;
            } else {
              p.gamma_mode = GammaMode::fixed;
              p.gamma_value = value.get<double>();
            }
          } else if (name == "tolerance") p.tolerance = value.get<double>();
          else if (name == "max_iter") p.max_iter = value.get<std::int64_t>();
          else if (name == "row_cap") p.row_cap = value.get<std::size_t>();
          else unknown_param(algorithm, name);
        } else if constexpr (std::is_same_v<T, MlpConfig>) {
          if (name == "hidden_size") p.hidden_size = value.get<int>();
          else if (name == "alpha") p.alpha = value.get<double>();
          else if (name == "learning_rate") p.learning_rate = value.get<double>();
          else if (name == "beta1") p.beta1 = value.get<double>();
          else if (name == "beta2") p.beta2 = value.get<double>();
          else if (name == "batch_size") p.batch_size = value.get<int>();
          else if (name == "epochs") p.epochs = value.get<int>();
          else if (name == "seed") p.seed = value.get<std::uint64_t>();
          else unknown_param(algorithm, name);
        } else if constexpr (std::is_same_v<T, TreeConfig>) {
          if (name == "max_depth") p.max_depth = value.get<int>();
          else if (name == "min_samples_leaf") p.min_samples_leaf = value.get<int>();
          else unknown_param(algorithm, name);
        } else if constexpr (std::is_same_v<T, ForestConfig>) {
          if (name == "n_estimators") p.n_estimators = value.get<int>();
          else if (name == "max_features") p.max_features = max_features_from_name(value.get<std::string>());
          else if (name == "bootstrap") p.bootstrap = value.get<bool>();
          else if (name == "oob_score") p.oob_score = value.get<bool>();
          else if (name == "seed") p.seed = value.get<std::uint64_t>();
          else unknown_param(algorithm, name);
        } else if constexpr (std::is_same_v<T, GradientBoostingConfig>) {
          if (name == "n_estimators") p.n_estimators = value.get<int>();
          else if (name == "learning_rate") p.learning_rate = value.get<double>();
          else if (name == "max_depth") p.max_depth = value.get<int>();
          else if (name == "max_features") p.max_features = max_features_from_name(value.get<std::string>());
          else if (name == "seed") p.seed = value.get<std::uint64_t>();
          else unknown_param(algorithm, name);
        } else if constexpr (std::is_same_v<T, XgbConfig>) {
          if (name == "n_estimators") p.n_estimators = value.get<int>();
          else if (name == "eta") p.eta = value.get<double>();
          else if (name == "gamma") p.gamma = value.get<double>();
          else if (name == "max_depth") p.max_depth = value.get<int>();
          else if (name == "lambda") p.lambda = value.get<double>();
          else unknown_param(algorithm, name);
        }
      },
      params);
}

json ModelConfig::to_json() const {
  json j;
  j["algorithm"] = algorithm_name(algorithm);
  json p;
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, LinearConfig>) {
          p["fit_intercept"] = c.fit_intercept;
          p["ridge_eps"] = c.ridge_eps;
        } else if constexpr (std::is_same_v<T, SvrConfig>) {
          p["C"] = c.c;
          p["epsilon"] = c.epsilon;
          p["kernel"] = c.kernel == KernelKind::linear ? "linear" : "poly";
          p["degree"] = c.degree;
          if (c.gamma_mode == GammaMode::automatic) p["gamma"] = "auto";
          else p["gamma"] = c.gamma_value;
          p["tolerance"] = c.tolerance;
          p["max_iter"] = c.max_iter;
          p["row_cap"] = c.row_cap;
        } else if constexpr (std::is_same_v<T, MlpConfig>) {
          p["hidden_size"] = c.hidden_size;
          p["alpha"] = c.alpha;
          p["learning_rate"] = c.learning_rate;
          p["beta1"] = c.beta1;
          p["beta2"] = c.beta2;
          p["batch_size"] = c.batch_size;
          p["epochs"] = c.epochs;
          p["seed"] = c.seed;
        } else if constexpr (std::is_same_v<T, TreeConfig>) {
          p["max_depth"] = c.max_depth;
          p["min_samples_leaf"] = c.min_samples_leaf;
        } else if constexpr (std::is_same_v<T, ForestConfig>) {
          p["n_estimators"] = c.n_estimators;
          p["max_features"] = max_features_name(c.max_features);
          p["bootstrap"] = c.bootstrap;
          p["oob_score"] = c.oob_score;
          p["seed"] = c.seed;
        } else if constexpr (std::is_same_v<T, GradientBoostingConfig>) {
          p["n_estimators"] = c.n_estimators;
          p["learning_rate"] = c.learning_rate;
          p["max_depth"] = c.max_depth;
          p["max_features"] = max_features_name(c.max_features);
          p["seed"] = c.seed;
        } else if constexpr (std::is_same_v<T, XgbConfig>) {
          p["n_estimators"] = c.n_estimators;
          p["eta"] = c.eta;
          p["gamma"] = c.gamma;
          p["max_depth"] = c.max_depth;
          p["lambda"] = c.lambda;
        }
      },
      params);
  j["params"] = std::move(p);
  return j;
}

ModelConfig ModelConfig::from_json(const json& j) {
  ModelConfig cfg = defaults(algorithm_from_name(j.at("algorithm").get<std::string>()));
  if (j.contains("params")) {
    for (const auto& [key, value] : j["params"].items()) {
      cfg.set_param(key, value);
    }
  }
  return cfg;
}

}  // namespace pagelen::models

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "pagelen/corpus.hpp"
#include "pagelen/sparse.hpp"
#include "pagelen/vectorizer.hpp"

namespace pagelen::feat {

enum class FeatureMode { joint, stacked };
enum class ScalerKind { none, minmax, maxabs };

const char* feature_mode_name(FeatureMode m);
const char* scaler_kind_name(ScalerKind s);
FeatureMode feature_mode_from_name(const std::string& name);
ScalerKind scaler_kind_from_name(const std::string& name);

// Stacked-mode field blocks appear in this fixed order.
enum StackedField { kTitle = 0, kAbstract = 1, kKeywords = 2, kVenue = 3 };
constexpr std::size_t kStackedFieldCount = 4;

struct FeatureConfig {
  FeatureMode mode = FeatureMode::stacked;
  VectorizerParams joint_params;                       // joint mode
  std::array<VectorizerParams, kStackedFieldCount> field_params{};  // stacked mode
  bool include_numeric = true;   // year, n_citation
  bool include_stats = false;    // 4 statistical columns
  ScalerKind scaler = ScalerKind::none;

  void validate() const;

  nlohmann::json to_json() const;
  static FeatureConfig from_json(const nlohmann::json& j);

  // Stacked tf-idf over all four fields with shared params, numeric tail on.
  static FeatureConfig stacked_tfidf(const VectorizerParams& shared);
  static FeatureConfig joint(const VectorizerParams& params);
};

// Train-fitted column ranges for the dense tail.
struct ScalerModel {
  ScalerKind kind = ScalerKind::none;
  std::vector<double> col_min;   // minmax
  std::vector<double> col_max;   // minmax
  std::vector<double> col_maxabs;

  static ScalerModel fit(ScalerKind kind, const FeatureMatrix& matrix);
  void apply(FeatureMatrix& matrix) const;
  // Standalone column transform used by tests and by apply().
  double transform_value(std::size_t dense_col, double value) const;

  nlohmann::json to_json() const;
  static ScalerModel from_json(const nlohmann::json& j);
};

// Fitted feature extraction state: config + vectorizers + scaler. Vectorizers
// are fitted on the training split only and reused verbatim for val/test.
class FeaturePipeline {
 public:
  FeaturePipeline() = default;

  static FeaturePipeline fit(const std::vector<corpus::PaperRecord>& train_records,
                             const FeatureConfig& config);

  FeatureMatrix transform(const std::vector<corpus::PaperRecord>& records) const;

  std::size_t width() const;
  const FeatureConfig& config() const { return config_; }
  const VectorizerModel& field_model(StackedField f) const { return field_models_[f]; }
  const VectorizerModel& joint_model() const { return joint_model_; }
  bool fitted() const { return fitted_; }

  nlohmann::json to_json() const;
  static FeaturePipeline from_json(const nlohmann::json& j);

 private:
  FeatureConfig config_;
  bool fitted_ = false;
  VectorizerModel joint_model_;
  std::array<VectorizerModel, kStackedFieldCount> field_models_;
  ScalerModel scaler_;

  std::vector<std::string> dense_column_names() const;
  std::vector<double> dense_tail(const corpus::PaperRecord& record) const;
};

// Field text extraction shared by fit and transform.
std::string joint_text(const corpus::PaperRecord& record);
std::string stacked_field_text(const corpus::PaperRecord& record, StackedField field);

std::vector<double> extract_targets(const std::vector<corpus::PaperRecord>& records);

}  // namespace pagelen::feat

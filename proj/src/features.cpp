#include "pagelen/features.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pagelen/error.hpp"

namespace pagelen::feat {

using nlohmann::json;

const char* feature_mode_name(FeatureMode m) {
  return m == FeatureMode::joint ? "joint" : "stacked";
}

const char* scaler_kind_name(ScalerKind s) {
  switch (s) {
    case ScalerKind::none: return "none";
    case ScalerKind::minmax: return "minmax";
    case ScalerKind::maxabs: return "maxabs";
  }
  return "unknown";
}

FeatureMode feature_mode_from_name(const std::string& name) {
  if (name == "joint") return FeatureMode::joint;
  if (name == "stacked") return FeatureMode::stacked;
  throw Error(ErrorCode::InvalidConfig, "unknown feature mode: " + name);
}

ScalerKind scaler_kind_from_name(const std::string& name) {
  if (name == "none") return ScalerKind::none;
  if (name == "minmax") return ScalerKind::minmax;
  if (name == "maxabs") return ScalerKind::maxabs;
  throw Error(ErrorCode::InvalidConfig, "unknown scaler: " + name);
}

void FeatureConfig::validate() const {
  if (mode == FeatureMode::joint) {
    joint_params.validate();
  } else {
    for (const auto& p : field_params) p.validate();
  }
}

json FeatureConfig::to_json() const {
  json j;
  j["mode"] = feature_mode_name(mode);
  if (mode == FeatureMode::joint) {
    j["vectorizer"] = joint_params.to_json();
  } else {
    j["title"] = field_params[kTitle].to_json();
    j["abstract"] = field_params[kAbstract].to_json();
    j["keywords"] = field_params[kKeywords].to_json();
    j["venue"] = field_params[kVenue].to_json();
  }
  j["include_numeric"] = include_numeric;
  j["include_stats"] = include_stats;
  j["scaler"] = scaler_kind_name(scaler);
  return j;
}

FeatureConfig FeatureConfig::from_json(const json& j) {
  FeatureConfig c;
  c.mode = feature_mode_from_name(j.at("mode").get<std::string>());
  if (c.mode == FeatureMode::joint) {
    c.joint_params = VectorizerParams::from_json(j.at("vectorizer"));
  } else if (j.contains("vectorizer")) {
    // shared params for all four fields
    const auto shared = VectorizerParams::from_json(j.at("vectorizer"));
    c.field_params.fill(shared);
  } else {
    c.field_params[kTitle] = VectorizerParams::from_json(j.at("title"));
    c.field_params[kAbstract] = VectorizerParams::from_json(j.at("abstract"));
    c.field_params[kKeywords] = VectorizerParams::from_json(j.at("keywords"));
    c.field_params[kVenue] = VectorizerParams::from_json(j.at("venue"));
  }
  if (j.contains("include_numeric")) c.include_numeric = j["include_numeric"].get<bool>();
  if (j.contains("include_stats")) c.include_stats = j["include_stats"].get<bool>();
  if (j.contains("scaler")) c.scaler = scaler_kind_from_name(j["scaler"].get<std::string>());
  c.validate();
  return c;
}

FeatureConfig FeatureConfig::stacked_tfidf(const VectorizerParams& shared) {
  FeatureConfig c;
  c.mode = FeatureMode::stacked;
  c.field_params.fill(shared);
  c.include_numeric = true;
  c.include_stats = false;
  return c;
}

FeatureConfig FeatureConfig::joint(const VectorizerParams& params) {
  FeatureConfig c;
  c.mode = FeatureMode::joint;
  c.joint_params = params;
  c.include_numeric = false;
  c.include_stats = false;
  return c;
}

std::string joint_text(const corpus::PaperRecord& record) {
  std::string text = record.title;
  text.push_back(' ');
  text += record.abstract_text;
  for (const auto& kw : record.keywords) {
    text.push_back(' ');
    text += kw;
  }
  return text;
}

std::string stacked_field_text(const corpus::PaperRecord& record, StackedField field) {
  switch (field) {
    case kTitle: return record.title;
    case kAbstract: return record.abstract_text;
    case kKeywords: {
      std::string joined;
      for (const auto& kw : record.keywords) {
        if (!joined.empty()) joined.push_back(' ');
        joined += kw;
      }
      return joined;
    }
    case kVenue: return record.venue.value_or("");
  }
  return {};
}

std::vector<double> extract_targets(const std::vector<corpus::PaperRecord>& records) {
  std::vector<double> y;
  y.reserve(records.size());
  for (const auto& r : records) y.push_back(static_cast<double>(r.length));
  return y;
}

ScalerModel ScalerModel::fit(ScalerKind kind, const FeatureMatrix& matrix) {
  ScalerModel model;
  model.kind = kind;
  const std::size_t d = matrix.dense_cols();
  if (kind == ScalerKind::none || d == 0) return model;

  model.col_min.assign(d, std::numeric_limits<double>::infinity());
  model.col_max.assign(d, -std::numeric_limits<double>::infinity());
  model.col_maxabs.assign(d, 0.0);
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    const auto dense = matrix.row_dense(i);
    for (std::size_t c = 0; c < d; ++c) {
      model.col_min[c] = std::min(model.col_min[c], dense[c]);
      model.col_max[c] = std::max(model.col_max[c], dense[c]);
      model.col_maxabs[c] = std::max(model.col_maxabs[c], std::abs(dense[c]));
    }
  }
  if (matrix.rows() == 0) {
    model.col_min.assign(d, 0.0);
    model.col_max.assign(d, 0.0);
  }
  return model;
}

double ScalerModel::transform_value(std::size_t dense_col, double value) const {
  switch (kind) {
    case ScalerKind::none:
      return value;
    case ScalerKind::minmax: {
      const double lo = col_min[dense_col];
      const double hi = col_max[dense_col];
      if (hi == lo) return 0.0;  // constant column
      return (value - lo) / (hi - lo);
    }
    case ScalerKind::maxabs: {
      const double m = col_maxabs[dense_col];
      if (m == 0.0) return value;  // all-zero column stays zero
      return value / m;
    }
  }
  return value;
}

void ScalerModel::apply(FeatureMatrix& matrix) const {
  if (kind == ScalerKind::none) return;
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    auto dense = matrix.row_dense_mutable(i);
    for (std::size_t c = 0; c < dense.size(); ++c) {
      dense[c] = transform_value(c, dense[c]);
    }
  }
}

json ScalerModel::to_json() const {
  json j;
  j["kind"] = scaler_kind_name(kind);
  j["col_min"] = col_min;
  j["col_max"] = col_max;
  j["col_maxabs"] = col_maxabs;
  return j;
}

ScalerModel ScalerModel::from_json(const json& j) {
  ScalerModel m;
  m.kind = scaler_kind_from_name(j.at("kind").get<std::string>());
  m.col_min = j.at("col_min").get<std::vector<double>>();
  m.col_max = j.at("col_max").get<std::vector<double>>();
  m.col_maxabs = j.at("col_maxabs").get<std::vector<double>>();
  return m;
}

std::vector<std::string> FeaturePipeline::dense_column_names() const {
  std::vector<std::string> names;
  if (config_.include_numeric) {
    names.push_back("year");
    names.push_back("n_citation");
  }
  if (config_.include_stats) {
    names.push_back("title_tokens");
    names.push_back("abstract_tokens");
    names.push_back("keyword_count");
    names.push_back("capitalized_words");
  }
  return names;
}

std::vector<double> FeaturePipeline::dense_tail(const corpus::PaperRecord& record) const {
  std::vector<double> tail;
  if (config_.include_numeric) {
    tail.push_back(static_cast<double>(record.year));
    tail.push_back(static_cast<double>(record.n_citation.value_or(0)));
  }
  if (config_.include_stats) {
    const textprep::Tokenizer tok;
    tail.push_back(static_cast<double>(tok.token_count(record.title)));
    tail.push_back(static_cast<double>(tok.token_count(record.abstract_text)));
    tail.push_back(static_cast<double>(record.keywords.size()));
    // counted on raw text; normalization destroys case
    tail.push_back(static_cast<double>(
        textprep::capitalized_word_count(record.title + " " + record.abstract_text)));
  }
  return tail;
}

FeaturePipeline FeaturePipeline::fit(const std::vector<corpus::PaperRecord>& train_records,
                                     const FeatureConfig& config) {
  config.validate();
  if (train_records.empty()) {
    throw Error(ErrorCode::EmptyCorpus, "cannot fit a feature pipeline on zero records");
  }

  FeaturePipeline pipe;
  pipe.config_ = config;

  if (config.mode == FeatureMode::joint) {
    std::vector<std::vector<std::string>> docs;
    docs.reserve(train_records.size());
    for (const auto& rec : train_records) {
      docs.push_back(textprep::tokenize(textprep::normalize(joint_text(rec))));
    }
    pipe.joint_model_ = VectorizerModel::fit(docs, config.joint_params);
  } else {
    for (std::size_t f = 0; f < kStackedFieldCount; ++f) {
      std::vector<std::vector<std::string>> docs;
      docs.reserve(train_records.size());
      for (const auto& rec : train_records) {
        docs.push_back(textprep::tokenize(
            textprep::normalize(stacked_field_text(rec, static_cast<StackedField>(f)))));
      }
      pipe.field_models_[f] = VectorizerModel::fit(docs, config.field_params[f]);
    }
  }

  pipe.fitted_ = true;

  if (config.scaler != ScalerKind::none) {
    // scaler_ is still none here, so this transform yields the raw dense tail
    const FeatureMatrix train_matrix = pipe.transform(train_records);
    pipe.scaler_ = ScalerModel::fit(config.scaler, train_matrix);
  }
  return pipe;
}

std::size_t FeaturePipeline::width() const {
  std::size_t w = 0;
  if (config_.mode == FeatureMode::joint) {
    w = joint_model_.width();
  } else {
    for (const auto& m : field_models_) w += m.width();
  }
  return w + dense_column_names().size();
}

FeatureMatrix FeaturePipeline::transform(const std::vector<corpus::PaperRecord>& records) const {
  if (!fitted_) throw Error(ErrorCode::UnfittedVectorizer, "transform before fit");

  std::size_t sparse_width = 0;
  if (config_.mode == FeatureMode::joint) {
    sparse_width = joint_model_.width();
  } else {
    for (const auto& m : field_models_) sparse_width += m.width();
  }

  FeatureMatrix matrix(sparse_width, dense_column_names());
  for (const auto& rec : records) {
    SparseVector row;
    if (config_.mode == FeatureMode::joint) {
      row = joint_model_.transform(textprep::tokenize(textprep::normalize(joint_text(rec))));
    } else {
      std::vector<SparseVector> blocks;
      blocks.reserve(kStackedFieldCount);
      for (std::size_t f = 0; f < kStackedFieldCount; ++f) {
        blocks.push_back(field_models_[f].transform(textprep::tokenize(
            textprep::normalize(stacked_field_text(rec, static_cast<StackedField>(f))))));
      }
      row = hstack(blocks);
    }
    matrix.append_row(row, dense_tail(rec));
  }
  scaler_.apply(matrix);
  return matrix;
}

json FeaturePipeline::to_json() const {
  json j;
  j["format_version"] = 1;
  j["config"] = config_.to_json();
  j["fitted"] = fitted_;
  if (config_.mode == FeatureMode::joint) {
    j["joint_model"] = joint_model_.to_json();
  } else {
    json models = json::array();
    for (const auto& m : field_models_) models.push_back(m.to_json());
    j["field_models"] = std::move(models);
  }
  j["scaler"] = scaler_.to_json();
  return j;
}

FeaturePipeline FeaturePipeline::from_json(const json& j) {
  if (j.at("format_version").get<int>() != 1) {
    throw Error(ErrorCode::InvalidConfig, "unsupported pipeline format version");
  }
  FeaturePipeline pipe;
  pipe.config_ = FeatureConfig::from_json(j.at("config"));
  pipe.fitted_ = j.at("fitted").get<bool>();
  if (j.contains("joint_model")) {
    pipe.joint_model_ = VectorizerModel::from_json(j["joint_model"]);
  }
  if (j.contains("field_models")) {
    const auto& models = j["field_models"];
    for (std::size_t f = 0; f < kStackedFieldCount && f < models.size(); ++f) {
      pipe.field_models_[f] = VectorizerModel::from_json(models[f]);
    }
  }
  pipe.scaler_ = ScalerModel::from_json(j.at("scaler"));
  return pipe;
}

}  // namespace pagelen::feat

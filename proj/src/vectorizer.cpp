#include "pagelen/vectorizer.hpp"

#include <algorithm>
#include <cmath>

#include "pagelen/error.hpp"
#include "pagelen/hash.hpp"

namespace pagelen::feat {

using nlohmann::json;

namespace {

constexpr std::uint64_t kHashColumnSeed = 0x8f14e45fceea167aULL;
constexpr std::uint64_t kHashSignSeed = 0x23a6d7f1c38e92b5ULL;

void apply_norm(SparseVector& row, NormKind norm) {
  switch (norm) {
    case NormKind::none: break;
    case NormKind::l1: l1_normalize(row); break;
    case NormKind::l2: l2_normalize(row); break;
  }
}

std::unordered_set<std::string> stop_word_set(const VectorizerParams& params) {
  std::unordered_set<std::string> set;
  if (params.stop_words) set.insert(params.stop_words->begin(), params.stop_words->end());
  return set;
}

// The union kind expands into three concrete sub-vectorizers sharing the
// n-gram and stop-word settings; count output stays un-normalized.
std::vector<VectorizerParams> union_sub_params(const VectorizerParams& params) {
  VectorizerParams tfidf = params;
  tfidf.kind = VectorizerKind::tfidf;
  VectorizerParams hash = params;
  hash.kind = VectorizerKind::hash;
  VectorizerParams count = params;
  count.kind = VectorizerKind::count;
  count.norm = NormKind::none;
  return {tfidf, hash, count};
}

}  // namespace

const char* vectorizer_kind_name(VectorizerKind k) {
  switch (k) {
    case VectorizerKind::count: return "count";
    case VectorizerKind::tfidf: return "tfidf";
    case VectorizerKind::hash: return "hash";
    case VectorizerKind::vunion: return "union";
  }
  return "unknown";
}

const char* norm_kind_name(NormKind n) {
  switch (n) {
    case NormKind::none: return "none";
    case NormKind::l1: return "l1";
    case NormKind::l2: return "l2";
  }
  return "unknown";
}

VectorizerKind vectorizer_kind_from_name(const std::string& name) {
  if (name == "count") return VectorizerKind::count;
  if (name == "tfidf") return VectorizerKind::tfidf;
  if (name == "hash") return VectorizerKind::hash;
  if (name == "union") return VectorizerKind::vunion;
  throw Error(ErrorCode::InvalidConfig, "unknown vectorizer kind: " + name);
}

NormKind norm_kind_from_name(const std::string& name) {
  if (name == "none") return NormKind::none;
  if (name == "l1") return NormKind::l1;
  if (name == "l2") return NormKind::l2;
  throw Error(ErrorCode::InvalidConfig, "unknown norm: " + name);
}

void VectorizerParams::validate() const {
  if (ngram_lo < 1 || ngram_lo > ngram_hi || ngram_hi > 3) {
    throw Error(ErrorCode::InvalidConfig, "ngram range must satisfy 1 <= lo <= hi <= 3");
  }
  if (kind == VectorizerKind::hash || kind == VectorizerKind::vunion) {
    if (hash_dims == 0 || (hash_dims & (hash_dims - 1)) != 0) {
      throw Error(ErrorCode::InvalidConfig, "hash_dims must be a power of two");
    }
  }
}

json VectorizerParams::to_json() const {
  json j;
  j["kind"] = vectorizer_kind_name(kind);
  j["ngram"] = {ngram_lo, ngram_hi};
  j["norm"] = norm_kind_name(norm);
  j["smooth_idf"] = smooth_idf;
  j["sublinear_tf"] = sublinear_tf;
  if (stop_words) j["stop_words"] = *stop_words;
  j["hash_dims"] = hash_dims;
  return j;
}

VectorizerParams VectorizerParams::from_json(const json& j) {
  VectorizerParams p;
  p.kind = vectorizer_kind_from_name(j.at("kind").get<std::string>());
  p.ngram_lo = j.at("ngram").at(0).get<int>();
  p.ngram_hi = j.at("ngram").at(1).get<int>();
  p.norm = norm_kind_from_name(j.at("norm").get<std::string>());
  p.smooth_idf = j.at("smooth_idf").get<bool>();
  p.sublinear_tf = j.at("sublinear_tf").get<bool>();
  if (j.contains("stop_words")) p.stop_words = j["stop_words"].get<std::vector<std::string>>();
  if (j.contains("hash_dims")) p.hash_dims = j["hash_dims"].get<std::uint32_t>();
  p.validate();
  return p;
}

std::vector<std::string> extract_ngrams(const std::vector<std::string>& tokens,
                                        int ngram_lo, int ngram_hi,
                                        const std::unordered_set<std::string>* stop_words) {
  const std::vector<std::string>* source = &tokens;
  std::vector<std::string> filtered;
  if (stop_words && !stop_words->empty()) {
    filtered.reserve(tokens.size());
    for (const auto& t : tokens) {
      if (!stop_words->contains(t)) filtered.push_back(t);
    }
    source = &filtered;
  }

  std::vector<std::string> grams;
  const std::size_t n = source->size();
  for (int order = ngram_lo; order <= ngram_hi; ++order) {
    if (n < static_cast<std::size_t>(order)) break;
    for (std::size_t start = 0; start + order <= n; ++start) {
      std::string gram = (*source)[start];
      for (int k = 1; k < order; ++k) {
        gram.push_back(' ');
        gram += (*source)[start + k];
      }
      grams.push_back(std::move(gram));
    }
  }
  return grams;
}

void VectorizerModel::rebuild_index() {
  vocab_index_.clear();
  for (std::uint32_t i = 0; i < vocabulary_.size(); ++i) vocab_index_[vocabulary_[i]] = i;
}

VectorizerModel VectorizerModel::fit(std::span<const std::vector<std::string>> docs,
                                     const VectorizerParams& params) {
  params.validate();
  VectorizerModel model;
  model.params_ = params;
  model.fitted_doc_count_ = docs.size();

  if (params.kind == VectorizerKind::hash) {
    model.fitted_ = true;  // stateless
    return model;
  }

  if (params.kind == VectorizerKind::vunion) {
    for (const auto& sub : union_sub_params(params)) {
      model.sub_models_.push_back(VectorizerModel::fit(docs, sub));
    }
    model.fitted_ = true;
    return model;
  }

  if (docs.empty()) throw Error(ErrorCode::EmptyCorpus, "cannot fit a vectorizer on zero documents");

  const auto stops = stop_word_set(params);
  // document frequency per gram; vocabulary order is lexicographic (std::map)
  std::map<std::string, std::uint64_t> df;
  for (const auto& doc : docs) {
    auto grams = extract_ngrams(doc, params.ngram_lo, params.ngram_hi, &stops);
    std::sort(grams.begin(), grams.end());
    grams.erase(std::unique(grams.begin(), grams.end()), grams.end());
    for (auto& g : grams) ++df[std::move(g)];
  }
  if (df.empty()) throw Error(ErrorCode::EmptyVocabulary, "no n-grams observed at fit time");

  model.vocabulary_.reserve(df.size());
  for (const auto& [gram, _] : df) model.vocabulary_.push_back(gram);
  model.rebuild_index();

  if (params.kind == VectorizerKind::tfidf) {
    const double n_docs = static_cast<double>(docs.size());
    model.idf_.reserve(df.size());
    for (const auto& [_, gram_df] : df) {
      const double d = static_cast<double>(gram_df);
      const double idf = params.smooth_idf ? std::log((1.0 + n_docs) / (1.0 + d)) + 1.0
                                           : std::log(n_docs / d) + 1.0;
      model.idf_.push_back(idf);
    }
  }

  model.fitted_ = true;
  return model;
}

std::size_t VectorizerModel::width() const {
  switch (params_.kind) {
    case VectorizerKind::hash:
      return params_.hash_dims;
    case VectorizerKind::vunion: {
      std::size_t total = 0;
      for (const auto& sub : sub_models_) total += sub.width();
      return total;
    }
    default:
      return vocabulary_.size();
  }
}

SparseVector VectorizerModel::transform(const std::vector<std::string>& tokens) const {
  if (!fitted_) throw Error(ErrorCode::UnfittedVectorizer, "transform before fit");

  if (params_.kind == VectorizerKind::hash) {
    return hash_vectorize(tokens, params_);
  }
  if (params_.kind == VectorizerKind::vunion) {
    std::vector<SparseVector> blocks;
    blocks.reserve(sub_models_.size());
    for (const auto& sub : sub_models_) blocks.push_back(sub.transform(tokens));
    auto row = hstack(blocks);
    return row;
  }

  const auto stops = stop_word_set(params_);
  std::map<std::uint32_t, double> counts;
  for (const auto& gram :
       extract_ngrams(tokens, params_.ngram_lo, params_.ngram_hi, &stops)) {
    auto it = vocab_index_.find(gram);
    if (it != vocab_index_.end()) counts[it->second] += 1.0;  // closed vocabulary
  }

  SparseVector row;
  row.size = vocabulary_.size();
  row.entries.reserve(counts.size());
  for (const auto& [col, count] : counts) {
    double value = count;
    if (params_.kind == VectorizerKind::tfidf) {
      const double tf = params_.sublinear_tf ? 1.0 + std::log(count) : count;
      value = tf * idf_[col];
    }
    row.entries.push_back({col, value});
  }
  if (params_.kind == VectorizerKind::tfidf) apply_norm(row, params_.norm);
  return row;
}

SparseVector hash_vectorize(const std::vector<std::string>& tokens,
                            const VectorizerParams& params) {
  params.validate();
  const auto stops = stop_word_set(params);
  std::map<std::uint32_t, double> accum;
  for (const auto& gram :
       extract_ngrams(tokens, params.ngram_lo, params.ngram_hi, &stops)) {
    const std::uint32_t col =
        static_cast<std::uint32_t>(hash64(gram, kHashColumnSeed) & (params.hash_dims - 1));
    const double sign = (hash64(gram, kHashSignSeed) & 1) ? 1.0 : -1.0;
    accum[col] += sign;
  }

  SparseVector row;
  row.size = params.hash_dims;
  for (const auto& [col, value] : accum) {
    if (value != 0.0) row.entries.push_back({col, value});  // full cancellation drops out
  }
  apply_norm(row, params.norm);
  return row;
}

json VectorizerModel::to_json() const {
  json j;
  j["format_version"] = 1;
  j["params"] = params_.to_json();
  j["fitted"] = fitted_;
  j["fitted_doc_count"] = fitted_doc_count_;
  if (params_.kind == VectorizerKind::vunion) {
    json subs = json::array();
    for (const auto& sub : sub_models_) subs.push_back(sub.to_json());
    j["sub_models"] = std::move(subs);
  } else if (params_.kind != VectorizerKind::hash) {
    j["vocabulary"] = vocabulary_;
    if (params_.kind == VectorizerKind::tfidf) j["idf"] = idf_;
  }
  return j;
}

VectorizerModel VectorizerModel::from_json(const json& j) {
  if (j.at("format_version").get<int>() != 1) {
    throw Error(ErrorCode::InvalidConfig, "unsupported vectorizer format version");
  }
  VectorizerModel model;
  model.params_ = VectorizerParams::from_json(j.at("params"));
  model.fitted_ = j.at("fitted").get<bool>();
  model.fitted_doc_count_ = j.at("fitted_doc_count").get<std::uint64_t>();
  if (j.contains("sub_models")) {
    for (const auto& sub : j["sub_models"]) {
      model.sub_models_.push_back(VectorizerModel::from_json(sub));
    }
  }
  if (j.contains("vocabulary")) {
    model.vocabulary_ = j["vocabulary"].get<std::vector<std::string>>();
    model.rebuild_index();
  }
  if (j.contains("idf")) model.idf_ = j["idf"].get<std::vector<double>>();
  return model;
}

}  // namespace pagelen::feat

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "json.hpp"

#include "pagelen/sparse.hpp"
#include "pagelen/textprep.hpp"

namespace pagelen::feat {

enum class VectorizerKind { count, tfidf, hash, vunion };
enum class NormKind { none, l1, l2 };

const char* vectorizer_kind_name(VectorizerKind k);
const char* norm_kind_name(NormKind n);
VectorizerKind vectorizer_kind_from_name(const std::string& name);
NormKind norm_kind_from_name(const std::string& name);

struct VectorizerParams {
  VectorizerKind kind = VectorizerKind::tfidf;
  int ngram_lo = 1;
  int ngram_hi = 1;
  NormKind norm = NormKind::l2;
  bool smooth_idf = true;
  bool sublinear_tf = false;
  std::optional<std::vector<std::string>> stop_words;
  std::uint32_t hash_dims = 1u << 20;  // hash kind only; power of two

  void validate() const;

  nlohmann::json to_json() const;
  static VectorizerParams from_json(const nlohmann::json& j);
};

// Fitted state of one vectorizer. count/tfidf carry a vocabulary with dense
// lexicographic column indices; tfidf additionally carries idf weights; hash
// is stateless beyond its params; union holds the three fitted sub-models in
// block order tfidf, hash, count.
class VectorizerModel {
 public:
  VectorizerModel() = default;

  static VectorizerModel fit(std::span<const std::vector<std::string>> docs,
                             const VectorizerParams& params);

  SparseVector transform(const std::vector<std::string>& tokens) const;

  std::size_t width() const;
  const VectorizerParams& params() const { return params_; }
  const std::vector<std::string>& vocabulary() const { return vocabulary_; }
  const std::vector<double>& idf() const { return idf_; }
  std::uint64_t fitted_doc_count() const { return fitted_doc_count_; }
  bool fitted() const { return fitted_; }

  nlohmann::json to_json() const;
  static VectorizerModel from_json(const nlohmann::json& j);

 private:
  VectorizerParams params_;
  bool fitted_ = false;
  std::uint64_t fitted_doc_count_ = 0;
  std::vector<std::string> vocabulary_;          // column order
  std::map<std::string, std::uint32_t> vocab_index_;
  std::vector<double> idf_;                      // tfidf only, per column
  std::vector<VectorizerModel> sub_models_;      // union only

  void rebuild_index();
};

// Stateless signed hashing of n-grams into a power-of-two column space.
SparseVector hash_vectorize(const std::vector<std::string>& tokens,
                            const VectorizerParams& params);

// Enumerates the token n-grams of a document for ngram_lo..ngram_hi, after
// removing stop words; n-grams are the tokens joined with single spaces.
std::vector<std::string> extract_ngrams(const std::vector<std::string>& tokens,
                                        int ngram_lo, int ngram_hi,
                                        const std::unordered_set<std::string>* stop_words);

}  // namespace pagelen::feat

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <variant>
#include <vector>

#include "pagelen/hash.hpp"
#include "pagelen/textprep.hpp"

namespace pagelen::corpus {

// One publication's metadata plus the page-length regression target.
struct PaperRecord {
  std::string title;
  std::string abstract_text;
  std::vector<std::string> keywords;
  int year = 0;
  std::optional<std::string> venue;
  std::optional<std::int64_t> n_citation;
  std::optional<std::string> issn;
  std::optional<std::string> isbn;
  std::optional<int> volume;
  int length = 0;
};

struct IntRange {
  int min = 1;
  int max = 1;

  bool contains(std::int64_t v) const { return v >= min && v <= max; }
};

struct FilterRules {
  IntRange title_tokens{3, 50};
  IntRange abstract_tokens{40, 400};
  IntRange keywords_count{2, 20};
  IntRange page_length{2, 50};

  // Throws Error(InvalidConfig) unless every range has 1 <= min <= max.
  void validate() const;
};

enum class RejectReason { TitleTokens, AbstractTokens, KeywordsCount, PageLength };

const char* reject_reason_name(RejectReason r);

struct FilterDecision {
  bool keep = true;
  RejectReason reason = RejectReason::TitleTokens;  // meaningful when !keep
};

struct AttributeStats {
  double mean = 0.0;
  double stddev = 0.0;  // population (ddof=0)
};

struct CorpusStats {
  std::uint64_t record_count = 0;
  AttributeStats title_tokens;
  AttributeStats abstract_tokens;
  AttributeStats keywords_count;
  AttributeStats page_length;
};

struct SplitSpec {
  std::size_t train_size = 0;
  std::size_t val_size = 0;
  std::size_t test_size = 0;
  std::uint64_t seed = 0;
};

struct SplitResult {
  std::vector<PaperRecord> train;
  std::vector<PaperRecord> val;
  std::vector<PaperRecord> test;
};

enum class ParseErrorKind { MalformedLine, MissingField, TypeMismatch };

struct ParseError {
  ParseErrorKind kind = ParseErrorKind::MalformedLine;
  std::string field;
  std::string message;
  std::size_t line_number = 0;
};

using ParseOutcome = std::variant<PaperRecord, ParseError>;

// Decodes one JSON line into a PaperRecord. Required fields: title, abstract,
// keywords, year, length. "n citation" and "n_citation" are both accepted.
// Domain violations (length < 1, negative citation count, blank title or
// abstract) are reported as TypeMismatch.
ParseOutcome parse_record(std::string_view line, std::size_t line_number);

// Canonical single-line JSON encoding (dataset-native field names, fixed key
// order, absent optionals omitted).
std::string encode_record(const PaperRecord& record);

FilterDecision filter_record(const PaperRecord& record, const FilterRules& rules,
                             const textprep::Tokenizer& tokenizer);

// Streaming first-occurrence dedup keyed on (normalized title, normalized
// abstract); only a 128-bit key hash is retained per survivor.
class Deduplicator {
 public:
  // True if this record's key was not seen before (record should be kept).
  bool insert(const PaperRecord& record);

  std::size_t unique_count() const { return seen_.size(); }

  static Hash128 dedup_key(const PaperRecord& record);

 private:
  std::unordered_set<Hash128, Hash128Hasher> seen_;
};

std::vector<PaperRecord> deduplicate(const std::vector<PaperRecord>& records);

// Seeded Fisher-Yates shuffle, then contiguous train/val/test prefixes.
// Throws Error(SizesExceedCorpus) when the sizes do not fit.
SplitResult split(const std::vector<PaperRecord>& records, const SplitSpec& spec);

// Single-pass streaming accumulator (Welford) over the four filter attributes.
class StatsAccumulator {
 public:
  explicit StatsAccumulator(const textprep::Tokenizer& tokenizer) : tokenizer_(tokenizer) {}

  void add(const PaperRecord& record);

  // Throws Error(EmptyCorpus) when no records were added.
  CorpusStats finish() const;

 private:
  struct Welford {
    std::uint64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x);
    AttributeStats stats() const;
  };

  textprep::Tokenizer tokenizer_;
  Welford title_, abstract_, keywords_, length_;
};

CorpusStats compute_stats(const std::vector<PaperRecord>& records,
                          const textprep::Tokenizer& tokenizer);

}  // namespace pagelen::corpus

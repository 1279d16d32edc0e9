#include "pagelen/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "json.hpp"

#include "pagelen/error.hpp"
#include "pagelen/rng.hpp"

namespace pagelen::corpus {

using nlohmann::json;
using nlohmann::ordered_json;

void FilterRules::validate() const {
  auto check = [](const IntRange& r, const char* name) {
    if (r.min < 1 || r.min > r.max) {
      throw Error(ErrorCode::InvalidConfig,
                  std::string(name) + " range must satisfy 1 <= min <= max");
    }
  };
  check(title_tokens, "title_tokens");
  check(abstract_tokens, "abstract_tokens");
  check(keywords_count, "keywords_count");
  check(page_length, "page_length");
}

const char* reject_reason_name(RejectReason r) {
  switch (r) {
    case RejectReason::TitleTokens: return "TitleTokens";
    case RejectReason::AbstractTokens: return "AbstractTokens";
    case RejectReason::KeywordsCount: return "KeywordsCount";
    case RejectReason::PageLength: return "PageLength";
  }
  return "Unknown";
}

namespace {

ParseError make_error(ParseErrorKind kind, std::string field, std::string message,
                      std::size_t line_number) {
  return ParseError{kind, std::move(field), std::move(message), line_number};
}

bool is_blank(std::string_view s) {
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// JSON numbers carry no integer/real distinction; accept integral doubles.
bool json_to_int64(const json& v, std::int64_t& out) {
  if (v.is_number_integer()) {
    out = v.get<std::int64_t>();
    return true;
  }
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d == std::floor(d) && std::abs(d) < 9.0e18) {
      out = static_cast<std::int64_t>(d);
      return true;
    }
  }
  return false;
}

const json* find_field(const json& obj, std::initializer_list<const char*> names) {
  for (const char* name : names) {
    if (auto it = obj.find(name); it != obj.end() && !it->is_null()) return &*it;
  }
  return nullptr;
}

}  // namespace

ParseOutcome parse_record(std::string_view line, std::size_t line_number) {
  json obj = json::parse(line, nullptr, false);
  if (obj.is_discarded() || !obj.is_object()) {
    return make_error(ParseErrorKind::MalformedLine, "", "line is not a JSON object",
                      line_number);
  }

  PaperRecord rec;

  auto require_string = [&](const char* name, std::string& out) -> std::optional<ParseError> {
    const json* v = find_field(obj, {name});
    if (!v) return make_error(ParseErrorKind::MissingField, name, "required field absent", line_number);
    if (!v->is_string()) return make_error(ParseErrorKind::TypeMismatch, name, "expected string", line_number);
    out = v->get<std::string>();
    if (is_blank(out)) return make_error(ParseErrorKind::TypeMismatch, name, "must be non-empty", line_number);
    return std::nullopt;
  };

  if (auto err = require_string("title", rec.title)) return *err;
  if (auto err = require_string("abstract", rec.abstract_text)) return *err;

  {
    const json* v = find_field(obj, {"keywords"});
    if (!v) return make_error(ParseErrorKind::MissingField, "keywords", "required field absent", line_number);
    if (!v->is_array()) return make_error(ParseErrorKind::TypeMismatch, "keywords", "expected array of strings", line_number);
    for (const auto& item : *v) {
      if (!item.is_string()) {
        return make_error(ParseErrorKind::TypeMismatch, "keywords", "expected array of strings", line_number);
      }
      std::string kw = item.get<std::string>();
      if (!is_blank(kw)) rec.keywords.push_back(std::move(kw));  // empty keywords dropped
    }
  }

  {
    const json* v = find_field(obj, {"year"});
    if (!v) return make_error(ParseErrorKind::MissingField, "year", "required field absent", line_number);
    std::int64_t year = 0;
    if (!json_to_int64(*v, year)) return make_error(ParseErrorKind::TypeMismatch, "year", "expected integer", line_number);
    rec.year = static_cast<int>(year);
  }

  {
    const json* v = find_field(obj, {"length"});
    if (!v) return make_error(ParseErrorKind::MissingField, "length", "required field absent", line_number);
    std::int64_t len = 0;
    if (!json_to_int64(*v, len)) return make_error(ParseErrorKind::TypeMismatch, "length", "expected integer", line_number);
    if (len < 1) return make_error(ParseErrorKind::TypeMismatch, "length", "must be >= 1", line_number);
    rec.length = static_cast<int>(len);
  }

  if (const json* v = find_field(obj, {"venue"})) {
    if (!v->is_string()) return make_error(ParseErrorKind::TypeMismatch, "venue", "expected string", line_number);
    rec.venue = v->get<std::string>();
  }
  if (const json* v = find_field(obj, {"n citation", "n_citation"})) {
    std::int64_t n = 0;
    if (!json_to_int64(*v, n)) return make_error(ParseErrorKind::TypeMismatch, "n citation", "expected integer", line_number);
    if (n < 0) return make_error(ParseErrorKind::TypeMismatch, "n citation", "must be >= 0", line_number);
    rec.n_citation = n;
  }
  if (const json* v = find_field(obj, {"issn"})) {
    if (!v->is_string()) return make_error(ParseErrorKind::TypeMismatch, "issn", "expected string", line_number);
    rec.issn = v->get<std::string>();
  }
  if (const json* v = find_field(obj, {"isbn"})) {
    if (!v->is_string()) return make_error(ParseErrorKind::TypeMismatch, "isbn", "expected string", line_number);
    rec.isbn = v->get<std::string>();
  }
  if (const json* v = find_field(obj, {"volume"})) {
    std::int64_t vol = 0;
    if (!json_to_int64(*v, vol)) return make_error(ParseErrorKind::TypeMismatch, "volume", "expected integer", line_number);
    rec.volume = static_cast<int>(vol);
  }

  return rec;
}

std::string encode_record(const PaperRecord& record) {
  ordered_json obj;
  obj["title"] = record.title;
  obj["abstract"] = record.abstract_text;
  obj["keywords"] = record.keywords;
  obj["year"] = record.year;
  if (record.venue) obj["venue"] = *record.venue;
  if (record.n_citation) obj["n citation"] = *record.n_citation;
  if (record.issn) obj["issn"] = *record.issn;
  if (record.isbn) obj["isbn"] = *record.isbn;
  if (record.volume) obj["volume"] = *record.volume;
  obj["length"] = record.length;
  return obj.dump();
}

FilterDecision filter_record(const PaperRecord& record, const FilterRules& rules,
                             const textprep::Tokenizer& tokenizer) {
  // Reasons are checked in a fixed order so audit logs are deterministic.
  if (!rules.title_tokens.contains(
          static_cast<std::int64_t>(tokenizer.token_count(record.title)))) {
    return {false, RejectReason::TitleTokens};
  }
  if (!rules.abstract_tokens.contains(
          static_cast<std::int64_t>(tokenizer.token_count(record.abstract_text)))) {
    return {false, RejectReason::AbstractTokens};
  }
  if (!rules.keywords_count.contains(static_cast<std::int64_t>(record.keywords.size()))) {
    return {false, RejectReason::KeywordsCount};
  }
  if (!rules.page_length.contains(record.length)) {
    return {false, RejectReason::PageLength};
  }
  return {true, RejectReason::TitleTokens};
}

Hash128 Deduplicator::dedup_key(const PaperRecord& record) {
  std::string key = textprep::normalize(record.title);
  key.push_back('\x1f');  // unit separator, cannot appear in normalized text
  key += textprep::normalize(record.abstract_text);
  return hash128(key);
}

bool Deduplicator::insert(const PaperRecord& record) {
  return seen_.insert(dedup_key(record)).second;
}

std::vector<PaperRecord> deduplicate(const std::vector<PaperRecord>& records) {
  Deduplicator dedup;
  std::vector<PaperRecord> out;
  for (const auto& rec : records) {
    if (dedup.insert(rec)) out.push_back(rec);
  }
  return out;
}

SplitResult split(const std::vector<PaperRecord>& records, const SplitSpec& spec) {
  const std::size_t total = spec.train_size + spec.val_size + spec.test_size;
  if (total > records.size()) {
    throw Error(ErrorCode::SizesExceedCorpus,
                "requested " + std::to_string(total) + " samples from a corpus of " +
                    std::to_string(records.size()));
  }

  std::vector<std::size_t> order(records.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(spec.seed);
  rng.shuffle(order);

  SplitResult result;
  result.train.reserve(spec.train_size);
  result.val.reserve(spec.val_size);
  result.test.reserve(spec.test_size);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < spec.train_size; ++i) result.train.push_back(records[order[pos++]]);
  for (std::size_t i = 0; i < spec.val_size; ++i) result.val.push_back(records[order[pos++]]);
  for (std::size_t i = 0; i < spec.test_size; ++i) result.test.push_back(records[order[pos++]]);
  return result;
}

void StatsAccumulator::Welford::add(double x) {
  ++n;
  const double delta = x - mean;
  mean += delta / static_cast<double>(n);
  m2 += delta * (x - mean);
}

AttributeStats StatsAccumulator::Welford::stats() const {
  AttributeStats s;
  s.mean = mean;
  s.stddev = n > 0 ? std::sqrt(m2 / static_cast<double>(n)) : 0.0;
  return s;
}

void StatsAccumulator::add(const PaperRecord& record) {
  title_.add(static_cast<double>(tokenizer_.token_count(record.title)));
  abstract_.add(static_cast<double>(tokenizer_.token_count(record.abstract_text)));
  keywords_.add(static_cast<double>(record.keywords.size()));
  length_.add(static_cast<double>(record.length));
}

CorpusStats StatsAccumulator::finish() const {
  if (title_.n == 0) throw Error(ErrorCode::EmptyCorpus, "no records to summarize");
  CorpusStats stats;
  stats.record_count = title_.n;
  stats.title_tokens = title_.stats();
  stats.abstract_tokens = abstract_.stats();
  stats.keywords_count = keywords_.stats();
  stats.page_length = length_.stats();
  return stats;
}

CorpusStats compute_stats(const std::vector<PaperRecord>& records,
                          const textprep::Tokenizer& tokenizer) {
  StatsAccumulator acc(tokenizer);
  for (const auto& rec : records) acc.add(rec);
  return acc.finish();
}

}  // namespace pagelen::corpus

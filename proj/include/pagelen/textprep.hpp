#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pagelen::textprep {

enum class SourceField { title, abstract, keywords, venue, joint };

struct TokenizedDocument {
  std::vector<std::string> tokens;
  SourceField source_field = SourceField::joint;
};

// Lowercases (ASCII, Latin-1/Extended-A, Greek, Cyrillic), drops control and
// replacement characters, collapses whitespace runs to single spaces and trims.
// Idempotent. Invalid UTF-8 bytes are dropped.
std::string normalize(std::string_view text);

// Splits normalized text on whitespace and peels punctuation off into
// standalone tokens. A '.' or ',' with a digit on both sides stays inside its
// token so decimal numbers survive whole.
std::vector<std::string> tokenize(std::string_view normalized_text);

TokenizedDocument tokenize_field(std::string_view raw_text, SourceField field);

// Number of whitespace-delimited words in the raw (pre-normalization) text
// whose first character is an uppercase letter.
std::size_t capitalized_word_count(std::string_view raw_text);

// Stateless tokenizer handle passed to corpus filtering and stats.
struct Tokenizer {
  std::size_t token_count(std::string_view raw_text) const {
    return tokenize(normalize(raw_text)).size();
  }
  std::vector<std::string> operator()(std::string_view raw_text) const {
    return tokenize(normalize(raw_text));
  }
};

namespace detail {
std::uint32_t lower_codepoint(std::uint32_t cp);
bool is_whitespace(std::uint32_t cp);
bool is_punctuation(std::uint32_t cp);
}  // namespace detail

}  // namespace pagelen::textprep

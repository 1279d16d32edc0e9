#include "pagelen/textprep.hpp"

#include <cstddef>

namespace pagelen::textprep {

namespace {

// Decodes one UTF-8 codepoint starting at position i. Returns false on an
// invalid sequence, advancing past the offending byte.
bool decode_utf8(std::string_view s, std::size_t& i, std::uint32_t& cp) {
  const unsigned char b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) {
    cp = b0;
    ++i;
    return true;
  }
  int extra = 0;
  std::uint32_t value = 0;
  if ((b0 & 0xE0) == 0xC0) {
    extra = 1;
    value = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    extra = 2;
    value = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    extra = 3;
    value = b0 & 0x07;
  } else {
    ++i;
    return false;
  }
  if (i + static_cast<std::size_t>(extra) >= s.size()) {
    ++i;  // truncated sequence
    return false;
  }
  for (int k = 1; k <= extra; ++k) {
    const unsigned char b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) {
      ++i;
      return false;
    }
    value = (value << 6) | (b & 0x3F);
  }
  i += 1 + extra;
  cp = value;
  return true;
}

void encode_utf8(std::uint32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_control(std::uint32_t cp) {
  return cp < 0x20 || cp == 0x7F || (cp >= 0x80 && cp <= 0x9F) || cp == 0xFFFD;
}

bool is_upper(std::uint32_t cp) { return detail::lower_codepoint(cp) != cp; }

}  // namespace

namespace detail {

bool is_whitespace(std::uint32_t cp) {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

// Simple case mapping covering the scripts that dominate scholarly metadata:
// ASCII, Latin-1 supplement, Latin Extended-A, Greek and Cyrillic.
std::uint32_t lower_codepoint(std::uint32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  if (cp >= 0x100 && cp <= 0x177) {
    if (cp == 0x130) return 'i';  // dotted capital I
    return (cp % 2 == 0) ? cp + 1 : cp;
  }
  if (cp == 0x178) return 0xFF;
  if (cp >= 0x179 && cp <= 0x17E) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 0x20;
  if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
  return cp;
}

bool is_punctuation(std::uint32_t cp) {
  if (cp < 0x80) {
    return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) ||
           (cp >= 0x5B && cp <= 0x60) || (cp >= 0x7B && cp <= 0x7E);
  }
  switch (cp) {
    case 0xA1: case 0xAB: case 0xB7: case 0xBB: case 0xBF:
      return true;
    default:
      // general punctuation block: dashes, quotes, ellipsis, daggers, ...
      return (cp >= 0x2010 && cp <= 0x2027) || (cp >= 0x2030 && cp <= 0x205E);
  }
}

}  // namespace detail

std::string normalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  bool emitted_any = false;

  std::size_t i = 0;
  while (i < text.size()) {
    std::uint32_t cp = 0;
    if (!decode_utf8(text, i, cp)) continue;  // invalid byte dropped
    if (detail::is_whitespace(cp)) {
      pending_space = emitted_any;
      continue;
    }
    if (is_control(cp)) continue;
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    encode_utf8(detail::lower_codepoint(cp), out);
    emitted_any = true;
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view normalized_text) {
  std::vector<std::string> tokens;
  std::string current;

  // One decoded codepoint of lookbehind/lookahead for the decimal rule.
  std::vector<std::pair<std::uint32_t, std::pair<std::size_t, std::size_t>>> cps;
  std::size_t i = 0;
  while (i < normalized_text.size()) {
    const std::size_t start = i;
    std::uint32_t cp = 0;
    if (!decode_utf8(normalized_text, i, cp)) continue;
    cps.push_back({cp, {start, i}});
  }

  auto is_digit = [](std::uint32_t cp) { return cp >= '0' && cp <= '9'; };
  auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  };

  for (std::size_t k = 0; k < cps.size(); ++k) {
    const std::uint32_t cp = cps[k].first;
    if (detail::is_whitespace(cp)) {
      flush();
      continue;
    }
    if (detail::is_punctuation(cp)) {
      const bool decimal = (cp == '.' || cp == ',') && k > 0 && k + 1 < cps.size() &&
                           is_digit(cps[k - 1].first) && is_digit(cps[k + 1].first);
      if (!decimal) {
        flush();
        std::string tok;
        encode_utf8(cp, tok);
        tokens.push_back(std::move(tok));
        continue;
      }
    }
    encode_utf8(cp, current);
  }
  flush();
  return tokens;
}

TokenizedDocument tokenize_field(std::string_view raw_text, SourceField field) {
  TokenizedDocument doc;
  doc.tokens = tokenize(normalize(raw_text));
  doc.source_field = field;
  return doc;
}

std::size_t capitalized_word_count(std::string_view raw_text) {
  std::size_t count = 0;
  std::size_t i = 0;
  bool at_word_start = true;
  while (i < raw_text.size()) {
    std::uint32_t cp = 0;
    if (!decode_utf8(raw_text, i, cp)) continue;
    if (detail::is_whitespace(cp)) {
      at_word_start = true;
      continue;
    }
    if (at_word_start && is_upper(cp)) ++count;
    at_word_start = false;
  }
  return count;
}

}  // namespace pagelen::textprep

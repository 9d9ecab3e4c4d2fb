#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lexlog/diagnostic.hpp"

namespace lexlog {

enum class TokenKind {
  kWord,
  kDeterminer,
  kKeyword,
  kNumber,
  kDate,
  kComparison,
  kPeriod,
  kColon,
  kSlotMarker,
  kLabelRef,
};

const char* token_kind_name(TokenKind k);

struct Token {
  TokenKind kind = TokenKind::kWord;
  std::string lexeme;
  Span span;
  // Leading spaces of the physical line the token sits on.
  int indent = 0;
};

struct LexResult {
  std::vector<Token> tokens;
  // The LF-normalized text the spans refer to.
  std::string normalized;
  Diagnostics diagnostics;
};

// Tokenizes a .le source. CRLF is normalized to LF before spans are computed.
// Tabs, invalid UTF-8 and malformed dates are reported as errors; lexing
// continues past them so every problem on a line is surfaced.
LexResult tokenize(std::string_view source, const std::string& origin);

bool is_determiner(std::string_view word);

// Words with grammatical meaning for the condition/rule parser. They still
// take part in template matching by lexeme.
bool is_keyword(std::string_view word);

}  // namespace lexlog

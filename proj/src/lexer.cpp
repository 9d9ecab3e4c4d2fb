#include "lexlog/lexer.hpp"

#include <array>
#include <cctype>

namespace lexlog {

namespace {

bool is_boundary(char c) {
  return c == ' ' || c == '\t' || c == '.' || c == ':' || c == '*' || c == '<' || c == '>' ||
         c == '=';
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

bool looks_like_number(std::string_view s) {
  auto dot = s.find('.');
  if (dot == std::string_view::npos) return all_digits(s);
  return all_digits(s.substr(0, dot)) && all_digits(s.substr(dot + 1));
}

bool days_ok(int y, int m, int d) {
  static constexpr std::array<int, 12> kDays = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (m < 1 || m > 12 || d < 1) return false;
  int limit = kDays[static_cast<size_t>(m - 1)];
  if (m == 2 && ((y % 4 == 0 && y % 100 != 0) || y % 400 == 0)) limit = 29;
  return d <= limit;
}

bool valid_iso_date(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
  if (!all_digits(s.substr(0, 4)) || !all_digits(s.substr(5, 2)) || !all_digits(s.substr(8, 2)))
    return false;
  int y = std::stoi(std::string(s.substr(0, 4)));
  int m = std::stoi(std::string(s.substr(5, 2)));
  int d = std::stoi(std::string(s.substr(8, 2)));
  return days_ok(y, m, d);
}

// Length of the UTF-8 sequence starting at s[i], or 0 when it is malformed.
size_t utf8_sequence_length(std::string_view s, size_t i) {
  auto b = static_cast<unsigned char>(s[i]);
  size_t n = 0;
  if (b < 0x80) return 1;
  if ((b & 0xE0) == 0xC0 && b >= 0xC2) n = 2;
  else if ((b & 0xF0) == 0xE0) n = 3;
  else if ((b & 0xF8) == 0xF0 && b <= 0xF4) n = 4;
  else return 0;
  if (i + n > s.size()) return 0;
  for (size_t k = 1; k < n; ++k)
    if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return 0;
  return n;
}

class LineLexer {
 public:
  LineLexer(std::string_view line, int line_no, const std::string& origin, LexResult& out)
      : line_(line), line_no_(line_no), origin_(origin), out_(out) {}

  void run() {
    validate_bytes();
    indent_ = 0;
    while (static_cast<size_t>(indent_) < line_.size() && line_[static_cast<size_t>(indent_)] == ' ')
      ++indent_;

    size_t i = 0;
    while (i < line_.size()) {
      char c = line_[i];
      if (c == ' ') {
        ++i;
        continue;
      }
      if (c == '\t') {
        error(i, i + 1, "tab character; indentation and spacing must use spaces");
        ++i;
        continue;
      }
      if (c == '.') {
        push(TokenKind::kPeriod, i, i + 1);
        ++i;
        continue;
      }
      if (c == ':') {
        push(TokenKind::kColon, i, i + 1);
        ++i;
        continue;
      }
      if (c == '*') {
        push(TokenKind::kSlotMarker, i, i + 1);
        ++i;
        continue;
      }
      if (c == '<' || c == '>' || c == '=') {
        i = lex_comparison(i);
        continue;
      }
      i = lex_chunk(i);
    }
  }

 private:
  void validate_bytes() {
    size_t i = 0;
    while (i < line_.size()) {
      size_t n = utf8_sequence_length(line_, i);
      if (n == 0) {
        error(i, i + 1, "invalid UTF-8 byte sequence");
        bad_bytes_.push_back(i);
        ++i;
      } else {
        i += n;
      }
    }
  }

  size_t lex_comparison(size_t i) {
    char c = line_[i];
    char next = i + 1 < line_.size() ? line_[i + 1] : '\0';
    if (c == '>' && next == '=') {
      push(TokenKind::kComparison, i, i + 2);
      return i + 2;
    }
    if (c == '=' && next == '<') {
      push(TokenKind::kComparison, i, i + 2);
      return i + 2;
    }
    if (c == '<' && next == '=') {
      error(i, i + 2, "unknown comparison '<='; write '=<'");
      return i + 2;
    }
    push(TokenKind::kComparison, i, i + 1);
    return i + 1;
  }

  size_t lex_chunk(size_t start) {
    size_t i = start;
    while (i < line_.size()) {
      char c = line_[i];
      if (c == '.' && i > start && all_digits(line_.substr(start, i - start)) &&
          i + 1 < line_.size() && std::isdigit(static_cast<unsigned char>(line_[i + 1]))) {
        ++i;  // decimal point inside a number
        continue;
      }
      if (is_boundary(c)) break;
      ++i;
    }
    std::string_view text = line_.substr(start, i - start);
    for (size_t bad : bad_bytes_)
      if (bad >= start && bad < i) return i;  // already reported

    if (text.size() >= 5 && all_digits(text.substr(0, 4)) && text[4] == '-') {
      if (valid_iso_date(text)) {
        push(TokenKind::kDate, start, i);
      } else {
        error(start, i, "unterminated date literal '" + std::string(text) +
                            "'; dates are written YYYY-MM-DD");
        push(TokenKind::kWord, start, i);
      }
      return i;
    }
    if (looks_like_number(text)) {
      push(TokenKind::kNumber, start, i);
      return i;
    }
    TokenKind kind = TokenKind::kWord;
    if (is_determiner(text)) {
      kind = TokenKind::kDeterminer;
    } else if (is_keyword(text)) {
      kind = TokenKind::kKeyword;
    } else if (i < line_.size() && line_[i] == ':' && has_content_after(i + 1)) {
      kind = TokenKind::kLabelRef;
    }
    push(kind, start, i);
    return i;
  }

  bool has_content_after(size_t pos) const {
    for (size_t k = pos; k < line_.size(); ++k)
      if (line_[k] != ' ') return true;
    return false;
  }

  void push(TokenKind kind, size_t b, size_t e) {
    Token t;
    t.kind = kind;
    t.lexeme = std::string(line_.substr(b, e - b));
    t.span = Span{line_no_, static_cast<int>(b), static_cast<int>(e)};
    t.indent = indent_;
    out_.tokens.push_back(std::move(t));
  }

  void error(size_t b, size_t e, std::string msg) {
    out_.diagnostics.push_back(Diagnostic{Severity::kError, std::move(msg), origin_,
                                          Span{line_no_, static_cast<int>(b), static_cast<int>(e)}});
  }

  std::string_view line_;
  int line_no_;
  const std::string& origin_;
  LexResult& out_;
  int indent_ = 0;
  std::vector<size_t> bad_bytes_;
};

}  // namespace

const char* token_kind_name(TokenKind k) {
  switch (k) {
    case TokenKind::kWord: return "word";
    case TokenKind::kDeterminer: return "determiner";
    case TokenKind::kKeyword: return "keyword";
    case TokenKind::kNumber: return "number";
    case TokenKind::kDate: return "date-literal";
    case TokenKind::kComparison: return "comparison-symbol";
    case TokenKind::kPeriod: return "period";
    case TokenKind::kColon: return "colon";
    case TokenKind::kSlotMarker: return "slot-marker";
    case TokenKind::kLabelRef: return "label-ref";
  }
  return "word";
}

bool is_determiner(std::string_view word) {
  return word == "a" || word == "an" || word == "the";
}

bool is_keyword(std::string_view word) {
  return word == "if" || word == "and" || word == "or" || word == "unless" || word == "which";
}

LexResult tokenize(std::string_view source, const std::string& origin) {
  LexResult out;
  out.normalized.reserve(source.size());
  for (size_t i = 0; i < source.size(); ++i) {
    if (source[i] == '\r' && i + 1 < source.size() && source[i + 1] == '\n') continue;
    out.normalized.push_back(source[i]);
  }

  std::string_view text = out.normalized;
  int line_no = 1;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    size_t end = nl == std::string_view::npos ? text.size() : nl;
    LineLexer(text.substr(pos, end - pos), line_no, origin, out).run();
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
    ++line_no;
  }
  // A capitalized article opening a sentence is the determiner.
  for (size_t i = 0; i < out.tokens.size(); ++i) {
    Token& t = out.tokens[i];
    bool opens = i == 0 || out.tokens[i - 1].kind == TokenKind::kPeriod || out.tokens[i - 1].kind == TokenKind::kColon;
    if (opens && t.kind == TokenKind::kWord && (t.lexeme == "A" || t.lexeme == "An" || t.lexeme == "The")) {
      t.lexeme[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(t.lexeme[0])));
      t.kind = TokenKind::kDeterminer;
    }
  }
  return out;
}

}  // namespace lexlog

#include "lexlog/parser.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <set>

namespace lexlog {

namespace {

constexpr std::array<std::string_view, 6> kNotTheCase = {"it", "is", "not", "the", "case", "that"};
constexpr std::array<std::string_view, 5> kForAll = {"for", "all", "cases", "in", "which"};
constexpr std::array<std::string_view, 5> kItIsTheCase = {"it", "is", "the", "case", "that"};

template <size_t N>
bool starts_with_words(std::span<const Token> toks, const std::array<std::string_view, N>& words) {
  if (toks.size() < N) return false;
  for (size_t i = 0; i < N; ++i)
    if (toks[i].lexeme != words[i]) return false;
  return true;
}

template <size_t N>
bool equals_words(std::span<const Token> toks, const std::array<std::string_view, N>& words) {
  return toks.size() == N && starts_with_words(toks, words);
}

Span span_of(std::span<const Token> toks) {
  if (toks.empty()) return {};
  Span s = toks.front().span;
  if (toks.back().span.line == s.line) s.col_end = toks.back().span.col_end;
  return s;
}

void error(Diagnostics& diags, const std::string& origin, Span span, std::string msg) {
  diags.push_back(Diagnostic{Severity::kError, std::move(msg), origin, span});
}

class ConditionParser {
 public:
  ConditionParser(std::span<const ConditionLine> lines, Diagnostics& diags, const std::string& origin)
      : lines_(lines), diags_(diags), origin_(origin) {}

  std::optional<ConditionTree> parse_group(size_t begin, size_t end) {
    std::vector<ConditionTree> operands;
    std::vector<std::pair<Connective, int>> ops;
    const int base = lines_[begin].indent;
    size_t k = begin;
    bool first = true;
    while (k < end) {
      const ConditionLine& line = lines_[k];
      if (first) {
        if (line.connective != Connective::kNone) {
          fail(line.span, "condition starts with a connective");
          return std::nullopt;
        }
      } else {
        if (line.connective == Connective::kNone) {
          fail(line.span, "expected 'and' or 'or' at the start of the line");
          return std::nullopt;
        }
        if (line.indent < base) {
          fail(line.span, "inconsistent indentation: connective is shallower than the condition it continues");
          return std::nullopt;
        }
        ops.emplace_back(line.connective, line.indent);
      }
      auto operand = parse_operand(k, end);
      if (!operand) return std::nullopt;
      operands.push_back(std::move(*operand));
      first = false;
    }
    return combine(operands, ops, 0, operands.size());
  }

 private:
  // Parses one operand starting at line k; advances k past every line it uses.
  std::optional<ConditionTree> parse_operand(size_t& k, size_t end) {
    const ConditionLine& line = lines_[k];
    std::span<const Token> content(line.content);
    if (content.empty()) {
      fail(line.span, "empty condition");
      return std::nullopt;
    }
    if (starts_with_words(content, kNotTheCase)) {
      ConditionTree naf;
      naf.kind = ConditionKind::kNaf;
      naf.indent = line.indent;
      auto rest = content.subspan(kNotTheCase.size());
      if (!rest.empty()) {
        auto inner = parse_inline(rest, line);
        if (!inner) return std::nullopt;
        naf.children.push_back(std::move(*inner));
        ++k;
        return naf;
      }
      size_t block_end = k + 1;
      while (block_end < end && lines_[block_end].indent > line.indent &&
             lines_[block_end].indent >= lines_[k + 1].indent)
        ++block_end;
      if (block_end == k + 1) {
        fail(line.span, "'it is not the case that' needs a more deeply indented condition below it");
        return std::nullopt;
      }
      auto inner = parse_group(k + 1, block_end);
      if (!inner) return std::nullopt;
      naf.children.push_back(std::move(*inner));
      k = block_end;
      return naf;
    }
    if (starts_with_words(content, kForAll)) return parse_forall(k, end);
    if (equals_words(content, kItIsTheCase)) {
      fail(line.span, "'it is the case that' without a preceding 'for all cases in which'");
      return std::nullopt;
    }
    ConditionTree atom;
    atom.kind = ConditionKind::kAtom;
    atom.indent = line.indent;
    atom.phrase.assign(content.begin(), content.end());
    ++k;
    return atom;
  }

  std::optional<ConditionTree> parse_inline(std::span<const Token> toks, const ConditionLine& line) {
    if (starts_with_words(toks, kNotTheCase)) {
      auto rest = toks.subspan(kNotTheCase.size());
      if (rest.empty()) {
        fail(line.span, "'it is not the case that' needs a condition");
        return std::nullopt;
      }
      auto inner = parse_inline(rest, line);
      if (!inner) return std::nullopt;
      ConditionTree naf;
      naf.kind = ConditionKind::kNaf;
      naf.indent = line.indent;
      naf.children.push_back(std::move(*inner));
      return naf;
    }
    if (starts_with_words(toks, kForAll)) {
      fail(line.span, "'for all cases in which' must end its line when negated");
      return std::nullopt;
    }
    ConditionTree atom;
    atom.kind = ConditionKind::kAtom;
    atom.indent = line.indent;
    atom.phrase.assign(toks.begin(), toks.end());
    return atom;
  }

  std::optional<ConditionTree> parse_forall(size_t& k, size_t end) {
    const ConditionLine& header = lines_[k];
    auto rest = std::span<const Token>(header.content).subspan(kForAll.size());

    // Locate the matching separator, skipping nested quantifiers.
    int depth = 0;
    size_t sep = end;
    for (size_t j = k + 1; j < end; ++j) {
      std::span<const Token> c(lines_[j].content);
      if (starts_with_words(c, kForAll)) {
        ++depth;
      } else if (equals_words(c, kItIsTheCase) && lines_[j].connective == Connective::kNone) {
        if (depth == 0) {
          sep = j;
          break;
        }
        --depth;
      }
    }
    if (sep == end) {
      fail(header.span, "'for all cases in which' without a matching 'it is the case that'");
      return std::nullopt;
    }

    std::vector<ConditionLine> range_lines;
    if (!rest.empty()) {
      ConditionLine first;
      first.indent = header.indent;
      first.content.assign(rest.begin(), rest.end());
      first.span = span_of(rest);
      range_lines.push_back(std::move(first));
    }
    for (size_t j = k + 1; j < sep; ++j) range_lines.push_back(lines_[j]);
    if (range_lines.empty()) {
      fail(header.span, "'for all cases in which' has no range condition");
      return std::nullopt;
    }

    size_t body_end = sep + 1;
    while (body_end < end && lines_[body_end].indent >= lines_[sep].indent) ++body_end;
    if (body_end == sep + 1) {
      fail(lines_[sep].span, "'it is the case that' has no condition below it");
      return std::nullopt;
    }

    ConditionParser range_parser(range_lines, diags_, origin_);
    auto range = range_parser.parse_group(0, range_lines.size());
    if (!range) return std::nullopt;
    auto body = parse_group(sep + 1, body_end);
    if (!body) return std::nullopt;

    ConditionTree node;
    node.kind = ConditionKind::kForall;
    node.indent = header.indent;
    node.children.push_back(std::move(*range));
    node.children.push_back(std::move(*body));
    k = body_end;
    return node;
  }

  // Operator-precedence combination over operands[lo, hi) with ops between
  // them (ops[i-1] sits between operands[i-1] and operands[i]).
  ConditionTree combine(std::vector<ConditionTree>& operands,
                        const std::vector<std::pair<Connective, int>>& ops, size_t lo, size_t hi) {
    if (hi - lo == 1) return std::move(operands[lo]);
    auto key = [](const std::pair<Connective, int>& op) {
      return op.second * 2 + (op.first == Connective::kAnd ? 1 : 0);
    };
    int loosest = key(ops[lo]);
    for (size_t i = lo + 1; i < hi; ++i) loosest = std::min(loosest, key(ops[i - 1]));

    ConditionTree node;
    size_t seg_start = lo;
    for (size_t i = lo + 1; i <= hi; ++i) {
      if (i == hi || key(ops[i - 1]) == loosest) {
        if (i < hi) {
          node.kind = ops[i - 1].first == Connective::kAnd ? ConditionKind::kAnd : ConditionKind::kOr;
          node.indent = ops[i - 1].second;
        }
        ConditionTree child = combine(operands, ops, seg_start, i);
        if (child.kind == node.kind && (child.kind == ConditionKind::kAnd || child.kind == ConditionKind::kOr)) {
          for (auto& g : child.children) node.children.push_back(std::move(g));
        } else {
          node.children.push_back(std::move(child));
        }
        seg_start = i;
      }
    }
    return node;
  }

  void fail(Span span, std::string msg) { error(diags_, origin_, span, std::move(msg)); }

  std::span<const ConditionLine> lines_;
  Diagnostics& diags_;
  const std::string& origin_;
};

bool is_capitalized(const Token& t) {
  return !t.lexeme.empty() && std::isupper(static_cast<unsigned char>(t.lexeme[0]));
}

// Recognizes a header line; returns std::nullopt if the line is not header-shaped.
struct Header {
  SectionKind kind;
  std::string name;
};

std::optional<Header> match_header(const std::vector<Token>& toks) {
  auto lex = [&](size_t i) -> std::string_view { return toks[i].lexeme; };
  size_t n = toks.size();
  if (n == 5 && lex(0) == "the" && lex(1) == "knowledge" && lex(2) == "base" && lex(4) == "includes")
    return Header{SectionKind::kKnowledgeBase, toks[3].lexeme};
  if (n == 3 && lex(0) == "scenario" && lex(2) == "is") return Header{SectionKind::kScenario, toks[1].lexeme};
  if (n == 3 && lex(0) == "query" && lex(2) == "is") return Header{SectionKind::kQuery, toks[1].lexeme};
  if (n == 3 && lex(0) == "the" && lex(1) == "templates" && lex(2) == "are")
    return Header{SectionKind::kTemplates, ""};
  if (n == 4 && lex(0) == "the" && lex(1) == "superiority" && lex(2) == "relation" && lex(3) == "is")
    return Header{SectionKind::kSuperiority, ""};
  return std::nullopt;
}

bool header_shaped(const std::vector<Token>& toks) {
  return toks.size() >= 3 && toks.back().kind == TokenKind::kColon &&
         std::none_of(toks.begin(), toks.end() - 1,
                      [](const Token& t) { return t.kind == TokenKind::kPeriod || t.kind == TokenKind::kColon; });
}

}  // namespace

const char* section_kind_name(SectionKind k) {
  switch (k) {
    case SectionKind::kKnowledgeBase: return "knowledge base";
    case SectionKind::kScenario: return "scenario";
    case SectionKind::kQuery: return "query";
    case SectionKind::kTemplates: return "templates";
    case SectionKind::kSuperiority: return "superiority relation";
  }
  return "section";
}

std::vector<Token> sentence_tokens(const Sentence& sentence) {
  std::vector<Token> out;
  for (const auto& line : sentence.lines) out.insert(out.end(), line.tokens.begin(), line.tokens.end());
  return out;
}

std::string join_lexemes(std::span<const Token> tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t.lexeme;
  }
  return out;
}

ParseResult parse_document(const std::vector<Token>& tokens, const std::string& origin) {
  ParseResult result;
  result.document.origin = origin;
  auto& diags = result.diagnostics;

  std::vector<Line> lines;
  for (const auto& t : tokens) {
    if (lines.empty() || lines.back().line_no != t.span.line)
      lines.push_back(Line{t.span.line, t.indent, {}});
    lines.back().tokens.push_back(t);
  }

  std::set<std::pair<SectionKind, std::string>> seen;
  Section* current = nullptr;
  Sentence pending;
  auto pending_empty = [&] { return pending.lines.empty(); };

  auto finish_sentence = [&](const Token& period) {
    pending.period = period.span;
    if (current == nullptr) {
      Span at = pending.lines.front().tokens.front().span;
      error(diags, origin, at, "sentence outside any section");
    } else {
      current->sentences.push_back(std::move(pending));
    }
    pending = Sentence{};
  };

  for (size_t li = 0; li < lines.size(); ++li) {
    const Line& line = lines[li];
    if (pending_empty() && header_shaped(line.tokens)) {
      std::vector<Token> head(line.tokens.begin(), line.tokens.end() - 1);
      auto header = match_header(head);
      if (!header) {
        error(diags, origin, span_of(line.tokens), "unknown section header '" + join_lexemes(head) + ":'");
        current = nullptr;
        continue;
      }
      if (!seen.insert({header->kind, header->name}).second) {
        std::string what = section_kind_name(header->kind);
        error(diags, origin, span_of(line.tokens),
              "duplicate " + what + " section" + (header->name.empty() ? "" : " '" + header->name + "'"));
      }
      Section s;
      s.kind = header->kind;
      s.name = header->name;
      s.header = span_of(line.tokens);
      result.document.sections.push_back(std::move(s));
      current = &result.document.sections.back();
      continue;
    }

    for (size_t ti = 0; ti < line.tokens.size(); ++ti) {
      const Token& t = line.tokens[ti];
      if (t.kind == TokenKind::kPeriod) {
        if (pending_empty()) {
          error(diags, origin, t.span, "empty sentence");
          continue;
        }
        if (ti + 1 < line.tokens.size() && !is_capitalized(line.tokens[ti + 1])) {
          error(diags, origin, t.span,
                "a period must end the line or be followed by a capitalized sentence");
        }
        finish_sentence(t);
        continue;
      }
      if (pending.lines.empty() || pending.lines.back().line_no != line.line_no)
        pending.lines.push_back(Line{line.line_no, line.indent, {}});
      pending.lines.back().tokens.push_back(t);
    }
  }
  if (!pending_empty()) {
    const Token& last = pending.lines.back().tokens.back();
    error(diags, origin, last.span, "missing period at the end of the sentence");
  }

  for (auto& section : result.document.sections) {
    if (section.kind == SectionKind::kQuery && section.sentences.size() != 1) {
      error(diags, origin, section.header, "a query section holds exactly one query sentence");
    }
    if (section.kind == SectionKind::kSuperiority) {
      for (const auto& sentence : section.sentences) {
        auto toks = sentence_tokens(sentence);
        if (toks.size() != 3 || toks[1].lexeme != "overrides") {
          error(diags, origin, span_of(toks), "expected '<label> overrides <label>'");
          continue;
        }
        section.pairs.push_back(SuperiorityPair{toks[0], toks[2]});
      }
    }
  }
  return result;
}

ParseResult parse_source(std::string_view source, const std::string& origin) {
  LexResult lexed = tokenize(source, origin);
  ParseResult parsed = parse_document(lexed.tokens, origin);
  lexed.diagnostics.insert(lexed.diagnostics.end(), parsed.diagnostics.begin(), parsed.diagnostics.end());
  parsed.diagnostics = std::move(lexed.diagnostics);
  return parsed;
}

std::optional<ConditionTree> parse_condition_tree(std::span<const ConditionLine> lines, Diagnostics& diags,
                                                  const std::string& origin) {
  if (lines.empty()) return std::nullopt;
  ConditionParser parser(lines, diags, origin);
  return parser.parse_group(0, lines.size());
}

std::optional<SurfaceRule> parse_rule_sentence(const Sentence& sentence, Diagnostics& diags,
                                               const std::string& origin) {
  SurfaceRule rule;
  // Flatten with (line index, token index) addresses.
  struct Pos {
    size_t line;
    size_t tok;
  };
  std::vector<Pos> order;
  for (size_t l = 0; l < sentence.lines.size(); ++l)
    for (size_t t = 0; t < sentence.lines[l].tokens.size(); ++t) order.push_back({l, t});
  if (order.empty()) return std::nullopt;
  auto tok = [&](size_t i) -> const Token& { return sentence.lines[order[i].line].tokens[order[i].tok]; };
  rule.span = tok(0).span;

  size_t i = 0;
  auto colon_follows = [&](size_t j) { return j + 1 < order.size() && tok(j + 1).kind == TokenKind::kColon; };
  auto is_strength = [&](size_t j) {
    return colon_follows(j) && (tok(j).lexeme == "strictly" || tok(j).lexeme == "defeater");
  };
  if (colon_follows(i) && !is_strength(i)) {
    rule.label = tok(i).lexeme;
    rule.label_span = tok(i).span;
    i += 2;
  }
  if (i < order.size() && is_strength(i)) {
    rule.strength = tok(i).lexeme == "strictly" ? RuleStrength::kStrict : RuleStrength::kDefeater;
    i += 2;
  }

  // A clause keyword counts only at the start or the end of a line.
  auto clause_keyword_at = [&](size_t j, std::string_view word) {
    if (tok(j).lexeme != word) return false;
    const Pos& p = order[j];
    bool first_of_line = p.tok == 0 || (j > 0 && order[j - 1].line != p.line) ||
                         (p.line == order[i].line && j == i);
    bool last_of_line = p.tok + 1 == sentence.lines[p.line].tokens.size();
    return first_of_line || last_of_line;
  };

  size_t if_at = order.size();
  size_t unless_at = order.size();
  for (size_t j = i; j < order.size(); ++j) {
    if (if_at == order.size() && unless_at == order.size() && clause_keyword_at(j, "if")) if_at = j;
    if (unless_at == order.size() && clause_keyword_at(j, "unless")) unless_at = j;
  }
  size_t head_end = std::min(if_at, unless_at);
  for (size_t j = i; j < head_end; ++j) rule.head.push_back(tok(j));
  if (rule.head.empty()) {
    error(diags, origin, tok(std::min(i, order.size() - 1)).span, "rule has no conclusion");
    return std::nullopt;
  }

  // Builds condition lines for tokens in [from, to).
  auto build_lines = [&](size_t from, size_t to) {
    std::vector<ConditionLine> out;
    for (size_t j = from; j < to; ++j) {
      const Token& t = tok(j);
      const Line& line = sentence.lines[order[j].line];
      bool new_line = out.empty() || order[j - 1].line != order[j].line;
      if (new_line) {
        ConditionLine cl;
        cl.indent = line.indent;
        cl.span = t.span;
        if (t.lexeme == "and" || t.lexeme == "or") {
          // A connective cannot open the first line following "if"/"unless".
          cl.connective = t.lexeme == "and" ? Connective::kAnd : Connective::kOr;
          out.push_back(std::move(cl));
          continue;
        }
        out.push_back(std::move(cl));
      }
      out.back().content.push_back(t);
      out.back().span.col_end = t.span.col_end;
    }
    return out;
  };

  auto parse_clause = [&](size_t kw, size_t to, const char* what) -> std::optional<ConditionTree> {
    auto lines = build_lines(kw + 1, to);
    if (lines.empty()) {
      error(diags, origin, tok(kw).span, std::string("'") + what + "' is not followed by any condition");
      return std::nullopt;
    }
    // Conditions sharing the keyword's line inherit that line's indentation.
    return parse_condition_tree(lines, diags, origin);
  };

  if (if_at < order.size()) {
    auto cond = parse_clause(if_at, std::min(unless_at, order.size()), "if");
    if (!cond) return std::nullopt;
    rule.conditions = std::move(*cond);
  }
  if (unless_at < order.size()) {
    auto exc = parse_clause(unless_at, order.size(), "unless");
    if (!exc) return std::nullopt;
    rule.exceptions = std::move(*exc);
  }
  return rule;
}

}  // namespace lexlog

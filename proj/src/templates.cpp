#include "lexlog/templates.hpp"

#include <algorithm>
#include <cctype>

#include "lexlog/parser.hpp"

namespace lexlog {

namespace {

struct BuiltinDef {
  BuiltinOp op;
  const char* name;
  std::vector<std::string> words;
};

const std::vector<BuiltinDef>& builtin_defs() {
  static const std::vector<BuiltinDef> defs = {
      {BuiltinOp::kGe, ">=", {">="}},
      {BuiltinOp::kLe, "=<", {"=<"}},
      {BuiltinOp::kLt, "<", {"<"}},
      {BuiltinOp::kGt, ">", {">"}},
      {BuiltinOp::kEq, "=", {"="}},
      {BuiltinOp::kIs, "is", {"is"}},
      {BuiltinOp::kBeforeOrAt, "is before or at the same time as",
       {"is", "before", "or", "at", "the", "same", "time", "as"}},
      {BuiltinOp::kDifferent, "is different from", {"is", "different", "from"}},
  };
  return defs;
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

bool valid_entity_arg(std::span<const Token> arg) {
  if (arg.empty()) return false;
  for (size_t i = 0; i < arg.size(); ++i) {
    const Token& t = arg[i];
    if (t.kind == TokenKind::kPeriod || t.kind == TokenKind::kColon || t.kind == TokenKind::kSlotMarker ||
        t.kind == TokenKind::kComparison)
      return false;
    if (i > 0 && (t.kind == TokenKind::kDeterminer || t.lexeme == "which")) return false;
  }
  return true;
}

bool segment(const Template& t, std::span<const Token> phrase, size_t pi, size_t ti,
             std::vector<std::vector<Token>>& args) {
  if (pi == t.pattern.size()) return ti == phrase.size();
  const PatternItem& item = t.pattern[pi];
  if (!item.is_slot) {
    if (ti >= phrase.size() || phrase[ti].lexeme != item.word) return false;
    return segment(t, phrase, pi + 1, ti + 1, args);
  }
  // Slot: try the longest extent first.
  if (ti >= phrase.size()) return false;
  size_t max_len = phrase.size() - ti;
  for (size_t len = max_len; len >= 1; --len) {
    auto arg = phrase.subspan(ti, len);
    if (item.kind == SlotKind::kEntity && !valid_entity_arg(arg)) continue;
    args.emplace_back(arg.begin(), arg.end());
    if (segment(t, phrase, pi + 1, ti + len, args)) return true;
    args.pop_back();
  }
  return false;
}

Template make_builtin(const BuiltinDef& def) {
  Template t;
  t.pattern.push_back(PatternItem{true, "a value", SlotKind::kEntity});
  for (const auto& w : def.words) t.pattern.push_back(PatternItem{false, w, SlotKind::kEntity});
  t.pattern.push_back(PatternItem{true, "a value", SlotKind::kEntity});
  t.arity = 2;
  t.id = canonical_id(def.words, 2);
  t.builtin = def.op;
  return t;
}

bool is_symbolic_name(const Token& t) {
  return t.kind == TokenKind::kWord && !t.lexeme.empty() && std::isupper(static_cast<unsigned char>(t.lexeme[0]));
}

}  // namespace

const char* builtin_op_name(BuiltinOp op) {
  for (const auto& d : builtin_defs())
    if (d.op == op) return d.name;
  return "none";
}

std::optional<BuiltinOp> builtin_op_from_name(std::string_view name) {
  for (const auto& d : builtin_defs())
    if (name == d.name) return d.op;
  return std::nullopt;
}

size_t Template::fixed_word_count() const {
  return static_cast<size_t>(std::count_if(pattern.begin(), pattern.end(), [](const PatternItem& p) { return !p.is_slot; }));
}

std::vector<std::string> Template::fixed_words() const {
  std::vector<std::string> out;
  for (const auto& p : pattern)
    if (!p.is_slot) out.push_back(p.word);
  return out;
}

std::string Template::pattern_text() const {
  std::string out;
  for (const auto& p : pattern) {
    if (!out.empty()) out += ' ';
    if (p.is_slot) {
      out += '*' + p.word + '*';
    } else {
      out += p.word;
    }
  }
  return out;
}

std::string canonical_id(const std::vector<std::string>& fixed_words, int arity) {
  std::string out;
  for (const auto& w : fixed_words) {
    if (!out.empty()) out += '_';
    out += lower(w);
  }
  return out + "/" + std::to_string(arity);
}

TemplateRegistry::TemplateRegistry() {
  for (const auto& d : builtin_defs()) builtins_.push_back(make_builtin(d));
}

std::optional<std::string> TemplateRegistry::add(std::vector<PatternItem> pattern, std::string& error,
                                                 bool inferred) {
  if (pattern.empty()) {
    error = "empty template";
    return std::nullopt;
  }
  int arity = 0;
  for (size_t i = 0; i < pattern.size(); ++i) {
    if (!pattern[i].is_slot) continue;
    ++arity;
    if (i > 0 && pattern[i - 1].is_slot) {
      error = "template has two adjacent slots";
      return std::nullopt;
    }
    pattern[i].kind =
        i > 0 && !pattern[i - 1].is_slot && pattern[i - 1].word == "that" ? SlotKind::kProposition : SlotKind::kEntity;
  }
  Template t;
  t.pattern = std::move(pattern);
  t.arity = arity;
  t.id = canonical_id(t.fixed_words(), arity);
  t.inferred = inferred;
  if (t.fixed_word_count() == 0) {
    error = "template has no fixed words";
    return std::nullopt;
  }
  for (const auto& b : builtins_) {
    if (b.id == t.id) {
      error = "template '" + t.pattern_text() + "' uses the reserved builtin form '" + b.pattern_text() + "'";
      return std::nullopt;
    }
  }
  if (user_index_.count(t.id)) {
    error = "duplicate template '" + t.pattern_text() + "'";
    return std::nullopt;
  }
  user_index_[t.id] = user_.size();
  std::string id = t.id;
  user_.push_back(std::move(t));
  return id;
}

const Template* TemplateRegistry::find(const std::string& id) const {
  auto it = user_index_.find(id);
  if (it != user_index_.end()) return &user_[it->second];
  for (const auto& b : builtins_)
    if (b.id == id) return &b;
  return nullptr;
}

std::vector<const Template*> TemplateRegistry::user_templates() const {
  std::vector<const Template*> out;
  for (const auto& t : user_) out.push_back(&t);
  return out;
}

MatchOutcome TemplateRegistry::match(std::span<const Token> phrase) const {
  MatchOutcome outcome;
  auto best_of = [&](const std::vector<Template>& pool) -> bool {
    std::vector<TemplateMatch> found;
    for (const auto& t : pool) {
      std::vector<std::vector<Token>> args;
      if (segment(t, phrase, 0, 0, args)) found.push_back(TemplateMatch{&t, std::move(args)});
    }
    if (found.empty()) return false;
    size_t best = 0;
    for (const auto& m : found) best = std::max(best, m.tmpl->fixed_word_count());
    std::vector<const TemplateMatch*> top;
    for (const auto& m : found)
      if (m.tmpl->fixed_word_count() == best) top.push_back(&m);
    if (top.size() > 1) {
      outcome.ambiguous = true;
      outcome.error = "ambiguous sentence '" + join_lexemes(phrase) + "' matches both '" +
                      top[0]->tmpl->pattern_text() + "' and '" + top[1]->tmpl->pattern_text() + "'";
      return true;
    }
    outcome.match = *top[0];
    return true;
  };
  if (best_of(user_)) return outcome;
  if (best_of(builtins_)) return outcome;
  outcome.error = "no template matches '" + join_lexemes(phrase) + "'";
  return outcome;
}

std::optional<std::vector<std::vector<Token>>> match_template(const Template& t, std::span<const Token> phrase) {
  std::vector<std::vector<Token>> args;
  if (segment(t, phrase, 0, 0, args)) return args;
  return std::nullopt;
}

std::optional<std::vector<PatternItem>> parse_template_pattern(std::span<const Token> tokens, std::string& error) {
  std::vector<PatternItem> out;
  size_t i = 0;
  while (i < tokens.size()) {
    if (tokens[i].kind != TokenKind::kSlotMarker) {
      out.push_back(PatternItem{false, tokens[i].lexeme, SlotKind::kEntity});
      ++i;
      continue;
    }
    size_t j = i + 1;
    while (j < tokens.size() && tokens[j].kind != TokenKind::kSlotMarker) ++j;
    if (j == tokens.size()) {
      error = "unterminated slot marker";
      return std::nullopt;
    }
    if (j == i + 1) {
      error = "empty slot";
      return std::nullopt;
    }
    out.push_back(PatternItem{true, join_lexemes(tokens.subspan(i + 1, j - i - 1)), SlotKind::kEntity});
    i = j + 1;
  }
  if (out.empty()) {
    error = "empty template";
    return std::nullopt;
  }
  return out;
}

std::optional<std::vector<PatternItem>> infer_template_pattern(std::span<const Token> phrase) {
  std::vector<PatternItem> out;
  size_t i = 0;
  auto push_slot = [&](std::string noun) -> bool {
    if (!out.empty() && out.back().is_slot) return false;
    out.push_back(PatternItem{true, std::move(noun), SlotKind::kEntity});
    return true;
  };
  while (i < phrase.size()) {
    const Token& t = phrase[i];
    if (t.kind == TokenKind::kDeterminer && i + 1 < phrase.size() && phrase[i + 1].kind == TokenKind::kWord) {
      std::string noun = phrase[i + 1].lexeme;
      size_t next = i + 2;
      if (next < phrase.size() && is_symbolic_name(phrase[next])) ++next;
      const char* det = std::string("aeiou").find(noun[0]) != std::string::npos ? "an " : "a ";
      if (!push_slot(det + noun)) return std::nullopt;
      i = next;
      continue;
    }
    if (is_symbolic_name(t) || t.kind == TokenKind::kNumber || t.kind == TokenKind::kDate) {
      if (!push_slot("a thing")) return std::nullopt;
      ++i;
      continue;
    }
    if (t.lexeme == "that" && i + 1 < phrase.size()) {
      out.push_back(PatternItem{false, "that", SlotKind::kEntity});
      if (!push_slot("a message")) return std::nullopt;
      out.back().kind = SlotKind::kProposition;
      break;
    }
    out.push_back(PatternItem{false, t.lexeme, SlotKind::kEntity});
    ++i;
  }
  bool any_fixed = std::any_of(out.begin(), out.end(), [](const PatternItem& p) { return !p.is_slot; });
  if (!any_fixed) return std::nullopt;
  return out;
}

}  // namespace lexlog

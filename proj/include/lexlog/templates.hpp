#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lexlog/diagnostic.hpp"
#include "lexlog/lexer.hpp"

namespace lexlog {

enum class SlotKind { kEntity, kProposition };

enum class BuiltinOp {
  kNone,
  kGe,
  kLe,
  kLt,
  kGt,
  kEq,
  kIs,
  kBeforeOrAt,
  kDifferent,
};

const char* builtin_op_name(BuiltinOp op);
std::optional<BuiltinOp> builtin_op_from_name(std::string_view name);

struct PatternItem {
  bool is_slot = false;
  std::string word;  // fixed word, or the slot's noun phrase ("a person")
  SlotKind kind = SlotKind::kEntity;

  bool operator==(const PatternItem&) const = default;
};

struct Template {
  std::vector<PatternItem> pattern;
  std::string id;
  int arity = 0;
  BuiltinOp builtin = BuiltinOp::kNone;
  bool inferred = false;

  size_t fixed_word_count() const;
  std::vector<std::string> fixed_words() const;
  std::string pattern_text() const;  // "*a person* attends *a meeting*"
};

// Id from fixed words: lowercase, joined by '_', plus "/arity".
std::string canonical_id(const std::vector<std::string>& fixed_words, int arity);

struct TemplateMatch {
  const Template* tmpl = nullptr;
  std::vector<std::vector<Token>> args;
};

struct MatchOutcome {
  std::optional<TemplateMatch> match;
  std::string error;  // set when match is empty
  bool ambiguous = false;
};

class TemplateRegistry {
 public:
  TemplateRegistry();

  // Registers a pattern; returns the id or an error message.
  std::optional<std::string> add(std::vector<PatternItem> pattern, std::string& error, bool inferred = false);

  const Template* find(const std::string& id) const;
  // User templates in registration order (builtins excluded).
  std::vector<const Template*> user_templates() const;
  const std::vector<Template>& builtins() const { return builtins_; }

  MatchOutcome match(std::span<const Token> phrase) const;

 private:
  std::vector<Template> user_;
  std::vector<Template> builtins_;
  std::map<std::string, size_t> user_index_;
};

// Reads "*a person* attends *a meeting*" style token sequences.
std::optional<std::vector<PatternItem>> parse_template_pattern(std::span<const Token> tokens, std::string& error);

// Builds a pattern from a sentence by turning determiner-introduced noun
// phrases into slots (determiner, one noun word, optional capitalized name).
std::optional<std::vector<PatternItem>> infer_template_pattern(std::span<const Token> phrase);

// Segments a phrase against one template (leftmost-longest slots).
std::optional<std::vector<std::vector<Token>>> match_template(const Template& t, std::span<const Token> phrase);

}  // namespace lexlog

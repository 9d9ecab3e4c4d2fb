#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lexlog/lexer.hpp"

namespace lexlog {

// One physical line of a sentence.
struct Line {
  int line_no = 0;
  int indent = 0;
  std::vector<Token> tokens;
};

struct Sentence {
  std::vector<Line> lines;  // the terminating period is not included
  Span period;
};

enum class SectionKind { kKnowledgeBase, kScenario, kQuery, kTemplates, kSuperiority };

const char* section_kind_name(SectionKind k);

struct SuperiorityPair {
  Token superior;
  Token inferior;
};

struct Section {
  SectionKind kind = SectionKind::kKnowledgeBase;
  std::string name;  // empty for the templates and superiority sections
  Span header;
  std::vector<Sentence> sentences;
  std::vector<SuperiorityPair> pairs;  // superiority sections only
};

struct SurfaceDocument {
  std::string origin;
  std::vector<Section> sections;
};

enum class Connective { kNone, kAnd, kOr };

// A condition line after the rule's "if"/"unless", split from its leading
// connective.
struct ConditionLine {
  int indent = 0;
  Connective connective = Connective::kNone;
  std::vector<Token> content;
  Span span;
};

enum class ConditionKind { kAnd, kOr, kNaf, kForall, kAtom };

struct ConditionTree {
  ConditionKind kind = ConditionKind::kAtom;
  // Indentation of the connective (And/Or) or of the introducing line.
  int indent = 0;
  std::vector<ConditionTree> children;  // Forall: {range, body}; Naf: {inner}
  std::vector<Token> phrase;            // kAtom only
};

enum class RuleStrength { kDefault, kStrict, kDefeater };

struct SurfaceRule {
  std::string label;
  Span label_span;
  RuleStrength strength = RuleStrength::kDefault;
  std::vector<Token> head;
  std::optional<ConditionTree> conditions;
  std::optional<ConditionTree> exceptions;
  Span span;
};

}  // namespace lexlog

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lexlog/compiler.hpp"
#include "lexlog/ir.hpp"

namespace lexlog {

struct ExplanationTree;

enum class DateStyle { kIso, kTranscript };

// How terms outside rule scope are written.
struct TextStyle {
  DateStyle dates = DateStyle::kIso;
  // Unbound variables as "\"a noun\"" (explanation leaves) instead of "a noun".
  bool quote_unbound = false;
};

// "2022-06-20" -> "2022-6-20T0:0:0.0"
std::string transcript_date(const std::string& iso);

// Sentence for a literal, including any deontic prefix. Variables render
// indefinitely. Fails when a predicate has no template.
std::optional<std::string> render_literal(const TemplateRegistry& templates, const Literal& l,
                                          const TextStyle& style = {}, std::string* error = nullptr);

// Display form of one rule: prohibitions as "it is prohibited that ...",
// permission exceptions as "<gerund phrase> is allowed if ...".
std::optional<std::string> render_rule(const KnowledgeBase& kb, const Rule& rule, std::string* error = nullptr);

struct RuleTrace {
  std::string label;
  int line = 0;  // 1-based line of the rule's first line in the output
};

struct RenderResult {
  std::string text;
  std::vector<RuleTrace> trace;
  std::vector<std::string> errors;
};

// Canonical .le text that recompiles to an alpha-equivalent KB.
RenderResult render_document(const KnowledgeBase& kb);

std::string render_explanation(const ExplanationTree& tree);

struct RoundtripReport {
  bool ok = true;
  std::vector<KbDifference> failures;
  std::string rendered;
};

// Renders kb, recompiles the text with the same options and compares.
RoundtripReport roundtrip_check(const KnowledgeBase& kb, const CompileOptions& options = {});

// compile(doc), then the check above. Compile errors become failures.
RoundtripReport roundtrip_check(std::string_view source, const CompileOptions& options = {});

}  // namespace lexlog

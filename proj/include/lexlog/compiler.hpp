#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lexlog/diagnostic.hpp"
#include "lexlog/ir.hpp"
#include "lexlog/surface.hpp"

namespace lexlog {

struct CompileOptions {
  // Encode "unless" as Naf conjuncts in the base rule instead of
  // exception rules plus superiority.
  bool unless_naf = false;
};

struct CompileResult {
  std::optional<KnowledgeBase> kb;
  Diagnostics diagnostics;
};

CompileResult compile_document(const SurfaceDocument& doc, const CompileOptions& options = {});

// tokenize + parse + compile.
CompileResult compile_source(std::string_view source, const std::string& origin,
                             const CompileOptions& options = {});

struct UnlessExpansion {
  Rule base;
  std::vector<Rule> exceptions;
  std::vector<std::pair<std::string, std::string>> superiority;
};

// base must have a body. Each disjunct yields one exception rule (or one
// Naf conjunct under options.unless_naf).
UnlessExpansion expand_unless(Rule base, const std::vector<Condition>& disjuncts, const CompileOptions& options);

// Splits an unless-derived rule back into (conditions, exception disjuncts).
// Works for both encodings; returns nullopt for ordinary rules.
struct UnlessParts {
  Condition conditions;
  std::vector<Condition> disjuncts;
};
std::optional<UnlessParts> unless_parts(const KnowledgeBase& kb, const Rule& base);

// Validates and returns the relation; errors name the offending labels.
std::optional<std::vector<std::pair<std::string, std::string>>> compile_superiority(
    const std::vector<std::pair<std::string, std::string>>& pairs, const std::vector<std::string>& labels,
    std::vector<std::string>& errors);

// Names of variables that break range restriction (empty when the rule is fine).
std::vector<std::string> range_restriction_violations(const Rule& rule);

// Display name for a variable: its symbolic name, else its noun.
std::string variable_display(const Term& v);

}  // namespace lexlog

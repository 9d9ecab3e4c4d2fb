#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lexlog/diagnostic.hpp"
#include "lexlog/surface.hpp"

namespace lexlog {

struct ParseResult {
  SurfaceDocument document;
  Diagnostics diagnostics;
};

// Groups tokens into sections and period-terminated sentences.
//
// Section headers (each on a line of its own, ending in a colon):
//   the knowledge base <name> includes:
//   scenario <name> is:
//   query <name> is:
//   the templates are:
//   the superiority relation is:
ParseResult parse_document(const std::vector<Token>& tokens, const std::string& origin);

// Convenience: tokenize + parse, merging diagnostics.
ParseResult parse_source(std::string_view source, const std::string& origin);

// Builds the connective tree of a rule's conditions. Deeper indentation binds
// tighter; at equal indentation "and" binds tighter than "or".
std::optional<ConditionTree> parse_condition_tree(std::span<const ConditionLine> lines,
                                                  Diagnostics& diags, const std::string& origin);

// Splits a knowledge-base sentence into label, strength prefix, head and
// condition/exception trees.
std::optional<SurfaceRule> parse_rule_sentence(const Sentence& sentence, Diagnostics& diags,
                                               const std::string& origin);

// All tokens of a sentence in order.
std::vector<Token> sentence_tokens(const Sentence& sentence);

std::string join_lexemes(std::span<const Token> tokens);

}  // namespace lexlog

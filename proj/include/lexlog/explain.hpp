#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lexlog/engine.hpp"

namespace lexlog {

enum class NodeKind { kProved, kNotProvable };
enum class Provenance { kScenario, kRule, kBuiltin, kNone };

const char* provenance_name(Provenance p);

struct ExplanationNode {
  NodeKind kind = NodeKind::kProved;
  Literal literal;  // ground when proved; may hold variables in failure leaves
  std::string text;
  Provenance provenance = Provenance::kNone;
  std::string rule;                   // label of the rule used (kRule)
  std::vector<std::string> defeated;  // attacking rules this node's rule beats
  std::vector<ExplanationNode> children;
};

struct ExplanationTree {
  ExplanationNode root;
};

// Tree for a literal that is defeasibly provable in the engine.
std::optional<ExplanationTree> explain_literal(const Engine& engine, const TemplateRegistry& templates, size_t id,
                                               std::string& error);

// Tree for the answer at index (0-based) of the query.
std::optional<ExplanationTree> explain(const Engine& engine, const KnowledgeBase& kb, const Query& query,
                                       size_t answer_index, std::string& error);

}  // namespace lexlog

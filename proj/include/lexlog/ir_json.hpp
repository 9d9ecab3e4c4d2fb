#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "lexlog/ir.hpp"

namespace lexlog {

inline constexpr const char* kIrSchema = "lexlog-ir v1";
inline constexpr const char* kOutSchema = "lexlog-out v1";

using ordered_json = nlohmann::ordered_json;

ordered_json term_to_json(const Term& t);
ordered_json literal_to_json(const Literal& l);
ordered_json condition_to_json(const Condition& c);
ordered_json rule_to_json(const Rule& r);
ordered_json kb_to_json(const KnowledgeBase& kb);

// Throws std::runtime_error (or a json exception) on malformed input.
Term term_from_json(const nlohmann::json& j);
Literal literal_from_json(const nlohmann::json& j);
Condition condition_from_json(const nlohmann::json& j);
Rule rule_from_json(const nlohmann::json& j);

// Structural validation included; error describes the first problem.
std::optional<KnowledgeBase> kb_from_json(const nlohmann::json& j, std::string& error);

}  // namespace lexlog

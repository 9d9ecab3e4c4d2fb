#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "lexlog/explain.hpp"
#include "lexlog/ir_json.hpp"

namespace lexlog {

// JSON operations shared by the CLI and the HTTP service. status is an
// HTTP code: 200, 400 (malformed request) or 422 (compile diagnostics).
struct ApiResult {
  int status = 200;
  ordered_json body;

  // Exact bytes both front ends emit.
  std::string text() const { return body.dump(2) + "\n"; }
};

// {source, origin?, unless-naf?}
ApiResult api_compile(const nlohmann::json& request);
// {source | ir, scenario, query, unless-naf?}
ApiResult api_query(const nlohmann::json& request);
// {source | ir, scenario, query, answer-index?}  (answer-index is 0-based)
ApiResult api_explain(const nlohmann::json& request);
// {ir}
ApiResult api_render(const nlohmann::json& request);
// {source, unless-naf?}
ApiResult api_check(const nlohmann::json& request);

ordered_json explanation_to_json(const ExplanationNode& node);
ordered_json verdict_to_json(const Engine& engine, size_t id);

}  // namespace lexlog

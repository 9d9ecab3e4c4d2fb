#include "lexlog/api.hpp"

#include <algorithm>
#include <stdexcept>

#include "lexlog/compiler.hpp"
#include "lexlog/renderer.hpp"

namespace lexlog {

namespace {

struct BadRequest : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ApiResult bad_request(const std::string& msg) {
  ApiResult r;
  r.status = 400;
  r.body["error"] = msg;
  return r;
}

ApiResult unprocessable(const Diagnostics& diags) {
  ApiResult r;
  r.status = 422;
  r.body["diagnostics"] = diagnostics_to_json(diags);
  return r;
}

CompileOptions options_of(const nlohmann::json& req) {
  CompileOptions o;
  o.unless_naf = req.value("unless-naf", false);
  return o;
}

std::string string_field(const nlohmann::json& req, const char* key) {
  if (!req.contains(key)) throw BadRequest(std::string("missing field '") + key + "'");
  if (!req.at(key).is_string()) throw BadRequest(std::string("field '") + key + "' must be a string");
  return req.at(key).get<std::string>();
}

// Loads the KB from "ir" or "source"; on failure fills result and returns nullopt.
std::optional<KnowledgeBase> load_kb(const nlohmann::json& req, ApiResult& result) {
  if (req.contains("ir")) {
    std::string err;
    auto kb = kb_from_json(req.at("ir"), err);
    if (!kb) result = bad_request("invalid IR: " + err);
    return kb;
  }
  std::string source = string_field(req, "source");
  CompileResult c = compile_source(source, req.value("origin", "<input>"), options_of(req));
  if (!c.kb) result = unprocessable(c.diagnostics);
  return std::move(c.kb);
}

std::string text_of(const TemplateRegistry& reg, const Literal& l) {
  auto t = render_literal(reg, l);
  return t ? *t : literal_key(l);
}

std::string value_text(const TemplateRegistry& reg, const Term& t) {
  if (t.kind == TermKind::kReified) return text_of(reg, *t.prop);
  return t.name;
}

struct Evaluated {
  KnowledgeBase kb;
  std::optional<Engine> engine;
  const Query* query = nullptr;
  std::string scenario;
};

std::optional<Evaluated> evaluate(const nlohmann::json& req, ApiResult& result) {
  auto kb = load_kb(req, result);
  if (!kb) return std::nullopt;
  Evaluated ev;
  ev.kb = std::move(*kb);
  std::string qname = string_field(req, "query");
  ev.query = ev.kb.find_query(qname);
  if (!ev.query) {
    result = bad_request("unknown query '" + qname + "'");
    return std::nullopt;
  }
  if (req.contains("scenario")) {
    ev.scenario = string_field(req, "scenario");
    std::string err;
    ev.engine = Engine::run(ev.kb, ev.scenario, err);
    if (!ev.engine) {
      result = bad_request(err);
      return std::nullopt;
    }
  } else if (ev.kb.scenarios.empty()) {
    ev.engine = Engine::run(ev.kb, nullptr);
  } else {
    result = bad_request("missing field 'scenario'");
    return std::nullopt;
  }
  return ev;
}

ordered_json tags_json(const TagSet& t) {
  ordered_json tags = ordered_json::array();
  if (t.plus_delta) tags.push_back("+D");
  if (t.minus_delta) tags.push_back("-D");
  if (t.plus_partial) tags.push_back("+d");
  if (t.minus_partial) tags.push_back("-d");
  if (t.withheld) tags.push_back("withheld");
  return tags;
}

ordered_json conflicts_json(const Engine& engine, const TemplateRegistry& reg, const std::string& scenario) {
  ordered_json out = ordered_json::array();
  for (const auto& c : detect_blocked_conflicts(engine)) {
    ordered_json j;
    j["scenario"] = scenario;
    j["first"] = text_of(reg, engine.literal(c.first));
    j["second"] = text_of(reg, engine.literal(c.second));
    j["first-rules"] = c.first_rules;
    j["second-rules"] = c.second_rules;
    out.push_back(j);
  }
  return out;
}

template <typename F>
ApiResult guarded(const nlohmann::json& req, F f) {
  if (!req.is_object()) return bad_request("request body must be a JSON object");
  try {
    return f();
  } catch (const BadRequest& e) {
    return bad_request(e.what());
  } catch (const nlohmann::json::exception& e) {
    return bad_request(e.what());
  }
}

}  // namespace

ordered_json verdict_to_json(const Engine& engine, size_t id) {
  ordered_json j;
  j["literal"] = literal_to_json(engine.literal(id));
  j["tags"] = tags_json(engine.tags(id));
  j["supporting-rules"] = supporting_rules(engine, id);
  return j;
}

ordered_json explanation_to_json(const ExplanationNode& node) {
  ordered_json j;
  j["kind"] = node.kind == NodeKind::kProved ? "proved" : "not-provable";
  j["text"] = node.text;
  j["literal"] = literal_to_json(node.literal);
  j["provenance"] = provenance_name(node.provenance);
  if (!node.rule.empty()) j["rule"] = node.rule;
  if (!node.defeated.empty()) j["defeats"] = node.defeated;
  j["children"] = ordered_json::array();
  for (const auto& c : node.children) j["children"].push_back(explanation_to_json(c));
  return j;
}

ApiResult api_compile(const nlohmann::json& req) {
  return guarded(req, [&] {
    std::string source = string_field(req, "source");
    CompileResult c = compile_source(source, req.value("origin", "<input>"), options_of(req));
    if (!c.kb) return unprocessable(c.diagnostics);
    ApiResult r;
    r.body["ir"] = kb_to_json(*c.kb);
    r.body["diagnostics"] = diagnostics_to_json(c.diagnostics);
    return r;
  });
}

ApiResult api_query(const nlohmann::json& req) {
  return guarded(req, [&] {
    ApiResult r;
    auto ev = evaluate(req, r);
    if (!ev) return r;
    const Engine& engine = *ev->engine;
    const auto& reg = ev->kb.templates;
    r.body["schema"] = kOutSchema;
    r.body["scenario"] = ev->scenario;
    r.body["query"] = ev->query->name;
    r.body["answers"] = ordered_json::array();
    for (const auto& a : answer_query(engine, ev->query->literal)) {
      ordered_json aj;
      aj["text"] = text_of(reg, engine.literal(a.literal));
      aj["bindings"] = ordered_json::object();
      for (const auto& [noun, value] : a.bindings) aj["bindings"][noun] = value_text(reg, value);
      r.body["answers"].push_back(aj);
    }
    std::vector<size_t> ids(engine.literal_count());
    for (size_t i = 0; i < ids.size(); ++i) ids[i] = i;
    std::sort(ids.begin(), ids.end(), [&](size_t a, size_t b) {
      return literal_key(engine.literal(a)) < literal_key(engine.literal(b));
    });
    r.body["verdicts"] = ordered_json::array();
    for (size_t id : ids) {
      Subst s;
      if (match(ev->query->literal, engine.literal(id), s)) r.body["verdicts"].push_back(verdict_to_json(engine, id));
    }
    r.body["conflicts"] = conflicts_json(engine, reg, ev->scenario);
    r.body["warnings"] = engine.warnings();
    return r;
  });
}

ApiResult api_explain(const nlohmann::json& req) {
  return guarded(req, [&] {
    ApiResult r;
    auto ev = evaluate(req, r);
    if (!ev) return r;
    int index = req.value("answer-index", 0);
    if (index < 0) return bad_request("answer-index must be non-negative");
    std::string err;
    auto tree = explain(*ev->engine, ev->kb, *ev->query, static_cast<size_t>(index), err);
    if (!tree) return bad_request(err);
    r.body["schema"] = kOutSchema;
    r.body["scenario"] = ev->scenario;
    r.body["query"] = ev->query->name;
    r.body["answer-index"] = index;
    r.body["tree"] = explanation_to_json(tree->root);
    r.body["transcript"] = render_explanation(*tree);
    return r;
  });
}

ApiResult api_render(const nlohmann::json& req) {
  return guarded(req, [&] {
    if (!req.contains("ir")) return bad_request("missing field 'ir'");
    std::string err;
    auto kb = kb_from_json(req.at("ir"), err);
    if (!kb) return bad_request("invalid IR: " + err);
    RenderResult rendered = render_document(*kb);
    if (!rendered.errors.empty()) {
      Diagnostics diags;
      for (const auto& e : rendered.errors) diags.push_back(Diagnostic{Severity::kError, e, "<ir>", {}});
      return unprocessable(diags);
    }
    ApiResult r;
    r.body["source"] = rendered.text;
    r.body["trace"] = ordered_json::array();
    for (const auto& t : rendered.trace) r.body["trace"].push_back({{"label", t.label}, {"line", t.line}});
    return r;
  });
}

ApiResult api_check(const nlohmann::json& req) {
  return guarded(req, [&] {
    std::string source = string_field(req, "source");
    CompileOptions options = options_of(req);
    CompileResult c = compile_source(source, req.value("origin", "<input>"), options);
    if (!c.kb) return unprocessable(c.diagnostics);
    RoundtripReport report = roundtrip_check(*c.kb, options);
    ApiResult r;
    r.body["roundtrip"]["ok"] = report.ok;
    r.body["roundtrip"]["failures"] = ordered_json::array();
    for (const auto& f : report.failures)
      r.body["roundtrip"]["failures"].push_back({{"what", f.what}, {"label", f.label}, {"detail", f.detail}});
    ordered_json conflicts = ordered_json::array();
    auto add = [&](const Scenario* sc) {
      Engine engine = Engine::run(*c.kb, sc);
      for (auto& j : conflicts_json(engine, c.kb->templates, sc ? sc->name : "")) conflicts.push_back(j);
    };
    if (c.kb->scenarios.empty()) add(nullptr);
    for (const auto& sc : c.kb->scenarios) add(&sc);
    r.body["conflicts"] = conflicts;
    return r;
  });
}

}  // namespace lexlog

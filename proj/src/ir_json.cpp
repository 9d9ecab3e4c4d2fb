#include "lexlog/ir_json.hpp"

#include <set>
#include <stdexcept>

#include "lexlog/lexer.hpp"

namespace lexlog {

namespace {

const char* const_type(ConstKind k) {
  switch (k) {
    case ConstKind::kAtom: return "atom";
    case ConstKind::kNumber: return "number";
    case ConstKind::kDate: return "date";
  }
  return "atom";
}

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

Mode mode_from(const std::string& s) {
  if (s == "none") return Mode::kNone;
  if (s == "O") return Mode::kObligation;
  if (s == "P") return Mode::kPermission;
  fail("unknown mode '" + s + "'");
}

RuleKind kind_from(const std::string& s) {
  if (s == "strict") return RuleKind::kStrict;
  if (s == "defeasible") return RuleKind::kDefeasible;
  if (s == "defeater") return RuleKind::kDefeater;
  fail("unknown rule kind '" + s + "'");
}

}  // namespace

ordered_json term_to_json(const Term& t) {
  ordered_json j;
  switch (t.kind) {
    case TermKind::kVariable:
      j["var"] = t.name;
      j["noun"] = t.noun;
      break;
    case TermKind::kConstant:
      j["const"] = t.name;
      j["type"] = const_type(t.const_kind);
      break;
    case TermKind::kReified: j["prop"] = literal_to_json(*t.prop); break;
  }
  return j;
}

ordered_json literal_to_json(const Literal& l) {
  ordered_json j;
  j["pred"] = l.pred;
  j["args"] = ordered_json::array();
  for (const auto& a : l.args) j["args"].push_back(term_to_json(a));
  j["neg"] = l.neg;
  j["mode"] = mode_name(l.mode);
  return j;
}

ordered_json condition_to_json(const Condition& c) {
  ordered_json j;
  auto list = [&](const char* key) {
    j[key] = ordered_json::array();
    for (const auto& ch : c.children) j[key].push_back(condition_to_json(ch));
  };
  switch (c.kind) {
    case CondKind::kAnd: list("and"); break;
    case CondKind::kOr: list("or"); break;
    case CondKind::kNaf: j["not"] = condition_to_json(c.children[0]); break;
    case CondKind::kForall:
      j["forall"]["range"] = condition_to_json(c.children[0]);
      j["forall"]["body"] = condition_to_json(c.children[1]);
      break;
    case CondKind::kBuiltin:
      j["builtin"] = builtin_op_name(c.op);
      j["args"] = {term_to_json(c.literal.args[0]), term_to_json(c.literal.args[1])};
      break;
    case CondKind::kLiteral: j["lit"] = literal_to_json(c.literal); break;
  }
  return j;
}

ordered_json rule_to_json(const Rule& r) {
  ordered_json j;
  j["label"] = r.label;
  j["kind"] = rule_kind_name(r.kind);
  j["head"] = literal_to_json(r.head);
  j["body"] = r.body ? condition_to_json(*r.body) : ordered_json(nullptr);
  if (!r.exception_of.empty()) j["exception-of"] = r.exception_of;
  if (r.naf_unless > 0) j["naf-unless"] = r.naf_unless;
  return j;
}

ordered_json kb_to_json(const KnowledgeBase& kb) {
  ordered_json j;
  j["schema"] = kIrSchema;
  j["name"] = kb.name;
  j["templates"] = ordered_json::array();
  for (const auto* t : kb.templates.user_templates()) {
    ordered_json tj;
    tj["id"] = t->id;
    tj["pattern"] = t->pattern_text();
    if (t->inferred) tj["inferred"] = true;
    j["templates"].push_back(tj);
  }
  j["rules"] = ordered_json::array();
  for (const auto& r : kb.rules) j["rules"].push_back(rule_to_json(r));
  j["superiority"] = ordered_json::array();
  for (const auto& [sup, inf] : kb.superiority) j["superiority"].push_back({sup, inf});
  j["scenarios"] = ordered_json::array();
  for (const auto& s : kb.scenarios) {
    ordered_json sj;
    sj["name"] = s.name;
    sj["facts"] = ordered_json::array();
    for (const auto& f : s.facts) sj["facts"].push_back(literal_to_json(f));
    j["scenarios"].push_back(sj);
  }
  j["queries"] = ordered_json::array();
  for (const auto& q : kb.queries) {
    ordered_json qj;
    qj["name"] = q.name;
    qj["literal"] = literal_to_json(q.literal);
    j["queries"].push_back(qj);
  }
  return j;
}

Term term_from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail("term must be an object");
  if (j.contains("var")) return Term::variable(j.at("var").get<std::string>(), j.value("noun", ""));
  if (j.contains("const")) {
    std::string text = j.at("const").get<std::string>();
    std::string type = j.value("type", "atom");
    if (type == "atom") return Term::atom(text);
    if (type == "number") {
      size_t used = 0;
      try {
        std::stod(text, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != text.size() || text.empty()) fail("bad number constant '" + text + "'");
      return Term::number(text);
    }
    if (type == "date") return Term::date(text);
    fail("unknown constant type '" + type + "'");
  }
  if (j.contains("prop")) return Term::reified(literal_from_json(j.at("prop")));
  fail("term needs one of var, const, prop");
}

Literal literal_from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail("literal must be an object");
  Literal l;
  l.pred = j.at("pred").get<std::string>();
  if (l.pred.empty()) fail("literal with empty predicate");
  for (const auto& a : j.at("args")) l.args.push_back(term_from_json(a));
  l.neg = j.value("neg", false);
  l.mode = mode_from(j.value("mode", "none"));
  return l;
}

Condition condition_from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail("condition must be an object");
  auto list = [&](const char* key) {
    std::vector<Condition> cs;
    for (const auto& c : j.at(key)) cs.push_back(condition_from_json(c));
    if (cs.size() < 2) fail(std::string("'") + key + "' needs at least two operands");
    return cs;
  };
  if (j.contains("and")) {
    Condition c;
    c.kind = CondKind::kAnd;
    c.children = list("and");
    return c;
  }
  if (j.contains("or")) {
    Condition c;
    c.kind = CondKind::kOr;
    c.children = list("or");
    return c;
  }
  if (j.contains("not")) return Condition::naf(condition_from_json(j.at("not")));
  if (j.contains("forall")) {
    const auto& f = j.at("forall");
    return Condition::forall(condition_from_json(f.at("range")), condition_from_json(f.at("body")));
  }
  if (j.contains("builtin")) {
    std::string name = j.at("builtin").get<std::string>();
    auto op = builtin_op_from_name(name);
    if (!op) fail("unknown builtin '" + name + "'");
    const auto& args = j.at("args");
    if (!args.is_array() || args.size() != 2) fail("builtin '" + name + "' needs two arguments");
    return Condition::builtin(*op, term_from_json(args[0]), term_from_json(args[1]));
  }
  if (j.contains("lit")) return Condition::lit(literal_from_json(j.at("lit")));
  fail("condition needs one of and, or, not, forall, builtin, lit");
}

Rule rule_from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail("rule must be an object");
  Rule r;
  r.label = j.at("label").get<std::string>();
  if (r.label.empty()) fail("rule with empty label");
  r.kind = kind_from(j.value("kind", "defeasible"));
  r.head = literal_from_json(j.at("head"));
  if (j.contains("body") && !j.at("body").is_null()) r.body = condition_from_json(j.at("body"));
  r.exception_of = j.value("exception-of", "");
  r.naf_unless = j.value("naf-unless", 0);
  return r;
}

std::optional<KnowledgeBase> kb_from_json(const nlohmann::json& j, std::string& error) {
  try {
    if (!j.is_object()) fail("document must be a JSON object");
    if (j.value("schema", "") != kIrSchema) fail(std::string("expected schema \"") + kIrSchema + "\"");
    KnowledgeBase kb;
    kb.name = j.value("name", "");
    for (const auto& t : j.value("templates", nlohmann::json::array())) {
      std::string pattern = t.at("pattern").get<std::string>();
      LexResult lex = tokenize(pattern, "<template>");
      if (has_errors(lex.diagnostics)) fail("bad template pattern '" + pattern + "'");
      std::vector<Token> toks;
      for (auto& tok : lex.tokens)
        if (tok.kind != TokenKind::kPeriod) toks.push_back(tok);
      std::string err;
      auto items = parse_template_pattern(toks, err);
      if (!items) fail("template '" + pattern + "': " + err);
      if (!kb.templates.add(*items, err, t.value("inferred", false))) fail(err);
    }
    std::set<std::string> labels;
    for (const auto& rj : j.value("rules", nlohmann::json::array())) {
      Rule r = rule_from_json(rj);
      if (!labels.insert(r.label).second) fail("duplicate rule label '" + r.label + "'");
      kb.rules.push_back(std::move(r));
    }
    for (const auto& p : j.value("superiority", nlohmann::json::array())) {
      if (!p.is_array() || p.size() != 2) fail("superiority entries must be [superior, inferior]");
      std::string sup = p[0].get<std::string>(), inf = p[1].get<std::string>();
      if (!labels.count(sup) || !labels.count(inf)) fail("superiority names an unknown rule");
      kb.superiority.emplace_back(sup, inf);
    }
    for (const auto& sj : j.value("scenarios", nlohmann::json::array())) {
      Scenario s;
      s.name = sj.at("name").get<std::string>();
      for (const auto& f : sj.at("facts")) {
        Literal l = literal_from_json(f);
        if (!l.ground()) fail("scenario '" + s.name + "' has a fact with variables");
        s.facts.push_back(std::move(l));
      }
      kb.scenarios.push_back(std::move(s));
    }
    for (const auto& qj : j.value("queries", nlohmann::json::array())) {
      Query q;
      q.name = qj.at("name").get<std::string>();
      q.literal = literal_from_json(qj.at("literal"));
      kb.queries.push_back(std::move(q));
    }
    return kb;
  } catch (const std::exception& e) {
    error = e.what();
    return std::nullopt;
  }
}

}  // namespace lexlog

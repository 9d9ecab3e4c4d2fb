#include "lexlog/ir.hpp"

#include <algorithm>
#include <set>

namespace lexlog {

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::kNone: return "none";
    case Mode::kObligation: return "O";
    case Mode::kPermission: return "P";
  }
  return "none";
}

const char* rule_kind_name(RuleKind k) {
  switch (k) {
    case RuleKind::kStrict: return "strict";
    case RuleKind::kDefeasible: return "defeasible";
    case RuleKind::kDefeater: return "defeater";
  }
  return "defeasible";
}

Term Term::variable(std::string name, std::string noun) {
  Term t;
  t.kind = TermKind::kVariable;
  t.name = std::move(name);
  t.noun = std::move(noun);
  return t;
}

Term Term::atom(std::string text) {
  Term t;
  t.name = std::move(text);
  return t;
}

Term Term::number(std::string text) {
  Term t;
  t.name = std::move(text);
  t.const_kind = ConstKind::kNumber;
  return t;
}

Term Term::date(std::string iso) {
  Term t;
  t.name = std::move(iso);
  t.const_kind = ConstKind::kDate;
  return t;
}

Term Term::reified(Literal lit) {
  Term t;
  t.kind = TermKind::kReified;
  t.prop = std::make_shared<const Literal>(std::move(lit));
  return t;
}

bool Term::ground() const {
  if (kind == TermKind::kVariable) return false;
  if (kind == TermKind::kReified) return prop->ground();
  return true;
}

bool operator==(const Term& a, const Term& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case TermKind::kVariable: return a.name == b.name && a.noun == b.noun;
    case TermKind::kConstant: return a.const_kind == b.const_kind && a.name == b.name;
    case TermKind::kReified: return *a.prop == *b.prop;
  }
  return false;
}

bool Literal::ground() const {
  return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.ground(); });
}

bool operator==(const Literal& a, const Literal& b) {
  return a.pred == b.pred && a.neg == b.neg && a.mode == b.mode && a.args == b.args;
}

Condition Condition::lit(Literal l) {
  Condition c;
  c.kind = CondKind::kLiteral;
  c.literal = std::move(l);
  return c;
}

Condition Condition::builtin(BuiltinOp op, Term lhs, Term rhs) {
  Condition c;
  c.kind = CondKind::kBuiltin;
  c.op = op;
  c.literal.pred = builtin_op_name(op);
  c.literal.args = {std::move(lhs), std::move(rhs)};
  return c;
}

namespace {

Condition flatten(CondKind kind, std::vector<Condition> cs) {
  if (cs.size() == 1) return std::move(cs.front());
  Condition out;
  out.kind = kind;
  for (auto& c : cs) {
    if (c.kind == kind) {
      for (auto& g : c.children) out.children.push_back(std::move(g));
    } else {
      out.children.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace

Condition Condition::conj(std::vector<Condition> cs) { return flatten(CondKind::kAnd, std::move(cs)); }
Condition Condition::disj(std::vector<Condition> cs) { return flatten(CondKind::kOr, std::move(cs)); }

Condition Condition::naf(Condition inner) {
  Condition c;
  c.kind = CondKind::kNaf;
  c.children.push_back(std::move(inner));
  return c;
}

Condition Condition::forall(Condition range, Condition body) {
  Condition c;
  c.kind = CondKind::kForall;
  c.children.push_back(std::move(range));
  c.children.push_back(std::move(body));
  return c;
}

const Rule* KnowledgeBase::find_rule(const std::string& label) const {
  for (const auto& r : rules)
    if (r.label == label) return &r;
  return nullptr;
}

const Scenario* KnowledgeBase::find_scenario(const std::string& n) const {
  for (const auto& s : scenarios)
    if (s.name == n) return &s;
  return nullptr;
}

const Query* KnowledgeBase::find_query(const std::string& n) const {
  for (const auto& q : queries)
    if (q.name == n) return &q;
  return nullptr;
}

Term substitute(const Term& t, const Subst& s) {
  if (t.kind == TermKind::kVariable) {
    auto it = s.find(t.name);
    return it == s.end() ? t : it->second;
  }
  if (t.kind == TermKind::kReified) return Term::reified(substitute(*t.prop, s));
  return t;
}

Literal substitute(const Literal& l, const Subst& s) {
  Literal out = l;
  for (auto& a : out.args) a = substitute(a, s);
  return out;
}

Condition substitute(const Condition& c, const Subst& s) {
  Condition out = c;
  if (c.kind == CondKind::kLiteral || c.kind == CondKind::kBuiltin) out.literal = substitute(c.literal, s);
  for (auto& ch : out.children) ch = substitute(ch, s);
  return out;
}

bool match(const Term& pattern, const Term& ground, Subst& s) {
  switch (pattern.kind) {
    case TermKind::kVariable: {
      auto it = s.find(pattern.name);
      if (it != s.end()) return it->second == ground;
      s.emplace(pattern.name, ground);
      return true;
    }
    case TermKind::kConstant:
      return ground.kind == TermKind::kConstant && ground.const_kind == pattern.const_kind &&
             ground.name == pattern.name;
    case TermKind::kReified:
      return ground.kind == TermKind::kReified && match(*pattern.prop, *ground.prop, s);
  }
  return false;
}

bool match(const Literal& pattern, const Literal& ground, Subst& s) {
  if (pattern.pred != ground.pred || pattern.neg != ground.neg || pattern.mode != ground.mode ||
      pattern.args.size() != ground.args.size())
    return false;
  Subst trial = s;
  for (size_t i = 0; i < pattern.args.size(); ++i)
    if (!match(pattern.args[i], ground.args[i], trial)) return false;
  s = std::move(trial);
  return true;
}

void collect_variables(const Term& t, std::vector<std::string>& out) {
  if (t.kind == TermKind::kVariable) {
    if (std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
  } else if (t.kind == TermKind::kReified) {
    collect_variables(*t.prop, out);
  }
}

void collect_variables(const Literal& l, std::vector<std::string>& out) {
  for (const auto& a : l.args) collect_variables(a, out);
}

void collect_variables(const Condition& c, std::vector<std::string>& out) {
  if (c.kind == CondKind::kLiteral || c.kind == CondKind::kBuiltin) collect_variables(c.literal, out);
  for (const auto& ch : c.children) collect_variables(ch, out);
}

std::string term_key(const Term& t) {
  switch (t.kind) {
    case TermKind::kVariable: return "?" + t.name;
    case TermKind::kReified: return "{" + literal_key(*t.prop) + "}";
    case TermKind::kConstant:
      switch (t.const_kind) {
        case ConstKind::kNumber: return "#" + t.name;
        case ConstKind::kDate: return "@" + t.name;
        case ConstKind::kAtom: return "\"" + t.name + "\"";
      }
  }
  return {};
}

std::string literal_key(const Literal& l) {
  std::string out;
  if (l.mode == Mode::kObligation) out += "O";
  if (l.mode == Mode::kPermission) out += "P";
  if (l.neg) out += "~";
  out += l.pred + "(";
  for (size_t i = 0; i < l.args.size(); ++i) {
    if (i) out += ",";
    out += term_key(l.args[i]);
  }
  return out + ")";
}

Rule canonical_rule(const Rule& r) {
  std::vector<std::string> vars;
  collect_variables(r.head, vars);
  if (r.body) collect_variables(*r.body, vars);
  Subst s;
  for (size_t i = 0; i < vars.size(); ++i) s.emplace(vars[i], Term::variable("V" + std::to_string(i)));
  Rule out = r;
  out.head = substitute(r.head, s);
  if (r.body) out.body = substitute(*r.body, s);
  return out;
}

namespace {

bool rules_equal(const Rule& a, const Rule& b) {
  return a.label == b.label && a.kind == b.kind && a.head == b.head && a.body == b.body &&
         a.exception_of == b.exception_of && a.naf_unless == b.naf_unless;
}

}  // namespace

bool alpha_equivalent(const Rule& a, const Rule& b) { return rules_equal(canonical_rule(a), canonical_rule(b)); }

std::vector<KbDifference> compare_kbs(const KnowledgeBase& a, const KnowledgeBase& b) {
  std::vector<KbDifference> out;
  std::map<std::string, const Rule*> rb;
  for (const auto& r : b.rules) rb[r.label] = &r;
  std::set<std::string> seen;
  for (const auto& r : a.rules) {
    seen.insert(r.label);
    auto it = rb.find(r.label);
    if (it == rb.end()) {
      out.push_back({"rule", r.label, "missing after round trip"});
    } else if (!alpha_equivalent(r, *it->second)) {
      out.push_back({"rule", r.label, "rule differs after round trip"});
    }
  }
  for (const auto& r : b.rules)
    if (!seen.count(r.label)) out.push_back({"rule", r.label, "unexpected extra rule"});

  auto sup_a = std::set(a.superiority.begin(), a.superiority.end());
  auto sup_b = std::set(b.superiority.begin(), b.superiority.end());
  if (sup_a != sup_b) out.push_back({"superiority", "", "superiority relations differ"});

  auto compare_named = [&](const auto& xs, const auto& ys, const char* what, auto eq) {
    for (const auto& x : xs) {
      auto it = std::find_if(ys.begin(), ys.end(), [&](const auto& y) { return y.name == x.name; });
      if (it == ys.end()) {
        out.push_back({what, x.name, "missing after round trip"});
      } else if (!eq(x, *it)) {
        out.push_back({what, x.name, "differs after round trip"});
      }
    }
    if (xs.size() != ys.size()) out.push_back({what, "", "count differs"});
  };
  compare_named(a.scenarios, b.scenarios, "scenario",
                [](const Scenario& x, const Scenario& y) { return x.facts == y.facts; });
  compare_named(a.queries, b.queries, "query", [](const Query& x, const Query& y) {
    Rule rx{"q", RuleKind::kStrict, x.literal, std::nullopt, {}, 0};
    Rule ry{"q", RuleKind::kStrict, y.literal, std::nullopt, {}, 0};
    return alpha_equivalent(rx, ry);
  });

  std::set<std::string> ta, tb;
  for (const auto* t : a.templates.user_templates()) ta.insert(t->id);
  for (const auto* t : b.templates.user_templates()) tb.insert(t->id);
  if (ta != tb) out.push_back({"template", "", "template registries differ"});
  return out;
}

double number_value(const Term& t) { return std::stod(t.name); }

}  // namespace lexlog

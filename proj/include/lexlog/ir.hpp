#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lexlog/diagnostic.hpp"
#include "lexlog/templates.hpp"

namespace lexlog {

enum class TermKind { kVariable, kConstant, kReified };
enum class ConstKind { kAtom, kNumber, kDate };
enum class Mode { kNone, kObligation, kPermission };

const char* mode_name(Mode m);

struct Literal;

struct Term {
  TermKind kind = TermKind::kConstant;
  // Variable name or constant text (dates in ISO form).
  std::string name;
  // Variables only: the common noun they were introduced with ("person").
  std::string noun;
  ConstKind const_kind = ConstKind::kAtom;
  std::shared_ptr<const Literal> prop;  // kReified

  static Term variable(std::string name, std::string noun = {});
  static Term atom(std::string text);
  static Term number(std::string text);
  static Term date(std::string iso);
  static Term reified(Literal lit);

  bool is_variable() const { return kind == TermKind::kVariable; }
  bool ground() const;

  friend bool operator==(const Term& a, const Term& b);
};

struct Literal {
  std::string pred;
  std::vector<Term> args;
  bool neg = false;
  Mode mode = Mode::kNone;

  bool ground() const;
  friend bool operator==(const Literal& a, const Literal& b);
};

enum class CondKind { kAnd, kOr, kNaf, kForall, kBuiltin, kLiteral };

struct Condition {
  CondKind kind = CondKind::kLiteral;
  std::vector<Condition> children;  // And/Or: operands; Naf: {inner}; Forall: {range, body}
  Literal literal;                  // kLiteral, and kBuiltin (pred = builtin id, two args)
  BuiltinOp op = BuiltinOp::kNone;

  static Condition lit(Literal l);
  static Condition builtin(BuiltinOp op, Term lhs, Term rhs);
  static Condition conj(std::vector<Condition> cs);  // flattens nested And
  static Condition disj(std::vector<Condition> cs);  // flattens nested Or
  static Condition naf(Condition inner);
  static Condition forall(Condition range, Condition body);

  friend bool operator==(const Condition& a, const Condition& b) = default;
};

enum class RuleKind { kStrict, kDefeasible, kDefeater };

const char* rule_kind_name(RuleKind k);

struct Rule {
  std::string label;
  RuleKind kind = RuleKind::kDefeasible;
  Literal head;
  std::optional<Condition> body;
  // Set on rules generated from an "unless" clause.
  std::string exception_of;
  // Explicit-NAF encoding: the last n conjuncts are Naf-wrapped exceptions.
  int naf_unless = 0;
};

struct Scenario {
  std::string name;
  std::vector<Literal> facts;
};

struct Query {
  std::string name;
  Literal literal;
};

struct KnowledgeBase {
  std::string name;
  TemplateRegistry templates;
  std::vector<Rule> rules;
  std::vector<std::pair<std::string, std::string>> superiority;  // (superior, inferior)
  std::vector<Scenario> scenarios;
  std::vector<Query> queries;

  const Rule* find_rule(const std::string& label) const;
  const Scenario* find_scenario(const std::string& name) const;
  const Query* find_query(const std::string& name) const;
};

using Subst = std::map<std::string, Term>;

Term substitute(const Term& t, const Subst& s);
Literal substitute(const Literal& l, const Subst& s);
Condition substitute(const Condition& c, const Subst& s);

// One-way match of a pattern literal against a ground literal, extending s.
bool match(const Literal& pattern, const Literal& ground, Subst& s);
bool match(const Term& pattern, const Term& ground, Subst& s);

// Variables in order of first occurrence.
void collect_variables(const Term& t, std::vector<std::string>& out);
void collect_variables(const Literal& l, std::vector<std::string>& out);
void collect_variables(const Condition& c, std::vector<std::string>& out);

// Canonical key for ground literals, e.g. "O~attends(\"ann\",\"m1\")".
std::string literal_key(const Literal& l);
std::string term_key(const Term& t);

// Renames variables to V0, V1, ... in order of first occurrence and drops
// nouns, so alpha-equivalent rules become equal.
Rule canonical_rule(const Rule& r);
bool alpha_equivalent(const Rule& a, const Rule& b);

struct KbDifference {
  std::string what;   // "rule", "superiority", "scenario", "query", "template"
  std::string label;  // offending label or name
  std::string detail;
};

// Empty result means the knowledge bases are equal up to alpha-equivalence.
std::vector<KbDifference> compare_kbs(const KnowledgeBase& a, const KnowledgeBase& b);

// Numeric value of a number constant.
double number_value(const Term& t);

}  // namespace lexlog

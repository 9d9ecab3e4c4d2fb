#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "lexlog/ir.hpp"

namespace lexlog {

enum class Truth { kFalse, kUnknown, kTrue };

Truth truth_not(Truth t);

enum class Level { kDefinite, kDefeasible };

struct TagSet {
  bool plus_delta = false;
  bool minus_delta = false;
  bool plus_partial = false;
  bool minus_partial = false;
  // Strict part proves both this literal and a conflicting one.
  bool withheld = false;

  friend bool operator==(const TagSet&, const TagSet&) = default;
};

struct BuiltinResult {
  bool ok = true;  // false on type mismatch or unbound argument
  bool value = false;
  std::optional<Term> binding;  // "X is E" with X unbound
  std::string error;
};

BuiltinResult eval_builtin(BuiltinOp op, const Term& lhs, const Term& rhs);

struct Instance {
  size_t rule = 0;  // index into the knowledge base rules
  Subst subst;      // bindings of the head variables
  size_t head = 0;  // literal id
};

// A knowledge base grounded against one scenario, with its proof tags.
// Holds its own copy of the rules; safe to share across threads once built.
class Engine {
 public:
  // Grounds and evaluates. scenario may be null (no scenario facts).
  static Engine run(const KnowledgeBase& kb, const Scenario* scenario);
  static std::optional<Engine> run(const KnowledgeBase& kb, const std::string& scenario, std::string& error);

  const std::vector<Rule>& rules() const { return rules_; }
  size_t literal_count() const { return literals_.size(); }
  const Literal& literal(size_t id) const { return literals_[id]; }
  std::optional<size_t> find(const Literal& ground) const;
  const TagSet& tags(size_t id) const { return tags_[id]; }
  bool is_fact(size_t id) const { return fact_[id]; }
  bool in_universe(size_t id) const { return in_u_[id]; }
  const std::vector<Instance>& instances() const { return instances_; }
  const std::vector<size_t>& instances_for(size_t id) const { return by_head_[id]; }
  bool superior(size_t rule_a, size_t rule_b) const;
  const std::vector<std::string>& warnings() const { return warnings_; }
  // Fixpoint round in which +∂ was established; body literals of the
  // instance that proved it carry a smaller rank.
  size_t proof_rank(size_t id) const { return rank_[id]; }

  Truth value(size_t id, Level level) const;
  Truth body_value(size_t instance, Level level) const;

  // Calls cb for every extension of s under which c is not false, with the
  // truth value for that extension. cb returns false to stop early.
  using Visitor = std::function<bool(const Subst&, Truth)>;
  void enumerate(const Condition& c, const Subst& s, Level level, const Visitor& cb) const;
  Truth exists_value(const Condition& c, const Subst& s, Level level) const;

  // Ids of literals conflicting with id that are present in the theory.
  std::vector<size_t> conflicts(size_t id) const;

 private:
  Engine() = default;

  size_t intern(const Literal& l);
  void ground(const Scenario* scenario);
  void evaluate();
  bool step(std::vector<TagSet>& next);
  bool loop_definite();
  bool loop_defeasible();

  void enumerate_impl(const Condition& c, const Subst& s, Level level, const std::vector<char>* assume_false,
                      const Visitor& cb) const;
  void enumerate_and(const Condition& c, std::vector<char>& done, const Subst& s, Truth acc, Level level,
                     const std::vector<char>* assume_false, const Visitor& cb, bool& stop) const;
  Truth body_value_assuming(size_t instance, Level level, const std::vector<char>* assume_false) const;

  std::vector<Rule> rules_;
  std::set<std::pair<size_t, size_t>> superior_;
  std::vector<Literal> literals_;
  std::unordered_map<std::string, size_t> index_;
  std::unordered_map<std::string, std::vector<size_t>> by_pred_;
  std::vector<char> fact_;
  std::vector<char> in_u_;
  std::vector<Instance> instances_;
  std::vector<std::vector<size_t>> by_head_;
  std::vector<TagSet> tags_;
  std::vector<size_t> rank_;
  size_t round_ = 0;
  std::vector<std::string> warnings_;
  // Grounding mode: literals are valued by membership in the universe.
  bool grounding_ = false;
};

struct Answer {
  std::vector<std::pair<std::string, Term>> bindings;  // query noun -> value
  size_t literal = 0;
};

// Defeasibly provable groundings of the query literal, sorted by binding values.
std::vector<Answer> answer_query(const Engine& engine, const Literal& query);

struct BlockedConflict {
  size_t first = 0;
  size_t second = 0;
  std::vector<std::string> first_rules;
  std::vector<std::string> second_rules;
};

std::vector<BlockedConflict> detect_blocked_conflicts(const Engine& engine);

// Labels of applicable (body true) non-defeater instances for the literal.
std::vector<std::string> supporting_rules(const Engine& engine, size_t id);

}  // namespace lexlog

#include "lexlog/engine.hpp"

#include <algorithm>

#include "lexlog/deontic.hpp"

namespace lexlog {

namespace {

Truth truth_min(Truth a, Truth b) { return static_cast<int>(a) < static_cast<int>(b) ? a : b; }
Truth truth_max(Truth a, Truth b) { return static_cast<int>(a) > static_cast<int>(b) ? a : b; }

bool all_bound(const Condition& c, const Subst& s) {
  std::vector<std::string> vs;
  collect_variables(c, vs);
  return std::all_of(vs.begin(), vs.end(), [&](const std::string& v) { return s.count(v) > 0; });
}

bool term_bound(const Term& t, const Subst& s) {
  std::vector<std::string> vs;
  collect_variables(t, vs);
  return std::all_of(vs.begin(), vs.end(), [&](const std::string& v) { return s.count(v) > 0; });
}

int compare_values(const Term& a, const Term& b, bool& ok, std::string& error) {
  if (a.kind != TermKind::kConstant || b.kind != TermKind::kConstant) {
    ok = false;
    error = "comparison needs constant arguments";
    return 0;
  }
  if (a.const_kind == ConstKind::kNumber && b.const_kind == ConstKind::kNumber) {
    double x = number_value(a), y = number_value(b);
    return x < y ? -1 : (x > y ? 1 : 0);
  }
  if (a.const_kind == ConstKind::kDate && b.const_kind == ConstKind::kDate) return a.name.compare(b.name);
  ok = false;
  error = "type mismatch: cannot compare '" + a.name + "' with '" + b.name + "'";
  return 0;
}

bool same_value(const Term& a, const Term& b) {
  if (a.kind == TermKind::kConstant && b.kind == TermKind::kConstant && a.const_kind == ConstKind::kNumber &&
      b.const_kind == ConstKind::kNumber)
    return number_value(a) == number_value(b);
  return a == b;
}

}  // namespace

Truth truth_not(Truth t) {
  if (t == Truth::kTrue) return Truth::kFalse;
  if (t == Truth::kFalse) return Truth::kTrue;
  return Truth::kUnknown;
}

BuiltinResult eval_builtin(BuiltinOp op, const Term& lhs, const Term& rhs) {
  BuiltinResult r;
  if (op == BuiltinOp::kIs && lhs.is_variable()) {
    if (!rhs.ground()) {
      r.ok = false;
      r.error = "'is' needs a known value on its right";
      return r;
    }
    r.value = true;
    r.binding = rhs;
    return r;
  }
  if (!lhs.ground() || !rhs.ground()) {
    r.ok = false;
    r.error = std::string("unbound argument to '") + builtin_op_name(op) + "'";
    return r;
  }
  switch (op) {
    case BuiltinOp::kIs:
    case BuiltinOp::kEq: r.value = same_value(lhs, rhs); return r;
    case BuiltinOp::kDifferent: r.value = !same_value(lhs, rhs); return r;
    default: break;
  }
  int cmp = compare_values(lhs, rhs, r.ok, r.error);
  if (!r.ok) return r;
  switch (op) {
    case BuiltinOp::kGe: r.value = cmp >= 0; break;
    case BuiltinOp::kLe:
    case BuiltinOp::kBeforeOrAt: r.value = cmp <= 0; break;
    case BuiltinOp::kLt: r.value = cmp < 0; break;
    case BuiltinOp::kGt: r.value = cmp > 0; break;
    default: break;
  }
  return r;
}

Engine Engine::run(const KnowledgeBase& kb, const Scenario* scenario) {
  Engine e;
  e.rules_ = kb.rules;
  std::unordered_map<std::string, size_t> idx;
  for (size_t i = 0; i < e.rules_.size(); ++i) idx[e.rules_[i].label] = i;
  for (const auto& [sup, inf] : kb.superiority) {
    auto a = idx.find(sup), b = idx.find(inf);
    if (a != idx.end() && b != idx.end()) e.superior_.emplace(a->second, b->second);
  }
  e.ground(scenario);
  e.evaluate();
  return e;
}

std::optional<Engine> Engine::run(const KnowledgeBase& kb, const std::string& scenario, std::string& error) {
  const Scenario* sc = kb.find_scenario(scenario);
  if (!sc) {
    error = "unknown scenario '" + scenario + "'";
    return std::nullopt;
  }
  return run(kb, sc);
}

std::optional<size_t> Engine::find(const Literal& ground) const {
  auto it = index_.find(literal_key(ground));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool Engine::superior(size_t rule_a, size_t rule_b) const { return superior_.count({rule_a, rule_b}) > 0; }

size_t Engine::intern(const Literal& l) {
  std::string key = literal_key(l);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  size_t id = literals_.size();
  literals_.push_back(l);
  index_.emplace(std::move(key), id);
  by_pred_[l.pred].push_back(id);
  fact_.push_back(0);
  in_u_.push_back(0);
  by_head_.emplace_back();
  return id;
}

void Engine::ground(const Scenario* scenario) {
  if (scenario) {
    for (const auto& f : scenario->facts) {
      size_t id = intern(f);
      fact_[id] = 1;
      in_u_[id] = 1;
    }
  }
  grounding_ = true;
  auto heads_of = [&](const Rule& r) {
    std::vector<std::pair<Literal, Subst>> out;
    auto emit = [&](const Subst& s, Truth) {
      Literal h = substitute(r.head, s);
      if (h.ground()) out.emplace_back(std::move(h), s);
      return true;
    };
    if (r.body) {
      enumerate(*r.body, {}, Level::kDefeasible, emit);
    } else {
      emit({}, Truth::kTrue);
    }
    return out;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : rules_) {
      if (r.kind == RuleKind::kDefeater) continue;
      for (auto& [head, s] : heads_of(r)) {
        size_t id = intern(head);
        if (!in_u_[id]) {
          in_u_[id] = 1;
          changed = true;
        }
      }
    }
  }

  std::set<std::pair<size_t, size_t>> seen;
  for (size_t ri = 0; ri < rules_.size(); ++ri) {
    std::vector<std::string> head_vars;
    collect_variables(rules_[ri].head, head_vars);
    for (auto& [head, s] : heads_of(rules_[ri])) {
      size_t id = intern(head);
      if (!seen.insert({ri, id}).second) continue;
      Instance inst;
      inst.rule = ri;
      inst.head = id;
      for (const auto& v : head_vars) inst.subst.emplace(v, s.at(v));
      by_head_[id].push_back(instances_.size());
      instances_.push_back(std::move(inst));
    }
  }
  grounding_ = false;
}

Truth Engine::value(size_t id, Level level) const {
  if (grounding_) return in_u_[id] ? Truth::kTrue : Truth::kFalse;
  const TagSet& t = tags_[id];
  if (level == Level::kDefinite) {
    if (t.plus_delta) return Truth::kTrue;
    if (t.minus_delta) return Truth::kFalse;
    return Truth::kUnknown;
  }
  if (t.plus_partial) return Truth::kTrue;
  if (t.minus_partial) return Truth::kFalse;
  return Truth::kUnknown;
}

void Engine::enumerate(const Condition& c, const Subst& s, Level level, const Visitor& cb) const {
  enumerate_impl(c, s, level, nullptr, cb);
}

Truth Engine::exists_value(const Condition& c, const Subst& s, Level level) const {
  Truth best = Truth::kFalse;
  enumerate(c, s, level, [&](const Subst&, Truth v) {
    best = truth_max(best, v);
    return best != Truth::kTrue;
  });
  return best;
}

void Engine::enumerate_impl(const Condition& c, const Subst& s, Level level, const std::vector<char>* assume_false,
                            const Visitor& cb) const {
  switch (c.kind) {
    case CondKind::kLiteral: {
      auto valued = [&](size_t id) {
        if (assume_false && (*assume_false)[id]) return Truth::kFalse;
        return value(id, level);
      };
      Literal l = substitute(c.literal, s);
      if (l.ground()) {
        auto id = find(l);
        if (!id) return;
        Truth v = valued(*id);
        if (v != Truth::kFalse) cb(s, v);
        return;
      }
      auto it = by_pred_.find(l.pred);
      if (it == by_pred_.end()) return;
      // Copy: grounding may intern while a caller still iterates.
      std::vector<size_t> candidates = it->second;
      for (size_t id : candidates) {
        Subst s2 = s;
        if (!match(c.literal, literals_[id], s2)) continue;
        Truth v = valued(id);
        if (v == Truth::kFalse) continue;
        if (!cb(s2, v)) return;
      }
      return;
    }
    case CondKind::kBuiltin: {
      Term lhs = substitute(c.literal.args[0], s);
      Term rhs = substitute(c.literal.args[1], s);
      BuiltinResult r = eval_builtin(c.op, lhs, rhs);
      if (!r.ok) return;
      if (r.binding) {
        Subst s2 = s;
        s2[lhs.name] = *r.binding;
        cb(s2, Truth::kTrue);
      } else if (r.value) {
        cb(s, Truth::kTrue);
      }
      return;
    }
    case CondKind::kNaf: {
      if (grounding_) {
        cb(s, Truth::kTrue);
        return;
      }
      Truth inner = Truth::kFalse;
      enumerate_impl(c.children[0], s, Level::kDefeasible, nullptr, [&](const Subst&, Truth v) {
        inner = truth_max(inner, v);
        return inner != Truth::kTrue;
      });
      Truth v = truth_not(inner);
      if (v != Truth::kFalse) cb(s, v);
      return;
    }
    case CondKind::kForall: {
      if (grounding_) {
        cb(s, Truth::kTrue);
        return;
      }
      Truth acc = Truth::kTrue;
      enumerate_impl(c.children[0], s, level, nullptr, [&](const Subst& sr, Truth r) {
        Truth b = Truth::kFalse;
        enumerate_impl(c.children[1], sr, level, assume_false, [&](const Subst&, Truth v) {
          b = truth_max(b, v);
          return b != Truth::kTrue;
        });
        acc = truth_min(acc, truth_max(truth_not(r), b));
        return acc != Truth::kFalse;
      });
      if (acc != Truth::kFalse) cb(s, acc);
      return;
    }
    case CondKind::kOr: {
      bool stop = false;
      for (const auto& ch : c.children) {
        enumerate_impl(ch, s, level, assume_false, [&](const Subst& s2, Truth v) {
          if (!cb(s2, v)) stop = true;
          return !stop;
        });
        if (stop) return;
      }
      return;
    }
    case CondKind::kAnd: {
      std::vector<char> done(c.children.size(), 0);
      bool stop = false;
      enumerate_and(c, done, s, Truth::kTrue, level, assume_false, cb, stop);
      return;
    }
  }
}

void Engine::enumerate_and(const Condition& c, std::vector<char>& done, const Subst& s, Truth acc, Level level,
                           const std::vector<char>* assume_false, const Visitor& cb, bool& stop) const {
  auto ready = [&](size_t i) {
    const Condition& ch = c.children[i];
    switch (ch.kind) {
      case CondKind::kLiteral:
      case CondKind::kOr:
      case CondKind::kAnd: return true;
      case CondKind::kBuiltin:
        if (ch.op == BuiltinOp::kIs) return term_bound(ch.literal.args[1], s);
        return all_bound(ch, s);
      case CondKind::kNaf: return all_bound(ch, s);
      case CondKind::kForall:
        for (size_t j = 0; j < c.children.size(); ++j) {
          auto k = c.children[j].kind;
          if (!done[j] && (k == CondKind::kLiteral || k == CondKind::kOr || k == CondKind::kAnd)) return false;
        }
        return true;
    }
    return true;
  };
  size_t pick = c.children.size();
  for (size_t i = 0; i < c.children.size(); ++i) {
    if (!done[i] && ready(i)) {
      pick = i;
      break;
    }
  }
  if (pick == c.children.size()) {
    for (size_t i = 0; i < c.children.size(); ++i)
      if (!done[i]) {
        pick = i;
        break;
      }
  }
  if (pick == c.children.size()) {
    if (!cb(s, acc)) stop = true;
    return;
  }
  done[pick] = 1;
  enumerate_impl(c.children[pick], s, level, assume_false, [&](const Subst& s2, Truth v) {
    enumerate_and(c, done, s2, truth_min(acc, v), level, assume_false, cb, stop);
    return !stop;
  });
  done[pick] = 0;
}

Truth Engine::body_value_assuming(size_t instance, Level level, const std::vector<char>* assume_false) const {
  const Instance& inst = instances_[instance];
  const Rule& r = rules_[inst.rule];
  if (!r.body) return Truth::kTrue;
  Truth best = Truth::kFalse;
  enumerate_impl(*r.body, inst.subst, level, assume_false, [&](const Subst&, Truth v) {
    best = truth_max(best, v);
    return best != Truth::kTrue;
  });
  return best;
}

Truth Engine::body_value(size_t instance, Level level) const { return body_value_assuming(instance, level, nullptr); }

std::vector<size_t> Engine::conflicts(size_t id) const {
  std::vector<size_t> out;
  for (const auto& c : conflicts_of(literals_[id]))
    if (auto cid = find(c)) out.push_back(*cid);
  return out;
}

bool Engine::step(std::vector<TagSet>& tags) {
  std::vector<Truth> bd(instances_.size()), bp(instances_.size());
  for (size_t i = 0; i < instances_.size(); ++i) {
    bd[i] = body_value(i, Level::kDefinite);
    bp[i] = body_value(i, Level::kDefeasible);
  }
  auto kind_of = [&](size_t inst) { return rules_[instances_[inst].rule].kind; };
  ++round_;
  bool changed = false;
  auto set = [&](bool& flag) {
    if (!flag) {
      flag = true;
      changed = true;
    }
  };
  for (size_t q = 0; q < literals_.size(); ++q) {
    TagSet& t = tags[q];
    const auto& mine = by_head_[q];
    bool any_strict_true = false, all_strict_false = true;
    for (size_t i : mine) {
      if (kind_of(i) != RuleKind::kStrict) continue;
      if (bd[i] == Truth::kTrue) any_strict_true = true;
      if (bd[i] != Truth::kFalse) all_strict_false = false;
    }
    if (fact_[q] || any_strict_true) set(t.plus_delta);
    if (!fact_[q] && all_strict_false) set(t.minus_delta);

    std::vector<size_t> conf = conflicts(q);
    if (t.plus_delta && !t.withheld) {
      for (size_t c : conf) {
        if (tags[c].plus_delta) {
          t.withheld = tags[c].withheld = true;
          changed = true;
          warnings_.push_back("strict rules prove both " + literal_key(literals_[q]) + " and " +
                              literal_key(literals_[c]));
        }
      }
    }
    if (t.withheld) continue;

    std::vector<size_t> attackers;
    for (size_t c : conf) attackers.insert(attackers.end(), by_head_[c].begin(), by_head_[c].end());
    auto supported = [&](size_t i) { return kind_of(i) != RuleKind::kDefeater; };

    if (!t.plus_partial) {
      bool opposed_refuted = std::all_of(conf.begin(), conf.end(), [&](size_t c) { return tags[c].minus_delta; });
      bool ok = t.plus_delta && opposed_refuted;
      if (!t.plus_delta) {
        bool applicable = std::any_of(mine.begin(), mine.end(),
                                      [&](size_t i) { return supported(i) && bp[i] == Truth::kTrue; });
        bool attacks_beaten = std::all_of(attackers.begin(), attackers.end(), [&](size_t s) {
          if (bp[s] == Truth::kFalse) return true;
          return std::any_of(mine.begin(), mine.end(), [&](size_t r) {
            return supported(r) && bp[r] == Truth::kTrue && superior(instances_[r].rule, instances_[s].rule);
          });
        });
        ok = applicable && opposed_refuted && attacks_beaten;
      }
      if (ok) {
        set(t.plus_partial);
        rank_[q] = round_;
      }
    }
    if (!t.minus_partial && t.minus_delta) {
      bool none_applicable = std::all_of(mine.begin(), mine.end(),
                                         [&](size_t i) { return !supported(i) || bp[i] == Truth::kFalse; });
      bool opposed_proved = std::any_of(conf.begin(), conf.end(), [&](size_t c) { return tags[c].plus_delta; });
      bool attack_stands = std::any_of(attackers.begin(), attackers.end(), [&](size_t s) {
        if (bp[s] != Truth::kTrue) return false;
        return std::all_of(mine.begin(), mine.end(), [&](size_t r) {
          return !supported(r) || !superior(instances_[r].rule, instances_[s].rule) || bp[r] == Truth::kFalse;
        });
      });
      if (none_applicable || opposed_proved || attack_stands) set(t.minus_partial);
    }
  }
  return changed;
}

bool Engine::loop_definite() {
  std::vector<char> s(literals_.size(), 0);
  bool any = false;
  for (size_t q = 0; q < literals_.size(); ++q) {
    if (!tags_[q].plus_delta && !tags_[q].minus_delta && !fact_[q]) s[q] = any = true;
  }
  if (!any) return false;
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t q = 0; q < literals_.size(); ++q) {
      if (!s[q]) continue;
      for (size_t i : by_head_[q]) {
        if (rules_[instances_[i].rule].kind != RuleKind::kStrict) continue;
        if (body_value_assuming(i, Level::kDefinite, &s) != Truth::kFalse) {
          s[q] = 0;
          changed = true;
          break;
        }
      }
    }
  }
  bool assigned = false;
  for (size_t q = 0; q < literals_.size(); ++q)
    if (s[q]) tags_[q].minus_delta = assigned = true;
  return assigned;
}

bool Engine::loop_defeasible() {
  std::vector<char> s(literals_.size(), 0);
  bool any = false;
  for (size_t q = 0; q < literals_.size(); ++q) {
    const TagSet& t = tags_[q];
    if (!t.plus_partial && !t.minus_partial && !t.withheld && !t.plus_delta && !fact_[q]) s[q] = any = true;
  }
  if (!any) return false;
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t q = 0; q < literals_.size(); ++q) {
      if (!s[q]) continue;
      for (size_t i : by_head_[q]) {
        if (rules_[instances_[i].rule].kind == RuleKind::kDefeater) continue;
        if (body_value_assuming(i, Level::kDefeasible, &s) != Truth::kFalse) {
          s[q] = 0;
          changed = true;
          break;
        }
      }
    }
  }
  bool assigned = false;
  for (size_t q = 0; q < literals_.size(); ++q) {
    if (!s[q]) continue;
    tags_[q].minus_partial = tags_[q].minus_delta = assigned = true;
  }
  return assigned;
}

void Engine::evaluate() {
  tags_.assign(literals_.size(), TagSet{});
  rank_.assign(literals_.size(), 0);
  for (;;) {
    while (step(tags_)) {
    }
    if (loop_definite()) continue;
    if (loop_defeasible()) continue;
    break;
  }
}

std::vector<Answer> answer_query(const Engine& engine, const Literal& query) {
  std::vector<std::string> vars;
  collect_variables(query, vars);
  std::map<std::string, std::string> nouns;
  std::function<void(const Term&)> note = [&](const Term& t) {
    if (t.is_variable()) nouns.emplace(t.name, t.noun.empty() ? t.name : t.noun);
    if (t.kind == TermKind::kReified)
      for (const auto& a : t.prop->args) note(a);
  };
  for (const auto& a : query.args) note(a);
  std::vector<std::string> keys;
  for (const auto& v : vars) {
    std::string key = nouns[v];
    std::string candidate = key;
    int n = 2;
    while (std::find(keys.begin(), keys.end(), candidate) != keys.end()) candidate = key + std::to_string(n++);
    keys.push_back(candidate);
  }

  std::vector<Answer> out;
  for (size_t id = 0; id < engine.literal_count(); ++id) {
    if (!engine.tags(id).plus_partial) continue;
    Subst s;
    if (!match(query, engine.literal(id), s)) continue;
    Answer a;
    a.literal = id;
    for (size_t i = 0; i < vars.size(); ++i) a.bindings.emplace_back(keys[i], s.at(vars[i]));
    out.push_back(std::move(a));
  }
  std::sort(out.begin(), out.end(), [](const Answer& x, const Answer& y) {
    for (size_t i = 0; i < x.bindings.size() && i < y.bindings.size(); ++i) {
      std::string a = term_key(x.bindings[i].second), b = term_key(y.bindings[i].second);
      if (a != b) return a < b;
    }
    return x.literal < y.literal;
  });
  return out;
}

std::vector<BlockedConflict> detect_blocked_conflicts(const Engine& engine) {
  std::vector<BlockedConflict> out;
  auto applicable = [&](size_t id) {
    std::vector<size_t> xs;
    for (size_t i : engine.instances_for(id))
      if (engine.body_value(i, Level::kDefeasible) == Truth::kTrue) xs.push_back(i);
    return xs;
  };
  auto undefeated = [&](const std::vector<size_t>& mine, const std::vector<size_t>& theirs) {
    std::vector<std::string> labels;
    for (size_t r : mine) {
      bool beaten = std::any_of(theirs.begin(), theirs.end(), [&](size_t s) {
        return engine.superior(engine.instances()[s].rule, engine.instances()[r].rule);
      });
      if (!beaten) labels.push_back(engine.rules()[engine.instances()[r].rule].label);
    }
    return labels;
  };
  for (size_t q = 0; q < engine.literal_count(); ++q) {
    for (size_t c : engine.conflicts(q)) {
      if (c < q) continue;
      if (engine.tags(q).plus_partial || engine.tags(c).plus_partial) continue;
      auto aq = applicable(q), ac = applicable(c);
      auto uq = undefeated(aq, ac), uc = undefeated(ac, aq);
      if (uq.empty() || uc.empty()) continue;
      std::sort(uq.begin(), uq.end());
      std::sort(uc.begin(), uc.end());
      out.push_back(BlockedConflict{q, c, uq, uc});
    }
  }
  return out;
}

std::vector<std::string> supporting_rules(const Engine& engine, size_t id) {
  std::vector<std::string> out;
  for (size_t i : engine.instances_for(id)) {
    const Rule& r = engine.rules()[engine.instances()[i].rule];
    if (r.kind == RuleKind::kDefeater) continue;
    if (engine.body_value(i, Level::kDefeasible) == Truth::kTrue) out.push_back(r.label);
  }
  return out;
}

}  // namespace lexlog

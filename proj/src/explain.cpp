#include "lexlog/explain.hpp"

#include <limits>
#include <set>

#include "lexlog/renderer.hpp"

namespace lexlog {

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::kScenario: return "scenario";
    case Provenance::kRule: return "rule";
    case Provenance::kBuiltin: return "builtin";
    case Provenance::kNone: return "none";
  }
  return "none";
}

namespace {

constexpr size_t kNoLimit = std::numeric_limits<size_t>::max();

class Explainer {
 public:
  Explainer(const Engine& e, const TemplateRegistry& reg) : e_(e), reg_(reg) {
    style_.dates = DateStyle::kTranscript;
    style_.quote_unbound = true;
  }

  ExplanationNode proved(size_t id) {
    ExplanationNode node;
    node.literal = e_.literal(id);
    node.text = text(node.literal);
    if (e_.is_fact(id)) {
      node.provenance = Provenance::kScenario;
      cited_.insert(id);
      return node;
    }
    node.provenance = Provenance::kRule;
    size_t rank = e_.proof_rank(id);
    for (size_t i : e_.instances_for(id)) {
      const Instance& inst = e_.instances()[i];
      const Rule& r = e_.rules()[inst.rule];
      if (r.kind == RuleKind::kDefeater) continue;
      if (!r.body) {
        node.rule = r.label;
        return node;
      }
      std::optional<Subst> chosen;
      e_.enumerate(*r.body, inst.subst, Level::kDefeasible, [&](const Subst& s, Truth v) {
        if (v != Truth::kTrue || !grounded(*r.body, s, rank)) return true;
        chosen = s;
        return false;
      });
      if (!chosen) continue;
      node.rule = r.label;
      note_defeats(node, id, inst.rule);
      walk(*r.body, *chosen, rank, node.children);
      return node;
    }
    return node;
  }

  ExplanationNode not_provable(const Literal& l) {
    ExplanationNode node;
    node.kind = NodeKind::kNotProvable;
    node.literal = l;
    node.text = text(l);
    node.children = failures(l);
    return node;
  }

 private:
  std::string text(const Literal& l) {
    auto t = render_literal(reg_, l, style_);
    return t ? *t : literal_key(l);
  }

  void note_defeats(ExplanationNode& node, size_t id, size_t rule) {
    std::set<std::string> seen;
    for (size_t c : e_.conflicts(id)) {
      for (size_t s : e_.instances_for(c)) {
        size_t attacker = e_.instances()[s].rule;
        if (e_.body_value(s, Level::kDefeasible) == Truth::kFalse || !e_.superior(rule, attacker)) continue;
        const std::string& label = e_.rules()[attacker].label;
        if (seen.insert(label).second) node.defeated.push_back(label);
      }
    }
  }

  // True when c holds under s using only literals proved before rank.
  bool grounded(const Condition& c, const Subst& s, size_t rank) const {
    switch (c.kind) {
      case CondKind::kLiteral: {
        auto id = e_.find(substitute(c.literal, s));
        return id && e_.tags(*id).plus_partial && e_.proof_rank(*id) < rank;
      }
      case CondKind::kBuiltin: {
        auto r = eval_builtin(c.op, substitute(c.literal.args[0], s), substitute(c.literal.args[1], s));
        return r.ok && r.value;
      }
      case CondKind::kAnd:
        for (const auto& ch : c.children)
          if (!grounded(ch, s, rank)) return false;
        return true;
      case CondKind::kOr:
        for (const auto& ch : c.children)
          if (grounded(ch, s, rank)) return true;
        return false;
      case CondKind::kNaf:
      case CondKind::kForall: return e_.exists_value(c, s, Level::kDefeasible) == Truth::kTrue;
    }
    return false;
  }

  void walk(const Condition& c, const Subst& s, size_t rank, std::vector<ExplanationNode>& out) {
    switch (c.kind) {
      case CondKind::kLiteral: {
        auto id = e_.find(substitute(c.literal, s));
        if (!id || (e_.is_fact(*id) && cited_.count(*id))) return;
        out.push_back(proved(*id));
        return;
      }
      case CondKind::kBuiltin: {
        ExplanationNode node;
        node.literal = substitute(c.literal, s);
        node.text = text(node.literal);
        node.provenance = Provenance::kBuiltin;
        out.push_back(std::move(node));
        return;
      }
      case CondKind::kAnd:
        for (const auto& ch : c.children) walk(ch, s, rank, out);
        return;
      case CondKind::kOr:
        for (const auto& ch : c.children) {
          if (grounded(ch, s, rank)) {
            walk(ch, s, rank, out);
            return;
          }
        }
        return;
      case CondKind::kNaf: {
        std::vector<const Condition*> leaves;
        literal_leaves(c.children[0], leaves);
        for (const auto* leaf : leaves) out.push_back(not_provable(substitute(leaf->literal, s)));
        return;
      }
      case CondKind::kForall: {
        std::vector<Subst> ranges;
        e_.enumerate(c.children[0], s, Level::kDefeasible, [&](const Subst& sr, Truth v) {
          if (v == Truth::kTrue) ranges.push_back(sr);
          return true;
        });
        for (const auto& sr : ranges) {
          walk(c.children[0], sr, kNoLimit, out);
          std::optional<Subst> sb;
          e_.enumerate(c.children[1], sr, Level::kDefeasible, [&](const Subst& x, Truth v) {
            if (v != Truth::kTrue) return true;
            sb = x;
            return false;
          });
          if (sb) walk(c.children[1], *sb, kNoLimit, out);
        }
        return;
      }
    }
  }

  static void literal_leaves(const Condition& c, std::vector<const Condition*>& out) {
    if (c.kind == CondKind::kLiteral) {
      out.push_back(&c);
      return;
    }
    if (c.kind == CondKind::kBuiltin || c.kind == CondKind::kNaf) return;
    for (const auto& ch : c.children) literal_leaves(ch, out);
  }

  // Depth-one search over each rule for l, recording every literal call
  // once its candidate solutions are exhausted.
  std::vector<ExplanationNode> failures(const Literal& l) {
    std::vector<ExplanationNode> out;
    std::set<std::string> seen;
    auto record = [&](const Literal& call) {
      if (!seen.insert(literal_key(call)).second) return;
      ExplanationNode node;
      node.kind = NodeKind::kNotProvable;
      node.literal = call;
      node.text = text(call);
      out.push_back(std::move(node));
    };
    for (const auto& r : e_.rules()) {
      if (r.kind == RuleKind::kDefeater || !r.body) continue;
      Subst head;
      if (!match(r.head, l, head)) continue;
      std::vector<const Condition*> calls;
      if (r.body->kind == CondKind::kAnd) {
        for (const auto& ch : r.body->children) calls.push_back(&ch);
      } else {
        calls.push_back(&*r.body);
      }
      std::function<void(size_t, const Subst&)> dfs = [&](size_t k, const Subst& s) {
        if (k == calls.size()) return;
        const Condition& c = *calls[k];
        if (c.kind == CondKind::kLiteral) {
          Literal call = substitute(c.literal, s);
          for (size_t id = 0; id < e_.literal_count(); ++id) {
            if (!e_.tags(id).plus_partial) continue;
            Subst s2 = s;
            if (match(c.literal, e_.literal(id), s2)) dfs(k + 1, s2);
          }
          record(call);
          return;
        }
        if (c.kind == CondKind::kBuiltin) {
          Term lhs = substitute(c.literal.args[0], s);
          auto res = eval_builtin(c.op, lhs, substitute(c.literal.args[1], s));
          if (!res.ok) return;
          if (res.binding) {
            Subst s2 = s;
            s2[lhs.name] = *res.binding;
            dfs(k + 1, s2);
          } else if (res.value) {
            dfs(k + 1, s);
          }
          return;
        }
        std::vector<Subst> next;
        e_.enumerate(c, s, Level::kDefeasible, [&](const Subst& s2, Truth v) {
          if (v == Truth::kTrue) next.push_back(s2);
          return true;
        });
        for (const auto& s2 : next) dfs(k + 1, s2);
      };
      dfs(0, head);
    }
    return out;
  }

  const Engine& e_;
  const TemplateRegistry& reg_;
  TextStyle style_;
  std::set<size_t> cited_;
};

}  // namespace

std::optional<ExplanationTree> explain_literal(const Engine& engine, const TemplateRegistry& templates, size_t id,
                                               std::string& error) {
  if (id >= engine.literal_count() || !engine.tags(id).plus_partial) {
    error = "literal is not defeasibly provable";
    return std::nullopt;
  }
  Explainer x(engine, templates);
  return ExplanationTree{x.proved(id)};
}

std::optional<ExplanationTree> explain(const Engine& engine, const KnowledgeBase& kb, const Query& query,
                                       size_t answer_index, std::string& error) {
  auto answers = answer_query(engine, query.literal);
  if (answer_index >= answers.size()) {
    error = "answer index " + std::to_string(answer_index + 1) + " out of range (" + std::to_string(answers.size()) +
            " answers)";
    return std::nullopt;
  }
  return explain_literal(engine, kb.templates, answers[answer_index].literal, error);
}

}  // namespace lexlog

#include "lexlog/compiler.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <map>
#include <set>

#include "lexlog/deontic.hpp"
#include "lexlog/parser.hpp"

namespace lexlog {

namespace {

using VarSet = std::set<std::string>;

constexpr std::array<std::string_view, 4> kObligatory = {"it", "is", "obligatory", "that"};
constexpr std::array<std::string_view, 4> kProhibited = {"it", "is", "prohibited", "that"};
constexpr std::array<std::string_view, 4> kPermitted = {"it", "is", "permitted", "that"};
constexpr std::array<std::string_view, 6> kNotTheCase = {"it", "is", "not", "the", "case", "that"};

template <size_t N>
bool has_prefix(std::span<const Token> toks, const std::array<std::string_view, N>& words) {
  if (toks.size() < N) return false;
  for (size_t i = 0; i < N; ++i)
    if (toks[i].lexeme != words[i]) return false;
  return true;
}

bool is_symbolic(const Token& t) {
  return t.kind == TokenKind::kWord && !t.lexeme.empty() && std::isupper(static_cast<unsigned char>(t.lexeme[0]));
}

bool deontic_prefix(std::span<const Token> toks) {
  return has_prefix(toks, kObligatory) || has_prefix(toks, kProhibited) || has_prefix(toks, kPermitted);
}

enum class ScopeMode { kRule, kFact, kQuery };

struct VarInfo {
  std::string name;
  std::string noun;
  bool named = false;
};

class Scope {
 public:
  explicit Scope(ScopeMode mode) : mode_(mode) {}

  ScopeMode mode() const { return mode_; }

  std::optional<Term> resolve(std::span<const Token> arg, std::string& err) {
    if (arg.size() == 1 && arg[0].kind == TokenKind::kNumber) return Term::number(arg[0].lexeme);
    if (arg.size() == 1 && arg[0].kind == TokenKind::kDate) return Term::date(arg[0].lexeme);

    if (mode_ == ScopeMode::kQuery && arg[0].lexeme == "which") {
      if (arg.size() < 2) {
        err = "'which' needs a noun";
        return std::nullopt;
      }
      std::string noun = join_lexemes(arg.subspan(1));
      return fresh(noun, "");
    }
    if (arg[0].lexeme == "which") {
      err = "'which' may only appear in a query";
      return std::nullopt;
    }
    if (mode_ != ScopeMode::kRule) {
      if (mode_ == ScopeMode::kFact && arg[0].kind == TokenKind::kDeterminer && arg[0].lexeme != "the") {
        err = "a fact cannot introduce a variable ('" + join_lexemes(arg) + "')";
        return std::nullopt;
      }
      return Term::atom(join_lexemes(arg));
    }

    if (arg[0].kind == TokenKind::kDeterminer) {
      auto rest = arg.subspan(1);
      if (rest.empty()) {
        err = "determiner without a noun";
        return std::nullopt;
      }
      std::string name;
      if (rest.size() >= 2 && is_symbolic(rest.back())) {
        name = rest.back().lexeme;
        rest = rest.first(rest.size() - 1);
      }
      std::string noun = join_lexemes(rest);
      if (arg[0].lexeme == "the") return definite(noun, name, err);
      if (!name.empty() && find_named(name)) {
        err = "variable " + name + " is introduced twice";
        return std::nullopt;
      }
      return fresh(noun, name);
    }
    if (arg.size() == 1 && is_symbolic(arg[0])) {
      if (auto* v = find_named(arg[0].lexeme)) return Term::variable(v->name, v->noun);
      err = "unknown variable " + arg[0].lexeme + "; introduce it with 'a' or 'an' first";
      return std::nullopt;
    }
    return Term::atom(join_lexemes(arg));
  }

 private:
  const VarInfo* find_named(const std::string& name) const {
    for (const auto& v : vars_)
      if (v.named && v.name == name) return &v;
    return nullptr;
  }

  std::optional<Term> definite(const std::string& noun, const std::string& name, std::string& err) {
    if (!name.empty()) {
      if (auto* v = find_named(name)) return Term::variable(v->name, v->noun);
      err = "'the " + noun + " " + name + "' refers to no earlier '" + noun + " " + name + "'";
      return std::nullopt;
    }
    std::vector<const VarInfo*> same;
    for (const auto& v : vars_)
      if (v.noun == noun) same.push_back(&v);
    if (same.empty()) {
      err = "'the " + noun + "' has no earlier 'a " + noun + "' in this rule";
      return std::nullopt;
    }
    if (same.size() > 1) {
      std::vector<const VarInfo*> unnamed;
      for (auto* v : same)
        if (!v->named) unnamed.push_back(v);
      if (unnamed.size() != 1) {
        err = "'the " + noun + "' is ambiguous; give the variables symbolic names";
        return std::nullopt;
      }
      return Term::variable(unnamed[0]->name, unnamed[0]->noun);
    }
    return Term::variable(same[0]->name, same[0]->noun);
  }

  Term fresh(const std::string& noun, const std::string& name) {
    VarInfo v;
    v.noun = noun;
    v.named = !name.empty();
    if (v.named) {
      v.name = name;
    } else {
      std::string base = "_";
      for (char c : noun) base += (std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
      std::string candidate = base;
      int n = 2;
      while (std::any_of(vars_.begin(), vars_.end(), [&](const VarInfo& o) { return o.name == candidate; }))
        candidate = base + std::to_string(n++);
      v.name = candidate;
    }
    vars_.push_back(v);
    return Term::variable(v.name, v.noun);
  }

  ScopeMode mode_;
  std::vector<VarInfo> vars_;
};

Span phrase_span(std::span<const Token> toks) {
  if (toks.empty()) return {};
  Span s = toks.front().span;
  if (toks.back().span.line == s.line) s.col_end = toks.back().span.col_end;
  return s;
}

// Variables a condition binds when evaluated with ctx already bound.
VarSet bound_of(const Condition& c, const VarSet& ctx) {
  switch (c.kind) {
    case CondKind::kLiteral: {
      std::vector<std::string> vs;
      collect_variables(c.literal, vs);
      return VarSet(vs.begin(), vs.end());
    }
    case CondKind::kBuiltin: {
      const Term& lhs = c.literal.args[0];
      if (c.op == BuiltinOp::kIs && lhs.is_variable()) {
        std::vector<std::string> rhs;
        collect_variables(c.literal.args[1], rhs);
        if (std::all_of(rhs.begin(), rhs.end(), [&](const std::string& v) { return ctx.count(v); }))
          return {lhs.name};
      }
      return {};
    }
    case CondKind::kAnd: {
      VarSet cur = ctx;
      bool changed = true;
      while (changed) {
        changed = false;
        for (const auto& ch : c.children)
          for (const auto& v : bound_of(ch, cur))
            if (cur.insert(v).second) changed = true;
      }
      return cur;
    }
    case CondKind::kOr: {
      std::optional<VarSet> acc;
      for (const auto& ch : c.children) {
        VarSet b = bound_of(ch, ctx);
        b.insert(ctx.begin(), ctx.end());
        if (!acc) {
          acc = b;
        } else {
          VarSet keep;
          for (const auto& v : *acc)
            if (b.count(v)) keep.insert(v);
          acc = keep;
        }
      }
      return acc.value_or(VarSet{});
    }
    case CondKind::kNaf:
    case CondKind::kForall:
      return {};
  }
  return {};
}

void require_bound(const std::vector<std::string>& vars, const VarSet& ctx, std::vector<std::string>& out) {
  for (const auto& v : vars)
    if (!ctx.count(v) && std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
}

void check_bound(const Condition& c, const VarSet& ctx, std::vector<std::string>& out) {
  switch (c.kind) {
    case CondKind::kLiteral: return;
    case CondKind::kBuiltin: {
      std::vector<std::string> vs;
      collect_variables(c.literal, vs);
      require_bound(vs, ctx, out);
      return;
    }
    case CondKind::kAnd: {
      VarSet inner = bound_of(c, ctx);
      for (const auto& ch : c.children) check_bound(ch, inner, out);
      return;
    }
    case CondKind::kOr:
      for (const auto& ch : c.children) {
        VarSet inner = bound_of(ch, ctx);
        inner.insert(ctx.begin(), ctx.end());
        check_bound(ch, inner, out);
      }
      return;
    case CondKind::kNaf: {
      std::vector<std::string> vs;
      collect_variables(c.children[0], vs);
      require_bound(vs, ctx, out);
      return;
    }
    case CondKind::kForall: {
      VarSet r = bound_of(c.children[0], ctx);
      r.insert(ctx.begin(), ctx.end());
      check_bound(c.children[0], r, out);
      VarSet b = bound_of(c.children[1], r);
      b.insert(r.begin(), r.end());
      check_bound(c.children[1], b, out);
      return;
    }
  }
}

void find_variable_terms(const Term& t, std::map<std::string, Term>& out) {
  if (t.is_variable()) out.emplace(t.name, t);
  if (t.kind == TermKind::kReified)
    for (const auto& a : t.prop->args) find_variable_terms(a, out);
}

void find_variable_terms(const Condition& c, std::map<std::string, Term>& out) {
  for (const auto& a : c.literal.args) find_variable_terms(a, out);
  for (const auto& ch : c.children) find_variable_terms(ch, out);
}

bool contains_word(const ConditionTree& t, std::string_view word) {
  for (const auto& tok : t.phrase)
    if (tok.lexeme == word) return true;
  for (const auto& ch : t.children)
    if (contains_word(ch, word)) return true;
  return false;
}

class Compiler {
 public:
  Compiler(const SurfaceDocument& doc, const CompileOptions& options) : doc_(doc), options_(options) {}

  CompileResult run() {
    for (const auto& s : doc_.sections)
      if (s.kind == SectionKind::kTemplates) compile_templates(s);
    for (const auto& s : doc_.sections)
      if (s.kind == SectionKind::kKnowledgeBase) {
        if (kb_.name.empty()) kb_.name = s.name;
        for (const auto& sentence : s.sentences) compile_rule_sentence(sentence);
      }
    assign_labels();
    expand_all_unless();
    for (const auto& s : doc_.sections) {
      if (s.kind == SectionKind::kScenario) compile_scenario(s);
      if (s.kind == SectionKind::kQuery) compile_query(s);
    }
    compile_superiority_sections();
    validate_ranges();

    CompileResult result;
    result.diagnostics = std::move(diags_);
    if (!has_errors(result.diagnostics)) result.kb = std::move(kb_);
    return result;
  }

 private:
  struct Pending {
    Rule rule;
    bool auto_label = false;
    std::optional<Condition> exceptions;
    Span span;
  };

  void error(Span span, std::string msg) {
    diags_.push_back(Diagnostic{Severity::kError, std::move(msg), doc_.origin, span});
  }
  void warn(Span span, std::string msg) {
    diags_.push_back(Diagnostic{Severity::kWarning, std::move(msg), doc_.origin, span});
  }

  void compile_templates(const Section& s) {
    for (const auto& sentence : s.sentences) {
      auto toks = sentence_tokens(sentence);
      std::string err;
      auto pattern = parse_template_pattern(toks, err);
      if (!pattern) {
        error(phrase_span(toks), err);
        continue;
      }
      if (!kb_.templates.add(*pattern, err)) error(phrase_span(toks), err);
    }
  }

  std::optional<Term> compile_arg(const PatternItem& slot, std::span<const Token> arg, Scope& scope) {
    if (slot.kind == SlotKind::kProposition) {
      auto cond = compile_atom(arg, scope, scope.mode() == ScopeMode::kRule, false);
      if (!cond) return std::nullopt;
      if (cond->kind != CondKind::kLiteral) {
        error(phrase_span(arg), "a comparison cannot be used as a proposition");
        return std::nullopt;
      }
      return Term::reified(cond->literal);
    }
    std::string err;
    auto term = scope.resolve(arg, err);
    if (!term) error(phrase_span(arg), err);
    return term;
  }

  // Resolves an atomic sentence to a literal or builtin condition.
  std::optional<Condition> compile_atom(std::span<const Token> phrase, Scope& scope, bool allow_infer,
                                        bool in_body) {
    if (phrase.empty()) {
      error({}, "empty sentence");
      return std::nullopt;
    }
    if (in_body && deontic_prefix(phrase)) {
      error(phrase_span(phrase), "deontic operators are only allowed in conclusions");
      return std::nullopt;
    }
    MatchOutcome outcome = kb_.templates.match(phrase);
    if (!outcome.match && !outcome.ambiguous && allow_infer) {
      if (auto pattern = infer_template_pattern(phrase)) {
        std::string err;
        if (kb_.templates.add(*pattern, err, true)) {
          Template probe;
          probe.pattern = *pattern;
          warn(phrase_span(phrase), "no template for '" + join_lexemes(phrase) + "'; inferred '" +
                                        probe.pattern_text() + "'");
          outcome = kb_.templates.match(phrase);
        }
      }
    }
    if (!outcome.match) {
      error(phrase_span(phrase), outcome.error);
      return std::nullopt;
    }
    const Template& t = *outcome.match->tmpl;
    std::vector<Term> args;
    size_t slot = 0;
    for (const auto& item : t.pattern) {
      if (!item.is_slot) continue;
      auto term = compile_arg(item, outcome.match->args[slot++], scope);
      if (!term) return std::nullopt;
      args.push_back(std::move(*term));
    }
    if (t.builtin != BuiltinOp::kNone) return Condition::builtin(t.builtin, args[0], args[1]);
    Literal lit;
    lit.pred = t.id;
    lit.args = std::move(args);
    return Condition::lit(std::move(lit));
  }

  std::optional<Literal> compile_head(std::span<const Token> toks, Scope& scope, bool allow_infer) {
    DeonticLiteral d;
    if (has_prefix(toks, kObligatory)) {
      d.mode = DeonticMode::kObligation;
    } else if (has_prefix(toks, kProhibited)) {
      d.mode = DeonticMode::kProhibition;
    } else if (has_prefix(toks, kPermitted)) {
      d.mode = DeonticMode::kPermission;
    }
    if (d.mode != DeonticMode::kNone) toks = toks.subspan(4);
    while (has_prefix(toks, kNotTheCase)) {
      ++d.negations;
      toks = toks.subspan(kNotTheCase.size());
    }
    if (d.mode == DeonticMode::kNone && d.negations > 0) {
      error(phrase_span(toks), "a conclusion cannot be negated; use 'unless' or a deontic operator");
      return std::nullopt;
    }
    if (deontic_prefix(toks)) {
      error(phrase_span(toks), "nested deontic operators are not supported");
      return std::nullopt;
    }
    auto cond = compile_atom(toks, scope, allow_infer, false);
    if (!cond) return std::nullopt;
    if (cond->kind != CondKind::kLiteral) {
      error(phrase_span(toks), "a conclusion cannot be a comparison");
      return std::nullopt;
    }
    d.atom = cond->literal;
    return to_literal(d);
  }

  std::optional<Condition> compile_tree(const ConditionTree& t, Scope& scope) {
    switch (t.kind) {
      case ConditionKind::kAtom: return compile_atom(t.phrase, scope, true, true);
      case ConditionKind::kAnd:
      case ConditionKind::kOr: {
        std::vector<Condition> cs;
        for (const auto& ch : t.children) {
          auto c = compile_tree(ch, scope);
          if (!c) return std::nullopt;
          cs.push_back(std::move(*c));
        }
        return t.kind == ConditionKind::kAnd ? Condition::conj(std::move(cs)) : Condition::disj(std::move(cs));
      }
      case ConditionKind::kNaf: {
        auto inner = compile_tree(t.children[0], scope);
        if (!inner) return std::nullopt;
        return Condition::naf(std::move(*inner));
      }
      case ConditionKind::kForall: {
        auto range = compile_tree(t.children[0], scope);
        if (!range) return std::nullopt;
        auto body = compile_tree(t.children[1], scope);
        if (!body) return std::nullopt;
        return Condition::forall(std::move(*range), std::move(*body));
      }
    }
    return std::nullopt;
  }

  void compile_rule_sentence(const Sentence& sentence) {
    auto surface = parse_rule_sentence(sentence, diags_, doc_.origin);
    if (!surface) return;
    bool is_fact = !surface->conditions && !surface->exceptions;
    Scope scope(is_fact ? ScopeMode::kFact : ScopeMode::kRule);
    auto head = compile_head(surface->head, scope, true);
    if (!head) return;

    Pending p;
    p.span = surface->span;
    p.rule.label = surface->label;
    p.auto_label = surface->label.empty();
    p.rule.head = std::move(*head);
    switch (surface->strength) {
      case RuleStrength::kStrict: p.rule.kind = RuleKind::kStrict; break;
      case RuleStrength::kDefeater: p.rule.kind = RuleKind::kDefeater; break;
      case RuleStrength::kDefault: p.rule.kind = is_fact ? RuleKind::kStrict : RuleKind::kDefeasible; break;
    }
    if (surface->conditions) {
      auto body = compile_tree(*surface->conditions, scope);
      if (!body) return;
      p.rule.body = std::move(*body);
    }
    if (surface->exceptions) {
      if (!surface->conditions) {
        error(surface->span, "'unless' needs a rule with conditions; a fact cannot have exceptions");
        return;
      }
      if (contains_word(*surface->exceptions, "unless")) {
        error(surface->span, "nested 'unless' is not supported");
        return;
      }
      if (p.rule.kind == RuleKind::kStrict) {
        error(surface->span, "'unless' cannot be used with a strict rule");
        return;
      }
      auto exc = compile_tree(*surface->exceptions, scope);
      if (!exc) return;
      p.exceptions = std::move(*exc);
    }
    pending_.push_back(std::move(p));
  }

  void assign_labels() {
    std::set<std::string> used;
    for (const auto& p : pending_) {
      if (p.auto_label) continue;
      if (!used.insert(p.rule.label).second) error(p.span, "duplicate rule label '" + p.rule.label + "'");
    }
    int n = 0;
    for (auto& p : pending_) {
      ++n;
      if (!p.auto_label) continue;
      std::string label = "rule_" + std::to_string(n);
      while (used.count(label)) label += "_";
      used.insert(label);
      p.rule.label = label;
    }
  }

  void expand_all_unless() {
    for (auto& p : pending_) {
      spans_[p.rule.label] = p.span;
      if (!p.exceptions) {
        kb_.rules.push_back(std::move(p.rule));
        continue;
      }
      std::vector<Condition> disjuncts;
      if (p.exceptions->kind == CondKind::kOr) {
        disjuncts = p.exceptions->children;
      } else {
        disjuncts.push_back(*p.exceptions);
      }
      auto ex = expand_unless(std::move(p.rule), disjuncts, options_);
      kb_.rules.push_back(std::move(ex.base));
      for (auto& r : ex.exceptions) {
        spans_[r.label] = p.span;
        kb_.rules.push_back(std::move(r));
      }
      for (auto& s : ex.superiority) generated_sup_.push_back(std::move(s));
    }
  }

  void compile_scenario(const Section& s) {
    if (kb_.find_scenario(s.name)) return;
    Scenario sc;
    sc.name = s.name;
    for (const auto& sentence : s.sentences) {
      auto toks = sentence_tokens(sentence);
      if (deontic_prefix(toks) || has_prefix(std::span<const Token>(toks), kNotTheCase)) {
        error(phrase_span(toks), "scenario facts must be plain atomic sentences");
        continue;
      }
      Scope scope(ScopeMode::kFact);
      auto lit = compile_head(toks, scope, false);
      if (lit) sc.facts.push_back(std::move(*lit));
    }
    kb_.scenarios.push_back(std::move(sc));
  }

  void compile_query(const Section& s) {
    if (s.sentences.size() != 1 || kb_.find_query(s.name)) return;
    auto toks = sentence_tokens(s.sentences[0]);
    Scope scope(ScopeMode::kQuery);
    auto lit = compile_head(toks, scope, false);
    if (lit) kb_.queries.push_back(Query{s.name, std::move(*lit)});
  }

  void compile_superiority_sections() {
    std::vector<std::pair<std::string, std::string>> pairs = generated_sup_;
    std::map<std::pair<std::string, std::string>, Span> where;
    for (const auto& s : doc_.sections) {
      if (s.kind != SectionKind::kSuperiority) continue;
      for (const auto& p : s.pairs) {
        pairs.emplace_back(p.superior.lexeme, p.inferior.lexeme);
        where[pairs.back()] = p.superior.span;
      }
    }
    std::vector<std::string> labels;
    for (const auto& r : kb_.rules) labels.push_back(r.label);
    std::vector<std::string> errors;
    auto rel = compile_superiority(pairs, labels, errors);
    for (const auto& e : errors) {
      Span at;
      for (const auto& [pair, span] : where)
        if (e.find("'" + pair.first + "'") != std::string::npos || e.find("'" + pair.second + "'") != std::string::npos)
          at = span;
      error(at, e);
    }
    if (rel) kb_.superiority = std::move(*rel);
  }

  void validate_ranges() {
    for (const auto& r : kb_.rules) {
      auto bad = range_restriction_violations(r);
      if (bad.empty()) continue;
      std::map<std::string, Term> info;
      for (const auto& a : r.head.args) find_variable_terms(a, info);
      if (r.body) find_variable_terms(*r.body, info);
      for (const auto& v : bad) {
        auto it = info.find(v);
        std::string shown = it == info.end() ? v : variable_display(it->second);
        error(spans_[r.label], "rule " + r.label + ": variable '" + shown +
                                   "' must occur in a positive condition (range restriction)");
      }
    }
  }

  const SurfaceDocument& doc_;
  CompileOptions options_;
  KnowledgeBase kb_;
  Diagnostics diags_;
  std::vector<Pending> pending_;
  std::vector<std::pair<std::string, std::string>> generated_sup_;
  std::map<std::string, Span> spans_;
};

bool find_cycle(const std::string& node, const std::map<std::string, std::vector<std::string>>& edges,
                std::map<std::string, int>& state, std::vector<std::string>& stack, std::vector<std::string>& cycle) {
  state[node] = 1;
  stack.push_back(node);
  auto it = edges.find(node);
  if (it != edges.end()) {
    for (const auto& next : it->second) {
      if (state[next] == 1) {
        auto from = std::find(stack.begin(), stack.end(), next);
        cycle.assign(from, stack.end());
        cycle.push_back(next);
        return true;
      }
      if (state[next] == 0 && find_cycle(next, edges, state, stack, cycle)) return true;
    }
  }
  stack.pop_back();
  state[node] = 2;
  return false;
}

}  // namespace

std::string variable_display(const Term& v) {
  if (!v.name.empty() && v.name[0] != '_') return v.name;
  return v.noun.empty() ? v.name : v.noun;
}

UnlessExpansion expand_unless(Rule base, const std::vector<Condition>& disjuncts, const CompileOptions& options) {
  UnlessExpansion out;
  if (options.unless_naf) {
    std::vector<Condition> parts;
    parts.push_back(*base.body);
    for (const auto& d : disjuncts) parts.push_back(Condition::naf(d));
    base.body = Condition::conj(std::move(parts));
    base.naf_unless = static_cast<int>(disjuncts.size());
    out.base = std::move(base);
    return out;
  }
  for (size_t i = 0; i < disjuncts.size(); ++i) {
    Rule exc;
    exc.label = base.label + "_exc_" + std::to_string(i + 1);
    exc.kind = RuleKind::kDefeasible;
    exc.head = exception_head(base.head);
    exc.body = Condition::conj({*base.body, disjuncts[i]});
    exc.exception_of = base.label;
    out.superiority.emplace_back(exc.label, base.label);
    out.exceptions.push_back(std::move(exc));
  }
  out.base = std::move(base);
  return out;
}

std::optional<UnlessParts> unless_parts(const KnowledgeBase& kb, const Rule& base) {
  if (!base.body) return std::nullopt;
  const Condition& body = *base.body;
  auto split_prefix = [](const std::vector<Condition>& cs) {
    return cs.size() == 1 ? cs[0] : Condition::conj(cs);
  };
  if (base.naf_unless > 0) {
    if (body.kind != CondKind::kAnd || static_cast<int>(body.children.size()) <= base.naf_unless) return std::nullopt;
    size_t keep = body.children.size() - static_cast<size_t>(base.naf_unless);
    UnlessParts parts;
    parts.conditions = split_prefix({body.children.begin(), body.children.begin() + static_cast<long>(keep)});
    for (size_t i = keep; i < body.children.size(); ++i) {
      if (body.children[i].kind != CondKind::kNaf) return std::nullopt;
      parts.disjuncts.push_back(body.children[i].children[0]);
    }
    return parts;
  }
  std::vector<const Rule*> excs;
  for (const auto& r : kb.rules)
    if (r.exception_of == base.label) excs.push_back(&r);
  if (excs.empty()) return std::nullopt;
  size_t prefix = body.kind == CondKind::kAnd ? body.children.size() : 1;
  UnlessParts parts;
  parts.conditions = body;
  for (const auto* e : excs) {
    if (!e->body || e->body->kind != CondKind::kAnd || e->body->children.size() <= prefix) return std::nullopt;
    const auto& cs = e->body->children;
    parts.disjuncts.push_back(split_prefix({cs.begin() + static_cast<long>(prefix), cs.end()}));
  }
  return parts;
}

std::optional<std::vector<std::pair<std::string, std::string>>> compile_superiority(
    const std::vector<std::pair<std::string, std::string>>& pairs, const std::vector<std::string>& labels,
    std::vector<std::string>& errors) {
  std::set<std::string> known(labels.begin(), labels.end());
  std::vector<std::pair<std::string, std::string>> out;
  std::set<std::pair<std::string, std::string>> seen;
  size_t before = errors.size();
  for (const auto& p : pairs) {
    bool ok = true;
    for (const auto* l : {&p.first, &p.second}) {
      if (!known.count(*l)) {
        errors.push_back("superiority refers to unknown rule label '" + *l + "'");
        ok = false;
      }
    }
    if (ok && p.first == p.second) {
      errors.push_back("rule '" + p.first + "' cannot override itself");
      ok = false;
    }
    if (ok && seen.insert(p).second) out.push_back(p);
  }
  std::map<std::string, std::vector<std::string>> edges;
  for (const auto& [sup, inf] : out) edges[sup].push_back(inf);
  std::map<std::string, int> state;
  for (const auto& [sup, inf] : out) {
    std::vector<std::string> stack, cycle;
    if (state[sup] == 0 && find_cycle(sup, edges, state, stack, cycle)) {
      std::string text;
      for (const auto& c : cycle) text += (text.empty() ? "'" : " > '") + c + "'";
      errors.push_back("superiority cycle: " + text);
      break;
    }
  }
  if (errors.size() != before) return std::nullopt;
  return out;
}

std::vector<std::string> range_restriction_violations(const Rule& rule) {
  std::vector<std::string> out;
  VarSet bound;
  if (rule.body) {
    bound = bound_of(*rule.body, {});
    check_bound(*rule.body, bound, out);
  }
  std::vector<std::string> head_vars;
  collect_variables(rule.head, head_vars);
  for (const auto& v : head_vars)
    if (!bound.count(v) && std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  return out;
}

CompileResult compile_document(const SurfaceDocument& doc, const CompileOptions& options) {
  return Compiler(doc, options).run();
}

CompileResult compile_source(std::string_view source, const std::string& origin, const CompileOptions& options) {
  ParseResult parsed = parse_source(source, origin);
  if (has_errors(parsed.diagnostics)) return CompileResult{std::nullopt, std::move(parsed.diagnostics)};
  CompileResult result = compile_document(parsed.document, options);
  parsed.diagnostics.insert(parsed.diagnostics.end(), result.diagnostics.begin(), result.diagnostics.end());
  result.diagnostics = std::move(parsed.diagnostics);
  return result;
}

}  // namespace lexlog

#include "lexlog/renderer.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "lexlog/explain.hpp"

namespace lexlog {

namespace {

using TermText = std::function<std::string(const Term&)>;

std::string article(const std::string& noun) {
  if (!noun.empty() && std::string_view("aeiouAEIOU").find(noun[0]) != std::string_view::npos) return "an";
  return "a";
}

std::string noun_of(const Term& v) { return v.noun.empty() ? "thing" : v.noun; }

bool is_named(const Term& v) { return !v.name.empty() && v.name[0] != '_'; }

std::string deontic_prefix(const Literal& l) {
  switch (l.mode) {
    case Mode::kNone: return l.neg ? "it is not the case that " : "";
    case Mode::kObligation: return l.neg ? "it is prohibited that " : "it is obligatory that ";
    case Mode::kPermission: return l.neg ? "it is permitted that it is not the case that " : "it is permitted that ";
  }
  return {};
}

const Template* template_for(const TemplateRegistry& reg, const std::string& pred) {
  if (auto op = builtin_op_from_name(pred)) {
    for (const auto& b : reg.builtins())
      if (b.builtin == *op) return &b;
    return nullptr;
  }
  return reg.find(pred);
}

// Fills the predicate's template; deontic prefixes are left to the caller.
std::optional<std::string> fill(const TemplateRegistry& reg, const Literal& l, const TermText& tt,
                                std::string* error,
                                const std::function<std::string(const std::string&)>& word_hook = nullptr) {
  const Template* t = template_for(reg, l.pred);
  if (!t || t->arity != static_cast<int>(l.args.size())) {
    if (error) *error = "no template for predicate '" + l.pred + "'";
    return std::nullopt;
  }
  std::string out;
  size_t slot = 0;
  for (const auto& item : t->pattern) {
    std::string piece;
    if (!item.is_slot) {
      piece = word_hook ? word_hook(item.word) : item.word;
    } else {
      const Term& arg = l.args[slot++];
      if (arg.kind == TermKind::kReified) {
        auto inner = fill(reg, *arg.prop, tt, error);
        if (!inner) return std::nullopt;
        piece = deontic_prefix(*arg.prop) + *inner;
      } else {
        piece = tt(arg);
      }
    }
    if (piece.empty()) continue;
    if (!out.empty()) out += ' ';
    out += piece;
  }
  return out;
}

std::string constant_text(const Term& t, DateStyle dates) {
  if (t.const_kind == ConstKind::kDate && dates == DateStyle::kTranscript) return transcript_date(t.name);
  return t.name;
}

// Tracks first mentions of variables within one sentence.
struct Mentions {
  std::set<std::string> seen;
  bool query = false;
  bool all_definite = false;

  std::string text(const Term& t) {
    if (!t.is_variable()) return t.name;
    if (query) return "which " + noun_of(t);
    if (all_definite || seen.count(t.name)) return is_named(t) ? t.name : "the " + noun_of(t);
    seen.insert(t.name);
    std::string out = article(noun_of(t)) + " " + noun_of(t);
    if (is_named(t)) out += " " + t.name;
    return out;
  }
};

struct OutLine {
  int indent = 0;
  std::string text;
};

class Writer {
 public:
  Writer(const TemplateRegistry& reg, Mentions& m, std::vector<OutLine>& lines, std::vector<std::string>& errors)
      : reg_(reg), m_(m), lines_(lines), errors_(errors) {}

  std::string sentence(const Literal& l) {
    std::string err;
    auto text = fill(reg_, l, [&](const Term& t) { return m_.text(t); }, &err);
    if (!text) {
      errors_.push_back(err);
      return "?";
    }
    return deontic_prefix(l) + *text;
  }

  // The first line goes at first_indent with conn; later lines follow depth.
  void emit(const Condition& c, int depth, const std::string& conn, int first_indent) {
    std::string lead = conn.empty() ? "" : conn + " ";
    int base = std::max(first_indent, depth);
    switch (c.kind) {
      case CondKind::kLiteral:
      case CondKind::kBuiltin: lines_.push_back({first_indent, lead + sentence(c.literal)}); return;
      case CondKind::kNaf: {
        const Condition& inner = c.children[0];
        if (inner.kind == CondKind::kLiteral || inner.kind == CondKind::kBuiltin) {
          lines_.push_back({first_indent, lead + "it is not the case that " + sentence(inner.literal)});
          return;
        }
        lines_.push_back({first_indent, lead + "it is not the case that"});
        emit(inner, base + 2, "", base + 2);
        return;
      }
      case CondKind::kForall:
        lines_.push_back({first_indent, lead + "for all cases in which"});
        emit(c.children[0], base + 4, "", base + 4);
        lines_.push_back({base + 2, "it is the case that"});
        emit(c.children[1], base + 4, "", base + 4);
        return;
      case CondKind::kAnd:
        for (size_t i = 0; i < c.children.size(); ++i) {
          const Condition& ch = c.children[i];
          int d = ch.kind == CondKind::kOr ? depth + 2 : depth;
          if (i == 0) {
            emit(ch, d, conn, first_indent);
          } else {
            emit(ch, d, "and", depth);
          }
        }
        return;
      case CondKind::kOr:
        for (size_t i = 0; i < c.children.size(); ++i) {
          if (i == 0) {
            emit(c.children[i], depth, conn, first_indent);
          } else {
            emit(c.children[i], depth, "or", depth);
          }
        }
        return;
    }
  }

 private:
  const TemplateRegistry& reg_;
  Mentions& m_;
  std::vector<OutLine>& lines_;
  std::vector<std::string>& errors_;
};

std::string join_lines(const std::vector<OutLine>& lines) {
  std::string out;
  for (const auto& l : lines) out += std::string(static_cast<size_t>(l.indent), ' ') + l.text + "\n";
  return out;
}

bool looks_like_verb(const std::string& w) {
  static const std::set<std::string> kVerbs = {"is", "are", "has", "have", "does", "can", "must", "may"};
  static const std::set<std::string> kNot = {"its", "his", "this", "thus", "as", "was", "us", "yes", "less"};
  if (kVerbs.count(w)) return true;
  if (kNot.count(w) || w.size() < 3) return false;
  return w.back() == 's' && w[w.size() - 2] != 's' && w[w.size() - 2] != 'u';
}

std::string gerund(const std::string& verb) {
  if (verb == "is" || verb == "are") return "being";
  if (verb == "has" || verb == "have") return "having";
  if (verb == "does") return "doing";
  if (verb == "can") return "being able to";
  if (verb == "may") return "being allowed to";
  if (verb == "must") return "having to";
  std::string w = verb;
  if (w.size() > 2 && w.back() == 's') w.pop_back();
  if (w.size() > 2 && w.back() == 'e' && w[w.size() - 2] != 'e') w.pop_back();
  return w + "ing";
}

// Rule lines in document form; render errors go to errors.
void rule_lines(const KnowledgeBase& kb, const Rule& r, std::vector<OutLine>& lines, std::vector<std::string>& errors,
                int indent) {
  Mentions m;
  Writer w(kb.templates, m, lines, errors);
  std::string first = r.label + ": ";
  if (r.kind == RuleKind::kStrict && r.body) first += "strictly: ";
  if (r.kind == RuleKind::kDefeater) first += "defeater: ";
  first += w.sentence(r.head);
  auto parts = unless_parts(kb, r);
  if (!r.body) {
    lines.push_back({indent, first + "."});
    return;
  }
  lines.push_back({indent, first + " if"});
  if (parts) {
    w.emit(parts->conditions, indent + 2, "", indent + 2);
    lines.push_back({indent, "unless"});
    w.emit(Condition::disj(parts->disjuncts), indent + 2, "", indent + 2);
  } else {
    w.emit(*r.body, indent + 2, "", indent + 2);
  }
  lines.back().text += ".";
}

bool generated_pair(const KnowledgeBase& kb, const std::pair<std::string, std::string>& p) {
  const Rule* sup = kb.find_rule(p.first);
  return sup && sup->exception_of == p.second;
}

}  // namespace

std::string transcript_date(const std::string& iso) {
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') return iso;
  int m = std::stoi(iso.substr(5, 2));
  int d = std::stoi(iso.substr(8, 2));
  return iso.substr(0, 4) + "-" + std::to_string(m) + "-" + std::to_string(d) + "T0:0:0.0";
}

std::optional<std::string> render_literal(const TemplateRegistry& templates, const Literal& l, const TextStyle& style,
                                          std::string* error) {
  auto tt = [&](const Term& t) -> std::string {
    if (t.is_variable()) {
      std::string phrase = article(noun_of(t)) + " " + noun_of(t);
      return style.quote_unbound ? "\"" + phrase + "\"" : phrase;
    }
    return constant_text(t, style.dates);
  };
  auto text = fill(templates, l, tt, error);
  if (!text) return std::nullopt;
  return deontic_prefix(l) + *text;
}

std::optional<std::string> render_rule(const KnowledgeBase& kb, const Rule& rule, std::string* error) {
  std::vector<OutLine> lines;
  std::vector<std::string> errors;
  bool allowed_form = !rule.exception_of.empty() && rule.head.mode == Mode::kPermission && !rule.head.neg && rule.body;
  const Template* t = allowed_form ? template_for(kb.templates, rule.head.pred) : nullptr;
  if (allowed_form && t && t->pattern.size() >= 2 && t->pattern[0].is_slot && !t->pattern[1].is_slot) {
    Mentions m;
    m.all_definite = true;
    Writer w(kb.templates, m, lines, errors);
    bool done = false;
    auto hook = [&](const std::string& word) {
      if (done || !looks_like_verb(word)) return word;
      done = true;
      return gerund(word);
    };
    std::string err;
    auto phrase = fill(kb.templates, rule.head, [&](const Term& x) { return m.text(x); }, &err, hook);
    if (!phrase) {
      if (error) *error = err;
      return std::nullopt;
    }
    lines.push_back({0, *phrase + " is allowed if"});
    w.emit(*rule.body, 2, "", 2);
    lines.back().text += ".";
  } else {
    rule_lines(kb, rule, lines, errors, 0);
  }
  if (!errors.empty()) {
    if (error) *error = errors.front();
    return std::nullopt;
  }
  return join_lines(lines);
}

RenderResult render_document(const KnowledgeBase& kb) {
  RenderResult out;
  std::vector<OutLine> lines;
  auto blank = [&] {
    if (!lines.empty()) lines.push_back({0, ""});
  };

  auto user = kb.templates.user_templates();
  if (!user.empty()) {
    lines.push_back({0, "the templates are:"});
    for (const auto* t : user) lines.push_back({2, t->pattern_text() + "."});
  }

  std::vector<const Rule*> shown;
  for (const auto& r : kb.rules)
    if (r.exception_of.empty()) shown.push_back(&r);
  if (!shown.empty()) {
    blank();
    lines.push_back({0, "the knowledge base " + (kb.name.empty() ? std::string("main") : kb.name) + " includes:"});
    for (size_t i = 0; i < shown.size(); ++i) {
      if (i) lines.push_back({0, ""});
      out.trace.push_back({shown[i]->label, static_cast<int>(lines.size()) + 1});
      rule_lines(kb, *shown[i], lines, out.errors, 0);
    }
  }

  for (const auto& sc : kb.scenarios) {
    blank();
    lines.push_back({0, "scenario " + sc.name + " is:"});
    for (const auto& f : sc.facts) {
      Mentions m;
      Writer w(kb.templates, m, lines, out.errors);
      lines.push_back({2, w.sentence(f) + "."});
    }
  }

  for (const auto& q : kb.queries) {
    blank();
    lines.push_back({0, "query " + q.name + " is:"});
    Mentions m;
    m.query = true;
    Writer w(kb.templates, m, lines, out.errors);
    lines.push_back({2, w.sentence(q.literal) + "."});
  }

  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& p : kb.superiority)
    if (!generated_pair(kb, p)) pairs.push_back(p);
  if (!pairs.empty()) {
    blank();
    lines.push_back({0, "the superiority relation is:"});
    for (const auto& [sup, inf] : pairs) lines.push_back({2, sup + " overrides " + inf + "."});
  }

  out.text = join_lines(lines);
  return out;
}

std::string render_explanation(const ExplanationTree& tree) {
  std::vector<OutLine> lines;
  std::function<void(const ExplanationNode&, int)> emit = [&](const ExplanationNode& n, int indent) {
    if (n.provenance == Provenance::kBuiltin) return;
    if (n.kind == NodeKind::kProved) {
      std::string by = n.provenance == Provenance::kScenario ? "hypothesis in scenario" : "KB Text";
      lines.push_back({indent, "It is the case that: " + n.text + " as proved by " + by});
    } else {
      lines.push_back({indent, "It cannot be proved for a certain case that: " + n.text + " ~ KB Text"});
    }
    for (const auto& d : n.defeated) lines.push_back({indent, n.rule + " defeats " + d});
    bool any = std::any_of(n.children.begin(), n.children.end(),
                           [](const ExplanationNode& c) { return c.provenance != Provenance::kBuiltin; });
    if (!any) return;
    lines.push_back({indent, "because"});
    for (const auto& c : n.children) emit(c, indent + 2);
  };
  emit(tree.root, 0);
  return join_lines(lines);
}

RoundtripReport roundtrip_check(const KnowledgeBase& kb, const CompileOptions& options) {
  RoundtripReport report;
  RenderResult rendered = render_document(kb);
  report.rendered = rendered.text;
  for (const auto& e : rendered.errors) report.failures.push_back({"render", "", e});
  if (rendered.errors.empty()) {
    CompileResult again = compile_source(rendered.text, "<rendered>", options);
    if (!again.kb) {
      for (const auto& d : again.diagnostics)
        if (d.severity == Severity::kError) report.failures.push_back({"compile", "", format_diagnostic(d)});
    } else {
      auto diffs = compare_kbs(kb, *again.kb);
      report.failures.insert(report.failures.end(), diffs.begin(), diffs.end());
    }
  }
  report.ok = report.failures.empty();
  return report;
}

RoundtripReport roundtrip_check(std::string_view source, const CompileOptions& options) {
  CompileResult first = compile_source(source, "<input>", options);
  if (!first.kb) {
    RoundtripReport report;
    report.ok = false;
    for (const auto& d : first.diagnostics)
      if (d.severity == Severity::kError) report.failures.push_back({"compile", "", format_diagnostic(d)});
    return report;
  }
  return roundtrip_check(*first.kb, options);
}

}  // namespace lexlog

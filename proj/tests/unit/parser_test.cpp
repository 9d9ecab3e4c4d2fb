#include <gtest/gtest.h>

#include <random>

#include "corpus.hpp"
#include "lexlog/parser.hpp"

namespace lexlog {
namespace {

std::string shape(const ConditionTree& t) {
  switch (t.kind) {
    case ConditionKind::kAtom: return join_lexemes(t.phrase);
    case ConditionKind::kNaf: return "not(" + shape(t.children[0]) + ")";
    case ConditionKind::kForall: return "forall(" + shape(t.children[0]) + " ; " + shape(t.children[1]) + ")";
    case ConditionKind::kAnd:
    case ConditionKind::kOr: {
      std::string out = t.kind == ConditionKind::kAnd ? "and(" : "or(";
      for (size_t i = 0; i < t.children.size(); ++i) out += (i ? ", " : "") + shape(t.children[i]);
      return out + ")";
    }
  }
  return "?";
}

SurfaceRule rule_of(const std::string& text) {
  auto parsed = parse_source("the knowledge base k includes:\n" + text, "t");
  EXPECT_TRUE(parsed.diagnostics.empty()) << (parsed.diagnostics.empty() ? "" : parsed.diagnostics[0].message);
  Diagnostics diags;
  auto r = parse_rule_sentence(parsed.document.sections.at(0).sentences.at(0), diags, "t");
  EXPECT_TRUE(r.has_value());
  return r.value_or(SurfaceRule{});
}

TEST(Parser, SectionsAndSentences) {
  auto parsed = parse_source(testing::read_corpus("tax121.le"), "tax121.le");
  ASSERT_TRUE(parsed.diagnostics.empty());
  const auto& s = parsed.document.sections;
  ASSERT_EQ(s.size(), 5u);
  EXPECT_EQ(s[0].kind, SectionKind::kTemplates);
  EXPECT_EQ(s[1].kind, SectionKind::kKnowledgeBase);
  EXPECT_EQ(s[1].name, "section_121");
  EXPECT_EQ(s[1].sentences.size(), 9u);
  EXPECT_EQ(s[2].kind, SectionKind::kScenario);
  EXPECT_EQ(s[2].sentences.size(), 7u);
  EXPECT_EQ(s[3].name, "one");
}

TEST(Parser, AndBindsTighterThanOrAtEqualIndent) {
  auto r = rule_of("x holds if\n  a holds\n  and b holds\n  or c holds.");
  EXPECT_EQ(shape(*r.conditions), "or(and(a holds, b holds), c holds)");
}

TEST(Parser, DeeperIndentBindsTighter) {
  auto r = rule_of("x holds if\n  a holds\n    or b holds\n  and c holds.");
  EXPECT_EQ(shape(*r.conditions), "and(or(a holds, b holds), c holds)");
}

TEST(Parser, CapLayout) {
  auto r = rule_of(
      "x holds if\n    a holds\n    and b holds\n    and c holds\n            and d holds\n        or e holds\n"
      "            and f holds.");
  EXPECT_EQ(shape(*r.conditions), "and(a holds, b holds, or(and(c holds, d holds), and(e holds, f holds)))");
}

TEST(Parser, NegationBlock) {
  auto r = rule_of("x holds if\n  a holds\n  and it is not the case that\n    b holds\n    or c holds\n  and d holds.");
  EXPECT_EQ(shape(*r.conditions), "and(a holds, not(or(b holds, c holds)), d holds)");
}

TEST(Parser, InlineNegation) {
  auto r = rule_of("x holds if\n  a holds\n  and it is not the case that b holds.");
  EXPECT_EQ(shape(*r.conditions), "and(a holds, not(b holds))");
}

TEST(Parser, ForallBlock) {
  auto parsed = parse_source(testing::read_corpus("italian_citizen.le"), "t");
  ASSERT_TRUE(parsed.diagnostics.empty());
  Diagnostics diags;
  auto r = parse_rule_sentence(parsed.document.sections[1].sentences[3], diags, "t");
  ASSERT_TRUE(r);
  EXPECT_EQ(shape(*r->conditions),
            "and(A is born in italy, forall(a person B is the parent of A ; or(B is stateless, B is unknown, A "
            "does not follow the citizenship of B)))");
}

TEST(Parser, UnlessSplitsExceptions) {
  auto r = rule_of("r: it is prohibited that a driver overtakes a vehicle if\n  the driver is behind the vehicle\n"
                   "unless\n  the driver rides a bicycle\n  or the vehicle is stationary\n    and the lane is clear.");
  EXPECT_EQ(r.label, "r");
  EXPECT_EQ(shape(*r.conditions), "the driver is behind the vehicle");
  EXPECT_EQ(shape(*r.exceptions), "or(the driver rides a bicycle, and(the vehicle is stationary, the lane is clear))");
}

TEST(Parser, StrengthPrefixes) {
  EXPECT_EQ(rule_of("s1: strictly: a holds if b holds.").strength, RuleStrength::kStrict);
  EXPECT_EQ(rule_of("d1: defeater: a holds if b holds.").strength, RuleStrength::kDefeater);
  EXPECT_EQ(rule_of("a holds if b holds.").strength, RuleStrength::kDefault);
}

TEST(Parser, SuperiorityPairs) {
  auto parsed = parse_source(testing::read_corpus("rule141.le"), "t");
  ASSERT_TRUE(parsed.diagnostics.empty());
  for (const auto& s : parsed.document.sections) {
    if (s.kind != SectionKind::kSuperiority) continue;
    ASSERT_EQ(s.pairs.size(), 6u);
    EXPECT_EQ(s.pairs[0].superior.lexeme, "r141_bicycle");
    EXPECT_EQ(s.pairs[0].inferior.lexeme, "r141");
  }
}

TEST(Parser, Errors) {
  auto unknown = parse_source("the rules are:\n  x.", "t");
  ASSERT_FALSE(unknown.diagnostics.empty());
  EXPECT_NE(unknown.diagnostics[0].message.find("unknown section header"), std::string::npos);

  auto dup = parse_source("scenario a is:\n  x.\nscenario a is:\n  y.", "t");
  ASSERT_FALSE(dup.diagnostics.empty());
  EXPECT_NE(dup.diagnostics[0].message.find("duplicate"), std::string::npos);

  auto two = parse_source("query q is:\n  x.\n  y.", "t");
  ASSERT_FALSE(two.diagnostics.empty());

  auto sup = parse_source("the superiority relation is:\n  a beats b.", "t");
  ASSERT_FALSE(sup.diagnostics.empty());
  EXPECT_NE(sup.diagnostics[0].message.find("overrides"), std::string::npos);
}

TEST(Parser, ForallWithoutSeparatorIsAnError) {
  auto parsed = parse_source("the knowledge base k includes:\nx holds if\n  for all cases in which\n  a holds.", "t");
  ASSERT_TRUE(parsed.diagnostics.empty());
  Diagnostics diags;
  EXPECT_FALSE(parse_rule_sentence(parsed.document.sections[0].sentences[0], diags, "t"));
  ASSERT_FALSE(diags.empty());
  EXPECT_NE(diags[0].message.find("it is the case that"), std::string::npos);
}

// Shifting every condition line by the same amount must not change the tree.
TEST(Parser, IndentationShiftInvariance) {
  std::mt19937 rng(7);
  const std::vector<std::pair<int, std::string>> lines{
      {4, "a holds"}, {4, "and b holds"}, {4, "and c holds"}, {12, "and d holds"}, {8, "or e holds"}, {12, "and f holds"}};
  auto build = [&](int shift) {
    std::string text = "x holds if\n";
    for (size_t i = 0; i < lines.size(); ++i)
      text += std::string(static_cast<size_t>(lines[i].first + shift), ' ') + lines[i].second +
              (i + 1 == lines.size() ? ".\n" : "\n");
    return text;
  };
  std::string base = shape(*rule_of(build(0)).conditions);
  for (int n = 0; n < 50; ++n) {
    int shift = std::uniform_int_distribution<int>(-3, 20)(rng);
    EXPECT_EQ(shape(*rule_of(build(shift)).conditions), base) << "shift " << shift;
  }
}

}  // namespace
}  // namespace lexlog

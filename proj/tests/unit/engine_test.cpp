#include <gtest/gtest.h>

#include <iostream>
#include <random>

#include "corpus.hpp"
#include "lexlog/deontic.hpp"
#include "lexlog/engine.hpp"
#include "oracle.hpp"

namespace lexlog {
namespace {

Literal prop(const std::string& name, bool neg = false, Mode mode = Mode::kNone) {
  Literal l;
  l.pred = name + "/0";
  l.neg = neg;
  l.mode = mode;
  return l;
}

Rule rule(const std::string& label, RuleKind kind, Literal head, std::vector<Literal> body) {
  Rule r;
  r.label = label;
  r.kind = kind;
  r.head = std::move(head);
  std::vector<Condition> cs;
  for (auto& b : body) cs.push_back(Condition::lit(std::move(b)));
  if (cs.size() == 1) r.body = cs[0];
  if (cs.size() > 1) r.body = Condition::conj(std::move(cs));
  return r;
}

TagSet tags_of(const Engine& e, const Literal& l) {
  auto id = e.find(l);
  return id ? e.tags(*id) : TagSet{false, true, false, true, false};
}

struct MotorbikeTheory : ::testing::Test {
  KnowledgeBase kb;
  Scenario facts;
  void SetUp() override {
    kb.rules.push_back(rule("r1", RuleKind::kDefeasible, prop("edge_filter"), {prop("motorbike")}));
    kb.rules.push_back(rule("r2", RuleKind::kDefeasible, prop("edge_filter", true), {prop("vehicle")}));
    facts.facts = {prop("motorbike"), prop("vehicle")};
  }
};

TEST_F(MotorbikeTheory, UnprioritizedConflictProvesNeither) {
  Engine e = Engine::run(kb, &facts);
  EXPECT_TRUE(tags_of(e, prop("edge_filter")).minus_partial);
  EXPECT_TRUE(tags_of(e, prop("edge_filter", true)).minus_partial);
  EXPECT_FALSE(tags_of(e, prop("edge_filter")).plus_partial);
  EXPECT_EQ(detect_blocked_conflicts(e).size(), 1u);
}

TEST_F(MotorbikeTheory, SuperiorityResolvesConflict) {
  kb.superiority.emplace_back("r1", "r2");
  Engine e = Engine::run(kb, &facts);
  EXPECT_TRUE(tags_of(e, prop("edge_filter")).plus_partial);
  EXPECT_TRUE(tags_of(e, prop("edge_filter", true)).minus_partial);
  EXPECT_TRUE(detect_blocked_conflicts(e).empty());
}

TEST_F(MotorbikeTheory, DefeaterBlocksWithoutSupporting) {
  kb.rules.erase(kb.rules.begin() + 1);
  kb.rules.push_back(rule("d1", RuleKind::kDefeater, prop("edge_filter", true), {prop("no_licence")}));
  facts.facts.push_back(prop("no_licence"));
  Engine e = Engine::run(kb, &facts);
  EXPECT_FALSE(tags_of(e, prop("edge_filter")).plus_partial);
  EXPECT_FALSE(tags_of(e, prop("edge_filter", true)).plus_partial);
  EXPECT_TRUE(tags_of(e, prop("edge_filter", true)).minus_partial);
}

TEST(Engine, StrictRulesBeatDefeasibleOnes) {
  KnowledgeBase kb;
  kb.rules.push_back(rule("s", RuleKind::kStrict, prop("vehicle"), {prop("motorbike")}));
  kb.rules.push_back(rule("d", RuleKind::kDefeasible, prop("vehicle", true), {prop("motorbike")}));
  Scenario s{"s", {prop("motorbike")}};
  Engine e = Engine::run(kb, &s);
  EXPECT_TRUE(tags_of(e, prop("vehicle")).plus_delta);
  EXPECT_TRUE(tags_of(e, prop("vehicle")).plus_partial);
  EXPECT_TRUE(tags_of(e, prop("vehicle", true)).minus_partial);
}

TEST(Engine, StrictInconsistencyIsWithheld) {
  KnowledgeBase kb;
  kb.rules.push_back(rule("s1", RuleKind::kStrict, prop("q"), {prop("a")}));
  kb.rules.push_back(rule("s2", RuleKind::kStrict, prop("q", true), {prop("a")}));
  Scenario s{"s", {prop("a")}};
  Engine e = Engine::run(kb, &s);
  EXPECT_TRUE(tags_of(e, prop("q")).withheld);
  EXPECT_TRUE(tags_of(e, prop("q", true)).withheld);
  EXPECT_FALSE(tags_of(e, prop("q")).plus_partial);
  EXPECT_FALSE(e.warnings().empty());
}

TEST(Engine, PositiveLoopIsUnfounded) {
  KnowledgeBase kb;
  kb.rules.push_back(rule("a", RuleKind::kDefeasible, prop("p"), {prop("q")}));
  kb.rules.push_back(rule("b", RuleKind::kDefeasible, prop("q"), {prop("p")}));
  kb.rules.push_back(rule("c", RuleKind::kStrict, prop("r"), {prop("r")}));
  Engine e = Engine::run(kb, nullptr);
  EXPECT_TRUE(tags_of(e, prop("p")).minus_partial);
  EXPECT_TRUE(tags_of(e, prop("q")).minus_partial);
  EXPECT_TRUE(tags_of(e, prop("r")).minus_delta);
  EXPECT_TRUE(tags_of(e, prop("r")).minus_partial);
}

TEST(Engine, ProhibitionConflictsWithPermission) {
  KnowledgeBase kb;
  Literal forbidden = prop("overtake", true, Mode::kObligation);
  Literal allowed = prop("overtake", false, Mode::kPermission);
  kb.rules.push_back(rule("f", RuleKind::kDefeasible, forbidden, {}));
  kb.rules.push_back(rule("p", RuleKind::kDefeasible, allowed, {prop("bicycle")}));
  kb.superiority.emplace_back("p", "f");
  Scenario bare{"bare", {}};
  Scenario bike{"bike", {prop("bicycle")}};
  Engine e1 = Engine::run(kb, &bare);
  EXPECT_TRUE(tags_of(e1, forbidden).plus_partial);
  Engine e2 = Engine::run(kb, &bike);
  EXPECT_TRUE(tags_of(e2, allowed).plus_partial);
  EXPECT_TRUE(tags_of(e2, forbidden).minus_partial);
}

TEST(Engine, OracleEquivalenceOnRandomTheories) {
  std::mt19937 rng(20240611);
  int mismatches = 0, defeasible_only = 0, blocked = 0;
  for (int n = 0; n < 1000; ++n) {
    testing::GroundTheory t = testing::random_theory(rng);
    KnowledgeBase kb = testing::to_kb(t);
    Engine e = Engine::run(kb, &kb.scenarios[0]);
    auto expected = testing::oracle_tags(t);
    blocked += static_cast<int>(detect_blocked_conflicts(e).size());
    for (size_t q = 0; q < t.literals.size(); ++q) {
      TagSet got = tags_of(e, t.literals[q]);
      if (got.plus_partial && !got.plus_delta) ++defeasible_only;
      if (got == expected[q]) continue;
      if (++mismatches <= 3) {
        ADD_FAILURE() << "theory " << n << " literal " << literal_key(t.literals[q]) << ": engine "
                      << testing::describe(got) << "oracle " << testing::describe(expected[q]) << "\n"
                      << testing::describe(t);
      }
    }
  }
  EXPECT_EQ(mismatches, 0);
  // The generator has to reach the interesting cases.
  EXPECT_GT(defeasible_only, 500);
  EXPECT_GT(blocked, 100);
  std::cout << "defeasible-only conclusions " << defeasible_only << ", blocked conflicts " << blocked << "\n";
}

TEST(Engine, CoherenceOnRandomTheories) {
  std::mt19937 rng(20240611);
  for (int n = 0; n < 1000; ++n) {
    testing::GroundTheory t = testing::random_theory(rng);
    KnowledgeBase kb = testing::to_kb(t);
    Engine e = Engine::run(kb, &kb.scenarios[0]);
    for (size_t id = 0; id < e.literal_count(); ++id) {
      const TagSet& tg = e.tags(id);
      if (tg.plus_delta && !tg.withheld) ASSERT_TRUE(tg.plus_partial) << testing::describe(t);
      ASSERT_FALSE(tg.plus_partial && tg.minus_partial) << testing::describe(t);
      ASSERT_FALSE(tg.plus_delta && tg.minus_delta) << testing::describe(t);
      for (size_t c : e.conflicts(id)) ASSERT_FALSE(tg.plus_partial && e.tags(c).plus_partial) << testing::describe(t);
    }
  }
}

TEST(Engine, GroundsTaxScenarioConstants) {
  KnowledgeBase kb = testing::load_corpus("tax121.le");
  Engine e = Engine::run(kb, kb.find_scenario("one"));
  bool date = false, sale = false;
  for (size_t id = 0; id < e.literal_count(); ++id) {
    for (const auto& a : e.literal(id).args) {
      if (a.kind == TermKind::kConstant && a.const_kind == ConstKind::kDate && a.name == "2022-06-20") date = true;
      if (a.kind == TermKind::kConstant && a.name == "the sale") sale = true;
    }
  }
  EXPECT_TRUE(date);
  EXPECT_TRUE(sale);
}

TEST(Engine, TaxQueryHasOneAnswer) {
  KnowledgeBase kb = testing::load_corpus("tax121.le");
  Engine e = Engine::run(kb, kb.find_scenario("one"));
  auto answers = answer_query(e, kb.find_query("one")->literal);
  ASSERT_EQ(answers.size(), 1u);
  std::map<std::string, std::string> got;
  for (const auto& [noun, value] : answers[0].bindings) got[noun] = value.name;
  std::map<std::string, std::string> want{
      {"taxpayer", "the taxpayer"}, {"exchange", "the sale"}, {"property", "the house"}, {"date", "2022-06-20"}};
  EXPECT_EQ(got, want);
}

TEST(Engine, CapLimitsExcludedAmount) {
  KnowledgeBase kb = testing::load_corpus("tax121.le");
  Engine e = Engine::run(kb, kb.find_scenario("one"));
  auto answers = answer_query(e, kb.find_query("amount")->literal);
  ASSERT_EQ(answers.size(), 1u);
  EXPECT_EQ(answers[0].bindings.back().second.name, "250000");
}

TEST(Engine, VacuousForall) {
  KnowledgeBase kb = testing::load_corpus("italian_citizen.le");
  Engine e = Engine::run(kb, kb.find_scenario("c"));
  auto answers = answer_query(e, kb.find_query("one")->literal);
  ASSERT_EQ(answers.size(), 1u);
  EXPECT_EQ(answers[0].bindings[0].second.name, "sofia");
}

TEST(Engine, ForallFailsWhenAParentCanPassCitizenship) {
  KnowledgeBase kb = testing::load_corpus("italian_citizen.le");
  Scenario s{"d", {}};
  for (const auto& f : kb.find_scenario("a")->facts)
    if (f.pred != "is_stateless/1") s.facts.push_back(f);
  Engine e = Engine::run(kb, &s);
  EXPECT_TRUE(answer_query(e, kb.find_query("one")->literal).empty());
}

TEST(Engine, Rule141BlockedConflictWithoutSuperiority) {
  KnowledgeBase kb = testing::load_corpus("rule141.le");
  kb.superiority.clear();
  Engine e = Engine::run(kb, kb.find_scenario("bicycle"));
  auto conflicts = detect_blocked_conflicts(e);
  ASSERT_EQ(conflicts.size(), 1u);
  EXPECT_FALSE(e.tags(conflicts[0].first).plus_partial);
  EXPECT_FALSE(e.tags(conflicts[0].second).plus_partial);
}

TEST(Engine, SupportingRulesListsApplicableRules) {
  KnowledgeBase kb = testing::load_corpus("rule141.le");
  Engine e = Engine::run(kb, kb.find_scenario("bicycle"));
  auto answers = answer_query(e, kb.find_query("permitted")->literal);
  ASSERT_EQ(answers.size(), 1u);
  EXPECT_EQ(supporting_rules(e, answers[0].literal), std::vector<std::string>{"r141_bicycle"});
}

TEST(Engine, UnknownScenarioIsAnError) {
  KnowledgeBase kb = testing::load_corpus("rule141.le");
  std::string err;
  EXPECT_FALSE(Engine::run(kb, "nope", err));
  EXPECT_NE(err.find("nope"), std::string::npos);
}

TEST(Engine, BuiltinComparisons) {
  EXPECT_TRUE(eval_builtin(BuiltinOp::kGe, Term::number("250000"), Term::number("250000")).value);
  EXPECT_FALSE(eval_builtin(BuiltinOp::kLt, Term::number("3"), Term::number("2.5")).value);
  EXPECT_TRUE(eval_builtin(BuiltinOp::kBeforeOrAt, Term::date("2022-03-01"), Term::date("2022-03-04")).value);
  EXPECT_FALSE(eval_builtin(BuiltinOp::kGe, Term::number("1"), Term::date("2022-03-04")).ok);
  auto bind = eval_builtin(BuiltinOp::kIs, Term::variable("G"), Term::number("7"));
  ASSERT_TRUE(bind.binding);
  EXPECT_EQ(bind.binding->name, "7");
  EXPECT_TRUE(eval_builtin(BuiltinOp::kDifferent, Term::atom("x"), Term::atom("y")).value);
}

}  // namespace
}  // namespace lexlog

#include <gtest/gtest.h>

#include <functional>
#include <set>

#include "corpus.hpp"
#include "lexlog/ir_json.hpp"

namespace lexlog {
namespace {

using testing::corpus_files;
using testing::load_corpus;

nlohmann::json ir_of(const std::string& file) { return nlohmann::json::parse(kb_to_json(load_corpus(file)).dump()); }

std::string load_error(const nlohmann::json& j) {
  std::string err;
  auto kb = kb_from_json(j, err);
  EXPECT_FALSE(kb);
  return err;
}

TEST(IrJson, CorpusRoundtrip) {
  for (bool naf : {false, true}) {
    CompileOptions options;
    options.unless_naf = naf;
    for (const auto& file : corpus_files()) {
      KnowledgeBase kb = load_corpus(file, options);
      std::string text = kb_to_json(kb).dump();
      std::string err;
      auto back = kb_from_json(nlohmann::json::parse(text), err);
      ASSERT_TRUE(back) << file << ": " << err;
      auto diffs = compare_kbs(kb, *back);
      EXPECT_TRUE(diffs.empty()) << file << ": " << (diffs.empty() ? "" : diffs[0].detail);
      EXPECT_EQ(kb_to_json(*back).dump(), text) << file;
    }
  }
}

TEST(IrJson, SchemaTag) {
  auto j = ir_of("meeting.le");
  EXPECT_EQ(j.at("schema"), "lexlog-ir v1");
  j["schema"] = "lexlog-ir v2";
  EXPECT_NE(load_error(j).find("schema"), std::string::npos);
  EXPECT_NE(load_error(nlohmann::json::array()).find("object"), std::string::npos);
}

TEST(IrJson, NafFieldsPresentOnlyWhenUsed) {
  auto plain = ir_of("rule140.le");
  bool exception = false;
  for (const auto& r : plain.at("rules")) {
    EXPECT_FALSE(r.contains("naf-unless"));
    exception = exception || r.contains("exception-of");
  }
  EXPECT_TRUE(exception);
  EXPECT_FALSE(plain.at("superiority").empty());

  CompileOptions options;
  options.unless_naf = true;
  auto naf = kb_to_json(load_corpus("rule140.le", options));
  ASSERT_EQ(naf.at("rules").size(), 1u);
  EXPECT_EQ(naf.at("rules")[0].at("naf-unless"), 1);
  EXPECT_TRUE(naf.at("superiority").empty());
}

TEST(IrJson, BadTerms) {
  EXPECT_THROW(term_from_json(nlohmann::json{{"const", "12x"}, {"type", "number"}}), std::runtime_error);
  EXPECT_THROW(term_from_json(nlohmann::json{{"const", "a"}, {"type", "colour"}}), std::runtime_error);
  EXPECT_THROW(term_from_json(nlohmann::json{{"nothing", 1}}), std::runtime_error);
  EXPECT_THROW(term_from_json(nlohmann::json("x")), std::runtime_error);
  Term n = term_from_json(nlohmann::json{{"const", "2.5"}, {"type", "number"}});
  EXPECT_EQ(n.const_kind, ConstKind::kNumber);
}

TEST(IrJson, BadStructure) {
  auto j = ir_of("rule141.le");
  auto dup = j;
  dup["rules"].push_back(dup["rules"][0]);
  EXPECT_NE(load_error(dup).find("duplicate"), std::string::npos);

  auto sup = j;
  sup["superiority"].push_back({"r141", "nowhere"});
  EXPECT_NE(load_error(sup).find("unknown rule"), std::string::npos);

  auto mode = j;
  mode["rules"][0]["head"]["mode"] = "F";
  EXPECT_NE(load_error(mode).find("mode"), std::string::npos);

  auto kind = j;
  kind["rules"][0]["kind"] = "soft";
  EXPECT_NE(load_error(kind).find("rule kind"), std::string::npos);

  auto op = j;
  op["rules"][0]["body"] = {{"builtin", "~~"}, {"args", nlohmann::json::array()}};
  EXPECT_NE(load_error(op).find("builtin"), std::string::npos);

  auto single = j;
  single["rules"][0]["body"] = {{"and", {single["rules"][0]["head"]}}};
  EXPECT_FALSE(load_error(single).empty());

  auto fact = ir_of("meeting.le");
  fact["scenarios"][0]["facts"][0]["args"][0] = {{"var", "X"}, {"noun", "person"}};
  EXPECT_NE(load_error(fact).find("variables"), std::string::npos);

  auto pattern = j;
  pattern["templates"][0]["pattern"] = "";
  EXPECT_FALSE(load_error(pattern).empty());
}

TEST(IrJson, ConditionShapes) {
  auto kb = load_corpus("tax121.le");
  std::set<std::string> keys;
  std::function<void(const nlohmann::json&)> walk = [&](const nlohmann::json& c) {
    for (const auto& [k, v] : c.items()) {
      keys.insert(k);
      if (k == "and" || k == "or")
        for (const auto& ch : v) walk(ch);
      if (k == "not") walk(v);
    }
  };
  for (const auto& r : kb.rules)
    if (r.body) walk(nlohmann::json::parse(condition_to_json(*r.body).dump()));
  for (const char* k : {"and", "or", "not", "builtin", "lit"}) EXPECT_TRUE(keys.count(k)) << k;
}

}  // namespace
}  // namespace lexlog

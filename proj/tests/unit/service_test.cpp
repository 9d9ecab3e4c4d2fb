#include <gtest/gtest.h>

#include <thread>

#include <httplib.h>

#include "corpus.hpp"
#include "lexlog/api.hpp"
#include "lexlog/service.hpp"

namespace lexlog {
namespace {

using testing::read_corpus;

nlohmann::json body_of(const HttpReply& r) { return nlohmann::json::parse(r.body); }

std::string tax_query(const std::string& query = "one") {
  nlohmann::json req;
  req["source"] = read_corpus("tax121.le");
  req["scenario"] = "one";
  req["query"] = query;
  return req.dump();
}

TEST(Service, Health) {
  auto r = handle_request("GET", "/v1/health", "");
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(body_of(r).at("ok"), true);
  EXPECT_EQ(handle_request("POST", "/v1/health", "").status, 405);
}

TEST(Service, RoutingErrors) {
  EXPECT_EQ(handle_request("POST", "/v2/query", "{}").status, 404);
  EXPECT_EQ(handle_request("GET", "/v1/query", "").status, 405);
  EXPECT_EQ(handle_request("POST", "/v1/query", std::string(kMaxRequestBytes + 1, ' ')).status, 413);
  auto bad = handle_request("POST", "/v1/query", "{not json");
  EXPECT_EQ(bad.status, 400);
  EXPECT_TRUE(body_of(bad).contains("error"));
  EXPECT_EQ(handle_request("POST", "/v1/query", "[1, 2]").status, 400);
  EXPECT_EQ(handle_request("POST", "/v1/query", "{}").status, 400);
}

TEST(Service, Query) {
  auto r = handle_request("POST", "/v1/query", tax_query());
  ASSERT_EQ(r.status, 200) << r.body;
  auto j = body_of(r);
  EXPECT_EQ(j.at("schema"), "lexlog-out v1");
  ASSERT_EQ(j.at("answers").size(), 1u);
  const auto& b = j.at("answers")[0].at("bindings");
  EXPECT_EQ(b.at("taxpayer"), "the taxpayer");
  EXPECT_EQ(b.at("property"), "the house");
  EXPECT_EQ(b.at("date"), "2022-06-20");
  EXPECT_TRUE(j.at("conflicts").empty());
}

TEST(Service, QueryCap) {
  auto j = body_of(handle_request("POST", "/v1/query", tax_query("amount")));
  ASSERT_EQ(j.at("answers").size(), 1u);
  EXPECT_EQ(j.at("answers")[0].at("bindings").at("amount"), "250000");
}

TEST(Service, UnknownNames) {
  nlohmann::json req = nlohmann::json::parse(tax_query());
  req["scenario"] = "nope";
  EXPECT_EQ(handle_request("POST", "/v1/query", req.dump()).status, 400);
  req["scenario"] = "one";
  req["query"] = "nope";
  EXPECT_EQ(handle_request("POST", "/v1/query", req.dump()).status, 400);
}

TEST(Service, CompileErrorsAre422) {
  nlohmann::json req;
  req["source"] = "the knowledge base broken includes:\nthe meeting is late.\n";
  auto r = handle_request("POST", "/v1/compile", req.dump());
  EXPECT_EQ(r.status, 422);
  auto diags = body_of(r).at("diagnostics");
  ASSERT_FALSE(diags.empty());
  for (const char* key : {"severity", "file", "line", "col-start", "message"}) EXPECT_TRUE(diags[0].contains(key));
}

TEST(Service, ExplainAndRender) {
  nlohmann::json req = nlohmann::json::parse(tax_query());
  auto ex = body_of(handle_request("POST", "/v1/explain", req.dump()));
  EXPECT_EQ(ex.at("tree").at("kind"), "proved");
  EXPECT_NE(ex.at("transcript").get<std::string>().find("It cannot be proved"), std::string::npos);

  nlohmann::json compile;
  compile["source"] = read_corpus("meeting.le");
  auto ir = body_of(handle_request("POST", "/v1/compile", compile.dump())).at("ir");
  nlohmann::json render;
  render["ir"] = ir;
  auto rendered = handle_request("POST", "/v1/render", render.dump());
  ASSERT_EQ(rendered.status, 200);
  EXPECT_FALSE(body_of(rendered).at("trace").empty());

  render["ir"]["schema"] = "other";
  EXPECT_EQ(handle_request("POST", "/v1/render", render.dump()).status, 400);
}

TEST(Service, QueryFromIr) {
  nlohmann::json compile;
  compile["source"] = read_corpus("rule141.le");
  auto ir = body_of(handle_request("POST", "/v1/compile", compile.dump())).at("ir");
  nlohmann::json req;
  req["ir"] = ir;
  req["scenario"] = "edge";
  req["query"] = "permitted";
  auto j = body_of(handle_request("POST", "/v1/query", req.dump()));
  EXPECT_FALSE(j.at("conflicts").empty());
}

TEST(Service, CheckReportsRoundtrip) {
  nlohmann::json req;
  req["source"] = read_corpus("rule141_unless.le");
  req["unless-naf"] = true;
  auto j = body_of(handle_request("POST", "/v1/check", req.dump()));
  EXPECT_EQ(j.at("roundtrip").at("ok"), true);
}

TEST(Service, CliAndServiceBytesMatch) {
  nlohmann::json req = nlohmann::json::parse(tax_query());
  EXPECT_EQ(handle_request("POST", "/v1/query", req.dump()).body, api_query(req).text());
}

TEST(Service, LiveServer) {
  Service service;
  int port = service.bind("127.0.0.1", 0);
  ASSERT_GT(port, 0);
  std::thread server([&] { service.listen(); });
  httplib::Client client("127.0.0.1", port);
  client.set_connection_timeout(5);
  for (int i = 0; i < 50 && !client.Get("/v1/health"); ++i) std::this_thread::sleep_for(std::chrono::milliseconds(20));

  auto health = client.Get("/v1/health");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);

  std::vector<std::thread> workers;
  std::vector<int> statuses(4, 0);
  for (size_t i = 0; i < statuses.size(); ++i) {
    workers.emplace_back([&, i] {
      httplib::Client c("127.0.0.1", port);
      auto res = c.Post("/v1/query", tax_query(), "application/json");
      statuses[i] = res ? res->status : -1;
    });
  }
  for (auto& w : workers) w.join();
  for (int s : statuses) EXPECT_EQ(s, 200);

  auto missing = client.Post("/v1/nothing", "{}", "application/json");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);

  service.stop();
  server.join();
}

}  // namespace
}  // namespace lexlog

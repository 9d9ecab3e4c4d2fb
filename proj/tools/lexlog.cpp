#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "lexlog/api.hpp"
#include "lexlog/service.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kDiagnostics = 1;
constexpr int kUsage = 2;

struct InputError {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError{path + ": cannot read file"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json source_request(const std::string& path, bool unless_naf) {
  nlohmann::json req;
  req["source"] = read_file(path);
  req["origin"] = path;
  if (unless_naf) req["unless-naf"] = true;
  return req;
}

void print_diagnostics(const lexlog::ordered_json& diags) {
  for (const auto& d : diags) {
    std::cerr << d.at("severity").get<std::string>() << ": " << d.at("file").get<std::string>() << ":"
              << d.at("line").get<int>() << ":" << d.at("col-start").get<int>() + 1 << ": "
              << d.at("message").get<std::string>() << "\n";
  }
}

// Common handling of non-200 results. Returns the exit code, or -1 when the
// caller should print the success output.
int failure_code(const lexlog::ApiResult& r, bool json) {
  if (r.status == 200) return -1;
  if (json) std::cout << r.text();
  if (r.status == 422) {
    if (!json) print_diagnostics(r.body.at("diagnostics"));
    return kDiagnostics;
  }
  if (!json) std::cerr << "error: " << r.body.value("error", "request failed") << "\n";
  return kUsage;
}

int cmd_compile(const std::string& file, const std::string& emit, bool unless_naf, bool json) {
  auto r = lexlog::api_compile(source_request(file, unless_naf));
  if (int code = failure_code(r, json); code >= 0) return code;
  if (json) {
    std::cout << r.text();
    return kOk;
  }
  print_diagnostics(r.body.at("diagnostics"));
  const auto& ir = r.body.at("ir");
  if (emit == "json") {
    std::cout << ir.dump(2) << "\n";
  } else {
    std::cout << "compiled " << ir.at("rules").size() << " rules, " << ir.at("scenarios").size() << " scenarios, "
              << ir.at("queries").size() << " queries\n";
  }
  return kOk;
}

nlohmann::json eval_request(const std::string& file, const std::string& scenario, const std::string& query,
                            bool unless_naf) {
  auto req = source_request(file, unless_naf);
  if (!scenario.empty()) req["scenario"] = scenario;
  req["query"] = query;
  return req;
}

int print_query(const lexlog::ApiResult& r, bool json) {
  if (int code = failure_code(r, json); code >= 0) return code;
  if (json) {
    std::cout << r.text();
    return kOk;
  }
  const auto& answers = r.body.at("answers");
  if (answers.empty()) std::cout << "no answers\n";
  for (const auto& a : answers) std::cout << a.at("text").get<std::string>() << "\n";
  for (const auto& c : r.body.at("conflicts"))
    std::cerr << "warning: blocked conflict between '" << c.at("first").get<std::string>() << "' and '"
              << c.at("second").get<std::string>() << "'\n";
  for (const auto& w : r.body.at("warnings")) std::cerr << "warning: " << w.get<std::string>() << "\n";
  return kOk;
}

int print_explain(const lexlog::ApiResult& r, bool json) {
  if (int code = failure_code(r, json); code >= 0) return code;
  std::cout << (json ? r.text() : r.body.at("transcript").get<std::string>());
  return kOk;
}

int cmd_render(const std::string& file, bool json) {
  nlohmann::json req;
  req["ir"] = nlohmann::json::parse(read_file(file), nullptr, false);
  if (req["ir"].is_discarded()) throw InputError{file + ": not valid JSON"};
  auto r = lexlog::api_render(req);
  if (int code = failure_code(r, json); code >= 0) return code;
  std::cout << (json ? r.text() : r.body.at("source").get<std::string>());
  return kOk;
}

int cmd_check(const std::string& file, bool unless_naf, bool json) {
  auto r = lexlog::api_check(source_request(file, unless_naf));
  if (int code = failure_code(r, json); code >= 0) return code;
  bool ok = r.body.at("roundtrip").at("ok").get<bool>();
  if (json) {
    std::cout << r.text();
    return ok ? kOk : kDiagnostics;
  }
  std::cout << "round trip: " << (ok ? "ok" : "FAILED") << "\n";
  for (const auto& f : r.body.at("roundtrip").at("failures"))
    std::cout << "  " << f.at("what").get<std::string>() << " " << f.at("label").get<std::string>() << ": "
              << f.at("detail").get<std::string>() << "\n";
  const auto& conflicts = r.body.at("conflicts");
  std::cout << "blocked conflicts: " << (conflicts.empty() ? "none" : std::to_string(conflicts.size())) << "\n";
  for (const auto& c : conflicts) {
    std::cout << "  scenario " << c.at("scenario").get<std::string>() << ": '" << c.at("first").get<std::string>()
              << "' vs '" << c.at("second").get<std::string>() << "'\n";
  }
  return ok ? kOk : kDiagnostics;
}

int cmd_serve(const std::string& host, int port) {
  lexlog::Service service;
  int bound = service.bind(host, port);
  if (bound < 0) {
    std::cerr << "error: cannot bind " << host << ":" << port << "\n";
    return kUsage;
  }
  spdlog::info("listening on {}:{}", host, bound);
  std::cout << "listening on " << host << ":" << bound << std::endl;
  return service.listen() ? kOk : kUsage;
}

int cmd_repl(const std::string& file, bool unless_naf) {
  std::string source = read_file(file);
  auto compiled = lexlog::api_compile(source_request(file, unless_naf));
  if (int code = failure_code(compiled, false); code >= 0) return code;
  const auto& ir = compiled.body.at("ir");
  std::cout << "loaded " << file << "; commands: scenarios, queries, query S Q, explain S Q [N], quit\n";
  std::string line;
  while (std::cout << "> " << std::flush, std::getline(std::cin, line)) {
    std::istringstream words(line);
    std::string cmd, scenario, query;
    words >> cmd;
    if (cmd.empty()) continue;
    if (cmd == "quit" || cmd == "exit") break;
    if (cmd == "scenarios" || cmd == "queries") {
      for (const auto& s : ir.at(cmd)) std::cout << s.at("name").get<std::string>() << "\n";
      continue;
    }
    if (cmd == "query" || cmd == "explain") {
      words >> scenario >> query;
      if (query.empty()) {
        std::cout << "usage: " << cmd << " SCENARIO QUERY" << (cmd == "explain" ? " [N]" : "") << "\n";
        continue;
      }
      nlohmann::json req;
      req["ir"] = nlohmann::json::parse(ir.dump());
      req["scenario"] = scenario;
      req["query"] = query;
      if (cmd == "query") {
        print_query(lexlog::api_query(req), false);
      } else {
        int n = 1;
        words >> n;
        req["answer-index"] = n - 1;
        print_explain(lexlog::api_explain(req), false);
      }
      continue;
    }
    std::cout << "unknown command '" << cmd << "'\n";
  }
  return kOk;
}

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("lexlog");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("LEXLOG_LOG")) spdlog::set_level(spdlog::level::from_str(env));
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();
  CLI::App app{"lexlog: controlled-English rules compiler and reasoner"};
  app.require_subcommand(1);

  std::string file, scenario, query, emit, host = "127.0.0.1";
  bool json = false, unless_naf = false;
  int answer = 1, port = 8080;

  auto* compile = app.add_subcommand("compile", "Compile a document and report diagnostics");
  compile->add_option("file", file, "Source document")->required();
  compile->add_option("--emit-ir", emit, "Print the compiled IR")->check(CLI::IsMember({"json"}));
  compile->add_flag("--unless-naf", unless_naf, "Encode 'unless' with explicit negation as failure");
  compile->add_flag("--json", json, "Print the service response");

  auto* q = app.add_subcommand("query", "Answer a query under a scenario");
  q->add_option("file", file, "Source document")->required();
  q->add_option("--scenario", scenario, "Scenario name");
  q->add_option("--query", query, "Query name")->required();
  q->add_flag("--unless-naf", unless_naf, "Encode 'unless' with explicit negation as failure");
  q->add_flag("--json", json, "Print JSON");

  auto* ex = app.add_subcommand("explain", "Explain one answer");
  ex->add_option("file", file, "Source document")->required();
  ex->add_option("--scenario", scenario, "Scenario name");
  ex->add_option("--query", query, "Query name")->required();
  ex->add_option("--answer", answer, "Answer number (1-based)")->check(CLI::PositiveNumber);
  ex->add_flag("--unless-naf", unless_naf, "Encode 'unless' with explicit negation as failure");
  ex->add_flag("--json", json, "Print JSON");

  auto* render = app.add_subcommand("render", "Render IR JSON back to a document");
  render->add_option("ir", file, "IR JSON file")->required();
  render->add_flag("--json", json, "Print JSON");

  auto* check = app.add_subcommand("check", "Round-trip check and blocked-conflict report");
  check->add_option("file", file, "Source document")->required();
  check->add_flag("--unless-naf", unless_naf, "Encode 'unless' with explicit negation as failure");
  check->add_flag("--json", json, "Print JSON");

  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--port", port, "Port (0 picks a free one)");
  serve->add_option("--host", host, "Address to bind");

  auto* repl = app.add_subcommand("repl", "Interactive query loop");
  repl->add_option("file", file, "Source document")->required();
  repl->add_flag("--unless-naf", unless_naf, "Encode 'unless' with explicit negation as failure");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*compile) return cmd_compile(file, emit, unless_naf, json);
    if (*q) return print_query(lexlog::api_query(eval_request(file, scenario, query, unless_naf)), json);
    if (*ex) {
      auto req = eval_request(file, scenario, query, unless_naf);
      req["answer-index"] = answer - 1;
      return print_explain(lexlog::api_explain(req), json);
    }
    if (*render) return cmd_render(file, json);
    if (*check) return cmd_check(file, unless_naf, json);
    if (*serve) return cmd_serve(host, port);
    if (*repl) return cmd_repl(file, unless_naf);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kUsage;
  }
  return kUsage;
}

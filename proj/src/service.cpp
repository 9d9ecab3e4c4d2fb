#include "lexlog/service.hpp"

#include <httplib.h>

#include "lexlog/api.hpp"

namespace lexlog {

namespace {

HttpReply reply(const ApiResult& r) { return HttpReply{r.status, r.text()}; }

HttpReply error_reply(int status, const std::string& msg) {
  ordered_json j;
  j["error"] = msg;
  return HttpReply{status, j.dump(2) + "\n"};
}

}  // namespace

HttpReply handle_request(const std::string& method, const std::string& path, const std::string& body) {
  if (path == "/v1/health") {
    if (method != "GET") return error_reply(405, "use GET");
    ordered_json j;
    j["ok"] = true;
    return HttpReply{200, j.dump(2) + "\n"};
  }
  using Op = ApiResult (*)(const nlohmann::json&);
  Op op = nullptr;
  if (path == "/v1/compile") op = api_compile;
  if (path == "/v1/query") op = api_query;
  if (path == "/v1/explain") op = api_explain;
  if (path == "/v1/render") op = api_render;
  if (path == "/v1/check") op = api_check;
  if (!op) return error_reply(404, "no such endpoint");
  if (method != "POST") return error_reply(405, "use POST");
  if (body.size() > kMaxRequestBytes) return error_reply(413, "request body exceeds 1 MiB");
  nlohmann::json req = nlohmann::json::parse(body, nullptr, false);
  if (req.is_discarded()) return error_reply(400, "request body is not valid JSON");
  return reply(op(req));
}

struct Service::Impl {
  httplib::Server server;
};

Service::Service() : impl_(std::make_unique<Impl>()) {
  auto& s = impl_->server;
  s.set_payload_max_length(kMaxRequestBytes);
  auto route = [](const httplib::Request& req, httplib::Response& res) {
    HttpReply r = handle_request(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  s.Get("/v1/health", route);
  for (const char* p : {"/v1/compile", "/v1/query", "/v1/explain", "/v1/render", "/v1/check"}) s.Post(p, route);
}

Service::~Service() = default;

int Service::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool Service::listen() { return impl_->server.listen_after_bind(); }

void Service::stop() { impl_->server.stop(); }

}  // namespace lexlog

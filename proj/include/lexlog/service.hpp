#pragma once

#include <memory>
#include <string>

namespace lexlog {

inline constexpr size_t kMaxRequestBytes = 1 << 20;

struct HttpReply {
  int status = 200;
  std::string body;
};

// Routes one request without a socket. Same bytes the server sends.
HttpReply handle_request(const std::string& method, const std::string& path, const std::string& body);

// The /v1 JSON service. Stateless; requests are served concurrently.
class Service {
 public:
  Service();
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Returns the bound port, or -1.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  bool listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace lexlog

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace lexlog {

// 1-based line, 0-based byte columns, half-open [col_start, col_end).
struct Span {
  int line = 0;
  int col_start = 0;
  int col_end = 0;

  friend bool operator==(const Span&, const Span&) = default;
};

enum class Severity { kError, kWarning, kNote };

struct Diagnostic {
  Severity severity = Severity::kError;
  std::string message;
  std::string file;
  Span span;
};

using Diagnostics = std::vector<Diagnostic>;

const char* severity_name(Severity s);

bool has_errors(const Diagnostics& diags);

// "error: file:line:col: message"
std::string format_diagnostic(const Diagnostic& d);

nlohmann::ordered_json diagnostics_to_json(const Diagnostics& diags);

}  // namespace lexlog

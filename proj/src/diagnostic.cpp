#include "lexlog/diagnostic.hpp"

#include <algorithm>

namespace lexlog {

const char* severity_name(Severity s) {
  switch (s) {
    case Severity::kError: return "error";
    case Severity::kWarning: return "warning";
    case Severity::kNote: return "note";
  }
  return "error";
}

bool has_errors(const Diagnostics& diags) {
  return std::any_of(diags.begin(), diags.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::kError; });
}

std::string format_diagnostic(const Diagnostic& d) {
  std::string out = severity_name(d.severity);
  out += ": ";
  out += d.file.empty() ? std::string("<input>") : d.file;
  out += ":" + std::to_string(d.span.line) + ":" + std::to_string(d.span.col_start + 1);
  out += ": " + d.message;
  return out;
}

nlohmann::ordered_json diagnostics_to_json(const Diagnostics& diags) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& d : diags) {
    arr.push_back({{"severity", severity_name(d.severity)},
                   {"message", d.message},
                   {"file", d.file},
                   {"line", d.span.line},
                   {"col-start", d.span.col_start},
                   {"col-end", d.span.col_end}});
  }
  return arr;
}

}  // namespace lexlog

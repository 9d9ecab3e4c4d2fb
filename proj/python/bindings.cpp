#include <pybind11/pybind11.h>

#include "lexlog/api.hpp"
#include "lexlog/ir_json.hpp"

namespace py = pybind11;

namespace {

using Op = lexlog::ApiResult (*)(const nlohmann::json&);

// JSON request text in, (status, JSON response text) out.
py::tuple call(Op op, const std::string& request) {
  auto req = nlohmann::json::parse(request, nullptr, false);
  if (req.is_discarded()) throw py::value_error("request is not valid JSON");
  lexlog::ApiResult r;
  {
    py::gil_scoped_release release;
    r = op(req);
  }
  return py::make_tuple(r.status, r.body.dump());
}

}  // namespace

PYBIND11_MODULE(_lexlog, m) {
  m.doc() = "lexlog compiler and reasoner";
  m.attr("IR_SCHEMA") = lexlog::kIrSchema;
  m.attr("OUT_SCHEMA") = lexlog::kOutSchema;
  m.def("compile", [](const std::string& r) { return call(lexlog::api_compile, r); }, py::arg("request"));
  m.def("query", [](const std::string& r) { return call(lexlog::api_query, r); }, py::arg("request"));
  m.def("explain", [](const std::string& r) { return call(lexlog::api_explain, r); }, py::arg("request"));
  m.def("render", [](const std::string& r) { return call(lexlog::api_render, r); }, py::arg("request"));
  m.def("check", [](const std::string& r) { return call(lexlog::api_check, r); }, py::arg("request"));
}

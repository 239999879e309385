// Python bindings. Results cross the boundary as JSON text and are decoded
// by the kgbasis package.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kgb/catalog.hpp"
#include "kgb/error.hpp"
#include "kgb/report.hpp"

namespace py = pybind11;
using namespace kgb;

namespace {

std::shared_ptr<const AlgebraContext> context(const std::string& group, const Params& params,
                                              int p, int k) {
  return make_context(parse_group_spec(group, params), Field::make(p, k));
}

std::string catalog_json() {
  Json out = Json::array();
  for (const auto& e : catalog_entries()) {
    out.push_back({{"name", e.name}, {"params", e.params}, {"range", e.range},
                   {"relations", e.description}});
  }
  return out.dump();
}

std::string group_info(const std::string& group, const Params& params) {
  return group_json(PcGroup(parse_group_spec(group, params))).dump();
}

std::string jennings(const std::string& group, const Params& params, int p, int k) {
  return jennings_json(*context(group, params, p, k)).dump();
}

std::string verify_file(const std::string& text) {
  const Json head = Json::parse(text, nullptr, false);
  if (head.is_discarded() || !head.contains("group") || !head.contains("field")) {
    throw Error(ErrorCode::kMalformedFile, "basis file lacks group or field");
  }
  Params params;
  if (head["group"].contains("params")) {
    for (const auto& [key, v] : head["group"]["params"].items()) params[key] = v.get<long long>();
  }
  const auto ctx = context(head["group"].value("name", ""), params, head["field"].value("p", 0),
                           head["field"].value("k", 1));
  const BasisFile file = read_basis_json(*ctx, text);
  return verdict_json(*ctx, verify(*ctx, file.elements)).dump();
}

py::tuple construct(const std::string& group, const Params& params, int p, int k,
                    const std::string& family, std::optional<int> mu) {
  const auto ctx = context(group, params, p, k);
  ConstructionResult r;
  if (family == "abelian") {
    r = abelian_basis(*ctx);
  } else if (family == "g4") {
    r = g4_basis(*ctx);
  } else if (family == "typeA" || family == "typeB") {
    if (mu) {
      if (*mu < 0 || *mu >= ctx->alg.field().q()) {
        throw Error(ErrorCode::kInvalidArgument, "mu out of range");
      }
      const auto s = static_cast<Scalar>(*mu);
      r = family == "typeA" ? type_a_basis(*ctx, s) : type_b_basis(*ctx, s);
    } else {
      MuSweep sw = sweep_mu(*ctx, family);
      r = sw.results.front();
      for (auto& x : sw.results) {
        if (x.ok) {
          r = std::move(x);
          break;
        }
      }
    }
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown family " + family);
  }
  const std::string file = write_basis_json(*ctx, {group, params, p, k, r.basis});
  return py::make_tuple(construction_json(*ctx, r).dump(), file);
}

std::string certify_json(const std::string& group, const Params& params, int p, int k,
                         int degree, int workers, bool tags) {
  const auto ctx = context(group, params, p, k);
  ObstructionReport r;
  {
    py::gil_scoped_release release;
    r = certify(*ctx, degree, workers);
  }
  return obstruction_json(r, tags).dump();
}

py::tuple search(const std::string& group, const Params& params, int p, int k,
                 long long budget, int workers, bool prefilter) {
  const auto ctx = context(group, params, p, k);
  SearchReport r;
  {
    py::gil_scoped_release release;
    r = full_search(*ctx, budget, workers, prefilter);
  }
  py::object file = py::none();
  if (r.basis) file = py::str(write_basis_json(*ctx, {group, params, p, k, *r.basis}));
  return py::make_tuple(search_json(*ctx, r).dump(), file);
}

std::string matrix(int workers) {
  Json out;
  {
    py::gil_scoped_release release;
    out = existence_matrix(workers);
  }
  return out.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  static py::exception<Error> error(m, "KgbError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (std::string(error_code_name(e.code())) + ": " + e.what()).c_str());
    }
  });
  m.attr("version") = kVersion;
  m.def("catalog", &catalog_json);
  m.def("group_info", &group_info, py::arg("group"), py::arg("params"));
  m.def("jennings", &jennings, py::arg("group"), py::arg("params"), py::arg("p"), py::arg("k"));
  m.def("verify_file", &verify_file, py::arg("text"));
  m.def("construct", &construct, py::arg("group"), py::arg("params"), py::arg("p"),
        py::arg("k"), py::arg("family"), py::arg("mu") = py::none());
  m.def("certify", &certify_json, py::arg("group"), py::arg("params"), py::arg("p"),
        py::arg("k"), py::arg("degree"), py::arg("workers"), py::arg("tags"));
  m.def("search", &search, py::arg("group"), py::arg("params"), py::arg("p"), py::arg("k"),
        py::arg("budget"), py::arg("workers"), py::arg("prefilter"));
  m.def("matrix", &matrix, py::arg("workers"));
}

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "weylchar/asymptotics.hpp"
#include "weylchar/charcalc.hpp"
#include "weylchar/cli.hpp"
#include "weylchar/error.hpp"
#include "weylchar/spectral.hpp"

namespace py = pybind11;
using namespace weylchar;

namespace {

struct Group {
  RootSystem rs;
  WeylGroup W;

  explicit Group(const std::string& name)
      : rs(RootSystem::build(RootSystemSpec::parse(name))), W(WeylGroup::generate(rs)) {}
};

std::string big(const BigInt& z) { return z.get_str(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact Lie-group characters and spectral moments";

  static py::exception<Error> error_type(m, "WeylcharError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error_type.ptr(), (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  py::class_<Group>(m, "Group")
      .def(py::init<const std::string&>(), py::arg("name"))
      .def_property_readonly("name", [](const Group& g) { return g.rs.name(); })
      .def_property_readonly("rank", [](const Group& g) { return g.rs.rank(); })
      .def_property_readonly("weyl_order", [](const Group& g) { return g.W.order(); })
      .def_property_readonly("num_positive_roots", [](const Group& g) { return g.rs.num_positive_roots(); })
      .def("dim", [](const Group& g, const Dynkin& w) { return big(dim_irrep(g.rs, w)); }, py::arg("weight"),
           "Dimension as a decimal string (exact).")
      .def(
          "character",
          [](const Group& g, const Dynkin& w, const std::string& point, int threads) {
            return character(g.rs, g.W, w, TorusPoint::parse(point), threads).value;
          },
          py::arg("weight"), py::arg("point"), py::arg("threads") = 1)
      .def(
          "character_oracle",
          [](const Group& g, const Dynkin& w, const std::string& point) {
            return char_weightsum_oracle(g.rs, w, TorusPoint::parse(point)).value;
          },
          py::arg("weight"), py::arg("point"))
      .def(
          "sweep",
          [](const Group& g, const Dynkin& base, const std::string& point, std::int64_t k_max) {
            auto rep = normalized_char_sweep(g.rs, g.W, WeightPath::multiples(base, 1, k_max), TorusPoint::parse(point));
            std::vector<double> ratios;
            for (const auto& e : rep.entries) ratios.push_back(e.ratio);
            return ratios;
          },
          py::arg("base"), py::arg("point"), py::arg("k_max"));

  m.def("km_moment", [](std::int64_t s, int k) {
    Rational q = km_moment(s, k);
    return py::make_tuple(q.get_num().get_str(), q.get_den().get_str());
  }, py::arg("s"), py::arg("m"), "Kesten-McKay moment as (numerator, denominator) strings.");
  m.def("delta_opt", &delta_opt, py::arg("s"));
  m.def(
      "run",
      [](const std::string& config_json, int threads) {
        auto cfg = cli::RunConfig::from_json(nlohmann::json::parse(config_json));
        auto res = cli::run(cfg, threads);
        return py::make_tuple(res.exit_code, res.document);
      },
      py::arg("config"), py::arg("threads") = 1, "Run a CLI config given as JSON; returns (exit_code, document).");
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hcv/error.hpp"
#include "hcv/orderpoly.hpp"
#include "hcv/verify.hpp"

namespace py = pybind11;
using namespace hcv;

namespace {

verify::Options options(const std::string& cache, bool slow) {
  verify::Options o;
  o.cache = cache.empty() ? groups::CacheOptions::from_env() : groups::CacheOptions{cache};
  o.slow = slow;
  return o;
}

std::string run(const std::string& command, const std::string& type, int rank, int q, const std::string& cache,
                 bool slow, bool timing) {
  const auto opt = options(cache, slow);
  verify::Report r;
  if (command == "roots") {
    r = type.empty() ? verify::verify_roots_suite() : verify::verify_roots(roots::parse_family(type), rank);
  } else if (command == "tits") {
    r = type.empty() ? verify::verify_tits_suite() : verify::verify_tits(roots::parse_family(type), rank);
  } else if (command == "hecke") {
    r = type.empty() ? verify::verify_hecke_suite(opt) : verify::verify_hecke(roots::parse_family(type), rank, q, opt);
  } else if (command == "series") {
    r = verify::verify_principal_series(rank, q, opt);
  } else if (command == "mckay") {
    r = verify::verify_mckay(rank, q, opt);
  } else if (command == "odd-series") {
    r = verify::verify_odd_series(rank, q, opt);
  } else if (command == "parity") {
    r = verify::verify_parity(64, 97, opt);
  } else if (command == "centralizers") {
    r = q > 0 ? verify::scan_centralizers(rank > 0 ? rank : 8, {q}) : verify::scan_centralizers(rank > 0 ? rank : 8);
  } else if (command == "all") {
    r = verify::run_all(opt);
  } else {
    throw InvalidArgument("unknown command " + command);
  }
  return verify::to_json_text(r, timing);
}

orderpoly::CompleteRootDatum datum(const std::string& type, int rank, const std::string& twist) {
  return {roots::parse_family(type), rank, orderpoly::parse_twist(twist)};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bindings for the hcverify library";
  // Translators run newest first, so the base class goes first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<Unsupported>(m, "Unsupported", PyExc_NotImplementedError);

  m.def("run", &run, py::arg("command"), py::arg("type") = "", py::arg("rank") = 0, py::arg("q") = 0,
        py::arg("cache") = "", py::arg("slow") = false, py::arg("timing") = true,
        "Runs a verification command and returns the JSON report text.");
  m.def(
      "order_poly",
      [](const std::string& type, int rank, const std::string& twist) {
        return orderpoly::order_poly(datum(type, rank, twist)).to_string();
      },
      py::arg("type"), py::arg("rank"), py::arg("twist") = "split");
  m.def(
      "order",
      [](const std::string& type, int rank, long q, const std::string& twist) {
        return orderpoly::order_poly(datum(type, rank, twist)).eval(q).get_str();
      },
      py::arg("type"), py::arg("rank"), py::arg("q"), py::arg("twist") = "split",
      "Group order at q as a decimal string.");
  m.def(
      "two_adic_profile",
      [](int i, long q) {
        const auto p = orderpoly::two_adic_profile(i, q);
        return py::make_tuple(p.at_q, p.at_1 ? py::object(py::int_(*p.at_1)) : py::object(py::none()));
      },
      py::arg("i"), py::arg("q"));
  m.def(
      "centralizer_contains_sylow2",
      [](const std::string& row, int rank, int k, long q) {
        return orderpoly::centralizer_scan(orderpoly::centralizer_row(row, rank, k), q).contains_sylow2();
      },
      py::arg("row"), py::arg("rank"), py::arg("k"), py::arg("q"));
  m.def("weyl_order", [](const std::string& type, int rank) {
    return roots::WeylGroup(roots::build_root_system(roots::CartanDatum::make(roots::parse_family(type), rank))).order();
  });
}

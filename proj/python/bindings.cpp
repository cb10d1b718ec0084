#include "tropdyn/cli.hpp"
#include "tropdyn/dynamics.hpp"
#include "tropdyn/io.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace tropdyn;

namespace {

// Structured values cross the boundary as JSON text; the Python layer decodes.
std::string hypersurface_json(const std::string& poly) {
  const Json j = parse_json(poly);
  const auto q = is_complex_polynomial_json(j) ? tropicalize_poly(complex_polynomial_from_json(j))
                                               : tropical_polynomial_from_json(j);
  const auto cycle = tropical_hypersurface(q);
  Json out = to_json(cycle.complex());
  out["balanced"] = check_balancing(cycle.complex()).balanced;
  return out.dump();
}

std::string balance_json(const std::string& complex) {
  return to_json(check_balancing(weighted_complex_from_json(parse_json(complex)))).dump();
}

std::string tropicalize_json(const std::string& poly) {
  return to_json(tropicalize_poly(complex_polynomial_from_json(parse_json(poly)))).dump();
}

std::string bergman_json(int p, int n) { return to_json(uniform_bergman_fan(p, n).complex()).dump(); }

std::string orbits_json(const std::string& fan) {
  const Fan f = fan_from_json(parse_json(fan));
  return orbits_to_json(f, orbits(f)).dump();
}

std::string add_json(const std::string& a, const std::string& b) {
  const auto sum = add_cycles(weighted_complex_from_json(parse_json(a)), weighted_complex_from_json(parse_json(b)));
  Json out = to_json(sum);
  out["balanced"] = check_balancing(sum).balanced;
  return out.dump();
}

std::string refine_json(const std::string& complex, const std::string& fan) {
  return to_json(refine(weighted_complex_from_json(parse_json(complex)), fan_from_json(parse_json(fan)))).dump();
}

std::string converge_json(const std::string& metric, const std::vector<int>& ms, const std::optional<std::string>& poly,
                          std::vector<double> lo, std::vector<double> hi, int resolution, double delta,
                          double density, int phases, std::uint64_t seed) {
  ExperimentConfig cfg;
  if (poly) cfg.f = complex_polynomial_from_json(parse_json(*poly));
  cfg.grid.resolution.assign(lo.size(), resolution);
  cfg.grid.lo = std::move(lo);
  cfg.grid.hi = std::move(hi);
  cfg.grid.delta = delta;
  cfg.grid.phases = phases;
  cfg.density = density;
  cfg.seed = seed;
  return to_json(convergence_report(metric, ms, cfg)).dump();
}

std::string weyl_sum_str(int m, const std::vector<long long>& nu) { return weyl_sum(m, nu).str(); }

std::vector<std::vector<std::complex<double>>> roots_of(const std::vector<std::complex<double>>& a, int m) {
  return mth_roots(a, m).points;
}

double hausdorff_lists(const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b) {
  PointCloud x, y;
  x.dim = a.empty() ? 0 : a.front().size();
  y.dim = b.empty() ? 0 : b.front().size();
  x.points = a;
  y.points = b;
  return hausdorff(x, y);
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::vector<std::string> full{"tropdyn"};
  full.insert(full.end(), args.begin(), args.end());
  std::ostringstream out, err;
  const int code = run(full, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_tropdyn, m) {
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<nlohmann::json::exception>(m, "JsonError", PyExc_ValueError);

  m.def("tropicalize_json", &tropicalize_json);
  m.def("hypersurface_json", &hypersurface_json);
  m.def("balance_json", &balance_json);
  m.def("bergman_json", &bergman_json, py::arg("p"), py::arg("n"));
  m.def("orbits_json", &orbits_json);
  m.def("add_json", &add_json);
  m.def("refine_json", &refine_json);
  m.def("converge_json", &converge_json, py::arg("metric"), py::arg("ms"), py::arg("poly"), py::arg("lo"),
        py::arg("hi"), py::arg("resolution"), py::arg("delta"), py::arg("density"), py::arg("phases"),
        py::arg("seed"));

  m.def("weyl_sum", &weyl_sum_str, py::arg("m"), py::arg("nu"));
  m.def("mth_roots", &roots_of, py::arg("a"), py::arg("m"));
  m.def("dequantized_sum", [](const std::vector<double>& v, double h) { return dequantized_sum(v, h); },
        py::arg("values"), py::arg("h"));
  m.def("polynomial_roots", [](const std::vector<std::complex<double>>& c) { return polynomial_roots(c); },
        py::arg("coeffs"));
  m.def("star_discrepancy", &star_discrepancy, py::arg("xs"));
  m.def("hausdorff", &hausdorff_lists, py::arg("a"), py::arg("b"));
  m.def("run", &run_cli, py::arg("args"));
}

#include "tropdyn/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace tropdyn {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw DomainError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

const Json& array_field(const Json& j, const char* key) {
  const Json& a = field(j, key);
  if (!a.is_array()) throw DomainError(std::string("field \"") + key + "\" must be an array");
  return a;
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw DomainError(std::string(what) + " must be a number");
  return j.get<double>();
}

IntVector int_vector_from_json(const Json& j) {
  if (!j.is_array()) throw DomainError("expected an array of integers");
  IntVector v;
  for (const auto& x : j) v.push_back(integer_from_json(x));
  return v;
}

RatVector rat_vector_from_json(const Json& j) {
  if (!j.is_array()) throw DomainError("expected an array of rationals");
  RatVector v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

template <class V>
Json vectors_to_json(const std::vector<V>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) {
    Json row = Json::array();
    for (const auto& x : v) row.push_back(to_json(x));
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<IntVector> int_vectors_from_json(const Json& j, std::optional<std::size_t>& ambient) {
  if (!j.is_array()) throw DomainError("expected an array of integer vectors");
  std::vector<IntVector> out;
  for (const auto& v : j) {
    out.push_back(int_vector_from_json(v));
    if (!ambient) ambient = out.back().size();
    if (out.back().size() != *ambient) throw DomainError("vectors of different lengths");
  }
  return out;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw DomainError("malformed JSON in " + source + " at line " + std::to_string(line) + ", column " +
                      std::to_string(col));
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

Json to_json(const Integer& z) {
  if (z >= std::numeric_limits<long long>::min() && z <= std::numeric_limits<long long>::max())
    return z.convert_to<long long>();
  return z.str();
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_number_unsigned()) return Integer(j.get<unsigned long long>());
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw DomainError("expected an integer, got " + j.dump());
}

Json to_json(const Rational& q) {
  if (denominator(q) == 1) return to_json(Integer(numerator(q)));
  return to_string(q);
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer() || j.is_number_unsigned()) return Rational(integer_from_json(j));
  if (j.is_number_float()) return rational_from_double(j.get<double>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw DomainError("expected a rational number, got " + j.dump());
}

Json to_json(const TropicalPolynomial& q) {
  Json terms = Json::array();
  for (const auto& [a, c] : q.terms()) {
    Json exp = Json::array();
    for (const auto& x : a) exp.push_back(to_json(x));
    terms.push_back({{"exp", exp}, {"coeff", c}});
  }
  return {{"terms", terms}};
}

TropicalPolynomial tropical_polynomial_from_json(const Json& j) {
  std::vector<std::pair<IntVector, double>> terms;
  for (const auto& t : array_field(j, "terms"))
    terms.emplace_back(int_vector_from_json(field(t, "exp")), t.contains("coeff") ? number(t["coeff"], "coeff") : 0.0);
  return TropicalPolynomial(terms);
}

Json to_json(const ComplexPolynomial& f) {
  Json terms = Json::array();
  for (const auto& [a, c] : f.terms()) {
    Json exp = Json::array();
    for (const auto& x : a) exp.push_back(to_json(x));
    terms.push_back({{"exp", exp}, {"re", c.real()}, {"im", c.imag()}});
  }
  return {{"terms", terms}};
}

ComplexPolynomial complex_polynomial_from_json(const Json& j) {
  std::vector<std::pair<IntVector, std::complex<double>>> terms;
  for (const auto& t : array_field(j, "terms")) {
    const double re = t.contains("re") ? number(t["re"], "re") : 0.0;
    const double im = t.contains("im") ? number(t["im"], "im") : 0.0;
    terms.emplace_back(int_vector_from_json(field(t, "exp")), std::complex<double>(re, im));
  }
  return ComplexPolynomial(terms);
}

bool is_complex_polynomial_json(const Json& j) {
  const Json& terms = array_field(j, "terms");
  for (const auto& t : terms)
    if (t.is_object() && (t.contains("re") || t.contains("im"))) return true;
  return false;
}

Json to_json(const Cone& c) {
  Json out{{"rays", vectors_to_json(c.rays())}};
  if (!c.lineality().empty()) out["lineality"] = vectors_to_json(c.lineality());
  return out;
}

Cone cone_from_json(const Json& j, std::optional<std::size_t> ambient) {
  auto rays = int_vectors_from_json(field(j, "rays"), ambient);
  std::vector<IntVector> lin;
  if (j.contains("lineality")) lin = int_vectors_from_json(j["lineality"], ambient);
  if (j.contains("ambient")) ambient = j["ambient"].get<std::size_t>();
  if (!ambient) throw DomainError("cannot infer the ambient dimension of a cone without rays");
  return Cone::from_rays(*ambient, rays, lin);
}

Json to_json(const Fan& f) {
  Json cones = Json::array();
  for (const auto& c : f.maximal_cones()) cones.push_back(to_json(c));
  return {{"ambient", f.ambient_dim()}, {"cones", cones}};
}

Fan fan_from_json(const Json& j) {
  std::optional<std::size_t> ambient;
  if (j.contains("ambient")) ambient = j["ambient"].get<std::size_t>();
  for (const auto& c : array_field(j, "cones"))
    if (!ambient && c.contains("rays") && !c["rays"].empty()) ambient = c["rays"][0].size();
  if (!ambient) throw DomainError("cannot infer the ambient dimension of the fan");
  std::vector<Cone> cones;
  for (const auto& c : j["cones"]) cones.push_back(cone_from_json(c, ambient));
  return Fan::from_cones(*ambient, cones);
}

Json to_json(const Polyhedron& p) {
  Json out{{"rays", vectors_to_json(p.rays())}};
  if (!p.is_cone()) out["vertices"] = vectors_to_json(p.vertices());
  if (!p.lineality().empty()) out["lineality"] = vectors_to_json(p.lineality());
  return out;
}

Polyhedron polyhedron_from_json(const Json& j, std::optional<std::size_t> ambient) {
  auto rays = int_vectors_from_json(field(j, "rays"), ambient);
  std::vector<IntVector> lin;
  if (j.contains("lineality")) lin = int_vectors_from_json(j["lineality"], ambient);
  std::vector<RatVector> vertices;
  if (j.contains("vertices")) {
    for (const auto& v : j["vertices"]) {
      vertices.push_back(rat_vector_from_json(v));
      if (!ambient) ambient = vertices.back().size();
      if (vertices.back().size() != *ambient) throw DomainError("vectors of different lengths");
    }
    if (vertices.empty()) throw DomainError("\"vertices\" must be nonempty when given");
  }
  if (!ambient) throw DomainError("cannot infer the ambient dimension of a cell");
  if (vertices.empty()) vertices.push_back(RatVector(*ambient));
  return Polyhedron::from_generators(*ambient, vertices, rays, lin);
}

Json to_json(const WeightedComplex& c) {
  Json cells = Json::array();
  for (const auto& cell : c.cells()) {
    Json jc = to_json(cell.cell);
    jc["weight"] = to_json(cell.weight);
    cells.push_back(std::move(jc));
  }
  return {{"ambient", c.ambient_dim()}, {"dim", c.dim()}, {"cells", cells}};
}

WeightedComplex weighted_complex_from_json(const Json& j) {
  const Json& dim = field(j, "dim");
  if (!dim.is_number_integer()) throw DomainError("\"dim\" must be an integer");
  std::optional<std::size_t> ambient;
  if (j.contains("ambient")) ambient = j["ambient"].get<std::size_t>();
  std::vector<WeightedCell> cells;
  for (const auto& c : array_field(j, "cells")) {
    Polyhedron p = polyhedron_from_json(c, ambient);
    ambient = p.ambient_dim();
    cells.push_back({std::move(p), integer_from_json(field(c, "weight"))});
  }
  if (!ambient) throw DomainError("cannot infer the ambient dimension of an empty complex");
  return WeightedComplex(*ambient, dim.get<int>(), std::move(cells));
}

Json to_json(const BalancingReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations) {
    Json residual = Json::array();
    for (const auto& c : x.residual) residual.push_back(to_json(c));
    v.push_back({{"tau", to_json(x.tau)}, {"residual", residual}});
  }
  return {{"balanced", r.balanced}, {"violations", v}};
}

Json to_json(const ConvergenceReport& r) {
  return {{"ms", r.ms}, {"errors", r.errors}, {"C", r.C}, {"rho", r.rho}, {"seed", r.seed}};
}

ConvergenceReport convergence_report_from_json(const Json& j) {
  ConvergenceReport r;
  r.ms = field(j, "ms").get<std::vector<int>>();
  r.errors = field(j, "errors").get<std::vector<double>>();
  r.C = number(field(j, "C"), "C");
  r.rho = number(field(j, "rho"), "rho");
  r.seed = field(j, "seed").get<std::uint64_t>();
  return r;
}

Json orbits_to_json(const Fan& fan, const std::vector<Orbit>& orbits) {
  Json cones = Json::array(), list = Json::array();
  for (const auto& c : fan.cones()) cones.push_back(to_json(c));
  for (const auto& o : orbits) list.push_back({{"cone_index", *fan.index_of(o.cone)}, {"dim", o.dim}});
  return {{"cones", cones}, {"orbits", list}};
}

void write_csv(std::ostream& out, const PointCloud& cloud) {
  out << "dim,m,seed\n" << cloud.dim << ',';
  if (cloud.m) out << *cloud.m;
  out << ',';
  if (cloud.seed) out << *cloud.seed;
  out << '\n';
  for (const auto& p : cloud.points) {
    for (std::size_t i = 0; i < p.size(); ++i) out << (i ? "," : "") << format_double(p[i]);
    out << '\n';
  }
}

PointCloud read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "dim,m,seed") throw DomainError("CSV header must be \"dim,m,seed\"");
  if (!std::getline(in, line)) throw DomainError("CSV metadata line missing");
  PointCloud cloud;
  std::vector<std::string> meta;
  std::stringstream ms(line);
  std::string item;
  while (std::getline(ms, item, ',')) meta.push_back(item);
  if (line.back() == ',') meta.push_back("");
  if (meta.size() != 3 || meta[0].empty()) throw DomainError("CSV metadata must be dim,m,seed");
  cloud.dim = std::stoul(meta[0]);
  if (!meta[1].empty()) cloud.m = std::stoi(meta[1]);
  if (!meta[2].empty()) cloud.seed = std::stoull(meta[2]);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> p;
    std::stringstream ls(line);
    while (std::getline(ls, item, ',')) p.push_back(std::stod(item));
    if (p.size() != cloud.dim) throw DomainError("CSV row has the wrong number of coordinates");
    cloud.points.push_back(std::move(p));
  }
  return cloud;
}

}  // namespace tropdyn

#pragma once

// JSON and CSV encodings of the library's values.

#include "tropdyn/dynamics.hpp"
#include "tropdyn/polyhedra.hpp"
#include "tropdyn/toric.hpp"
#include "tropdyn/tropical.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace tropdyn {

using Json = nlohmann::json;

/// Parses JSON text; syntax errors become DomainError with line and column.
Json parse_json(const std::string& text, const std::string& source = "<input>");
Json read_json_file(const std::string& path);

Json to_json(const Integer& z);
Integer integer_from_json(const Json& j);
/// Integers as numbers, other rationals as "p/q" strings.
Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);

Json to_json(const TropicalPolynomial& q);
TropicalPolynomial tropical_polynomial_from_json(const Json& j);
Json to_json(const ComplexPolynomial& f);
ComplexPolynomial complex_polynomial_from_json(const Json& j);
bool is_complex_polynomial_json(const Json& j);

Json to_json(const Cone& c);
Cone cone_from_json(const Json& j, std::optional<std::size_t> ambient = std::nullopt);
Json to_json(const Fan& f);
Fan fan_from_json(const Json& j);

/// Cells carry "rays", "weight" and, when not a cone, "vertices" and "lineality".
Json to_json(const Polyhedron& p);
Polyhedron polyhedron_from_json(const Json& j, std::optional<std::size_t> ambient = std::nullopt);
Json to_json(const WeightedComplex& c);
WeightedComplex weighted_complex_from_json(const Json& j);

Json to_json(const BalancingReport& r);
Json to_json(const ConvergenceReport& r);
ConvergenceReport convergence_report_from_json(const Json& j);
Json orbits_to_json(const Fan& fan, const std::vector<Orbit>& orbits);

/// Line 1 "dim,m,seed", line 2 their values (empty when unset), then one row per point.
void write_csv(std::ostream& out, const PointCloud& cloud);
PointCloud read_csv(std::istream& in);

}  // namespace tropdyn

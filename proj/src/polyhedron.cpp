#include "tropdyn/polyhedra.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace tropdyn {

namespace {

void require_supported(std::size_t ambient) {
  if (ambient > kMaxPolyhedralDim)
    throw DomainError("ambient dimension unsupported: " + std::to_string(ambient) + " > " +
                      std::to_string(kMaxPolyhedralDim));
}

// Bareiss determinant on a small dense copy; avoids IntMatrix bookkeeping in
// the inner loop of the ray enumeration.
Integer small_det(std::vector<std::vector<Integer>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && a[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(a[k], a[s]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

// Generalised cross product: the kernel direction of a (k-1) x k matrix.
IntVector kernel_direction(const std::vector<const IntVector*>& rows, std::size_t k) {
  IntVector c(k);
  for (std::size_t drop = 0; drop < k; ++drop) {
    std::vector<std::vector<Integer>> minor;
    minor.reserve(rows.size());
    for (const IntVector* r : rows) {
      std::vector<Integer> line;
      line.reserve(k - 1);
      for (std::size_t j = 0; j < k; ++j)
        if (j != drop) line.push_back((*r)[j]);
      minor.push_back(std::move(line));
    }
    Integer d = small_det(std::move(minor));
    c[drop] = (drop % 2 == 0) ? d : Integer(-d);
  }
  return c;
}

IntVector negate(IntVector v) {
  for (auto& x : v) x = -x;
  return v;
}

RatVector homogenize(const LinearConstraint& c) {
  RatVector r(c.normal.begin(), c.normal.end());
  r.push_back(-c.offset);
  return r;
}

LinearConstraint normalized_constraint(IntVector normal, Rational offset) {
  Integer g = 0;
  for (const auto& x : normal) g = gcd(g, x);
  if (g > 1) {
    for (auto& x : normal) x /= g;
    offset /= Rational(g);
  }
  return {std::move(normal), std::move(offset)};
}

bool constraint_less(const LinearConstraint& a, const LinearConstraint& b) {
  if (a.normal != b.normal) return a.normal < b.normal;
  return a.offset < b.offset;
}

template <class T>
std::string join_vectors(const std::vector<std::vector<T>>& vs) {
  std::string s;
  for (const auto& v : vs) {
    s += '(';
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      if constexpr (std::is_same_v<T, Rational>)
        s += to_string(v[i]);
      else
        s += v[i].str();
    }
    s += ')';
  }
  return s;
}

// Representative of `a` modulo span(eqs) whose first n coordinates are
// orthogonal to the normals of eqs, i.e. a normal lying in the affine hull's
// direction space.
IntVector orthogonal_to_equations(const IntVector& a, const std::vector<IntVector>& eqs, std::size_t n) {
  const std::size_t k = eqs.size();
  if (k == 0) return a;
  // Solve G c = b with G_ij = <e_i, e_j>, b_i = <e_i, a> on the first n coordinates.
  std::vector<std::vector<Rational>> g(k, std::vector<Rational>(k + 1));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      Integer s = 0;
      for (std::size_t t = 0; t < n; ++t) s += eqs[i][t] * eqs[j][t];
      g[i][j] = s;
    }
    Integer s = 0;
    for (std::size_t t = 0; t < n; ++t) s += eqs[i][t] * a[t];
    g[i][k] = s;
  }
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    while (g[piv][c] == 0) ++piv;
    std::swap(g[c], g[piv]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == c || g[r][c] == 0) continue;
      const Rational f = g[r][c] / g[c][c];
      for (std::size_t j = c; j <= k; ++j) g[r][j] -= f * g[c][j];
    }
  }
  RatVector out(a.begin(), a.end());
  for (std::size_t i = 0; i < k; ++i) {
    const Rational coef = g[i][k] / g[i][i];
    for (std::size_t t = 0; t <= n; ++t) out[t] -= coef * Rational(eqs[i][t]);
  }
  if (is_zero(out)) return IntVector(n + 1);
  return primitive_integer(out);
}

}  // namespace

ConeGenerators cone_generators(std::size_t dim, const std::vector<IntVector>& inequalities,
                               const std::vector<IntVector>& equalities) {
  std::vector<IntVector> all = equalities;
  all.insert(all.end(), inequalities.begin(), inequalities.end());
  ConeGenerators out;
  out.lineality = echelon_basis(dim, nullspace(dim, all));

  std::vector<IntVector> fixed = equalities;
  fixed.insert(fixed.end(), out.lineality.begin(), out.lineality.end());
  const auto w = nullspace(dim, fixed);
  const std::size_t k = w.size();
  if (k == 0) return out;

  // Inequalities restricted to the pointed part, in coordinates of w.
  std::vector<IntVector> m;
  std::set<IntVector> seen;
  for (const auto& a : inequalities) {
    IntVector row(k);
    for (std::size_t j = 0; j < k; ++j) row[j] = dot(a, w[j]);
    if (is_zero(row)) continue;
    auto prim = primitive(row).direction;
    if (seen.insert(prim).second) m.push_back(std::move(prim));
  }

  auto lift = [&](const IntVector& c) {
    IntVector y(dim);
    for (std::size_t j = 0; j < k; ++j)
      if (c[j] != 0)
        for (std::size_t i = 0; i < dim; ++i) y[i] += c[j] * w[j][i];
    return primitive(y).direction;
  };
  auto admissible = [&](const IntVector& c) {
    for (const auto& row : m)
      if (dot(row, c) < 0) return false;
    return true;
  };

  std::set<IntVector> rays;
  if (k == 1) {
    for (const IntVector& c : {int_vector({1}), int_vector({-1})})
      if (!m.empty() && admissible(c)) rays.insert(lift(c));
  } else if (m.size() + 1 >= k) {
    std::vector<std::size_t> idx(k - 1);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    const std::size_t total = m.size();
    for (;;) {
      std::vector<const IntVector*> rows;
      rows.reserve(idx.size());
      for (auto i : idx) rows.push_back(&m[i]);
      IntVector c = kernel_direction(rows, k);
      if (!is_zero(c)) {
        if (admissible(c))
          rays.insert(lift(c));
        else if (auto neg = negate(c); admissible(neg))
          rays.insert(lift(neg));
      }
      // next combination
      std::size_t i = idx.size();
      while (i > 0 && idx[i - 1] == total - idx.size() + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < idx.size(); ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  out.rays.assign(rays.begin(), rays.end());
  return out;
}

Polyhedron Polyhedron::empty(std::size_t ambient) {
  Polyhedron p;
  p.ambient_ = ambient;
  p.build_key();
  return p;
}

Polyhedron Polyhedron::from_constraints(std::size_t ambient, const std::vector<LinearConstraint>& inequalities,
                                        const std::vector<LinearConstraint>& equations) {
  require_supported(ambient);
  std::vector<IntVector> ineq_rows, eq_rows;
  for (const auto& c : inequalities) {
    if (c.normal.size() != ambient) throw DomainError("constraint length does not match ambient dimension");
    ineq_rows.push_back(primitive_integer(homogenize(c)));
  }
  for (const auto& c : equations) {
    if (c.normal.size() != ambient) throw DomainError("constraint length does not match ambient dimension");
    eq_rows.push_back(primitive_integer(homogenize(c)));
  }
  IntVector t_nonneg(ambient + 1);
  t_nonneg[ambient] = 1;
  ineq_rows.push_back(std::move(t_nonneg));

  Polyhedron p;
  p.ambient_ = ambient;
  p.canonicalize_from_vrep(cone_generators(ambient + 1, ineq_rows, eq_rows));
  return p;
}

Polyhedron Polyhedron::from_generators(std::size_t ambient, const std::vector<RatVector>& points,
                                       const std::vector<IntVector>& rays, const std::vector<IntVector>& lineality) {
  require_supported(ambient);
  if (points.empty()) return empty(ambient);
  Polyhedron raw;
  raw.ambient_ = ambient;
  raw.vertices_ = points;
  raw.rays_ = rays;
  raw.lineality_ = lineality;
  for (const auto& v : points)
    if (v.size() != ambient) throw DomainError("point length does not match ambient dimension");
  for (const auto& r : rays)
    if (r.size() != ambient) throw DomainError("ray length does not match ambient dimension");
  for (const auto& l : lineality)
    if (l.size() != ambient) throw DomainError("lineality length does not match ambient dimension");
  raw.build_hrep();
  return from_constraints(ambient, raw.facets_, raw.equations_);
}

Polyhedron Polyhedron::box(const RatVector& lo, const RatVector& hi) {
  if (lo.size() != hi.size()) throw DomainError("box bounds differ in length");
  const std::size_t n = lo.size();
  std::vector<LinearConstraint> cons;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n);
    e[i] = 1;
    cons.push_back({e, lo[i]});
    e[i] = -1;
    cons.push_back({e, -hi[i]});
  }
  return from_constraints(n, cons);
}

void Polyhedron::canonicalize_from_vrep(const ConeGenerators& homog) {
  const std::size_t n = ambient_;
  vertices_.clear();
  rays_.clear();
  lineality_.clear();
  for (const auto& y : homog.rays) {
    if (y[n] > 0) {
      RatVector v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = Rational(y[i], y[n]);
      vertices_.push_back(std::move(v));
    } else {
      rays_.emplace_back(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n));
    }
  }
  if (vertices_.empty()) {
    rays_.clear();
    dim_ = -1;
    facets_.clear();
    equations_.clear();
    build_key();
    return;
  }
  for (const auto& l : homog.lineality) lineality_.emplace_back(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(n));
  std::sort(vertices_.begin(), vertices_.end());
  std::sort(rays_.begin(), rays_.end());
  build_hrep();
  dim_ = static_cast<int>(n - equations_.size());
  build_key();
}

void Polyhedron::build_hrep() {
  const std::size_t n = ambient_;
  std::vector<IntVector> gens, lin;
  for (const auto& v : vertices_) {
    RatVector h(v);
    h.push_back(1);
    gens.push_back(primitive_integer(h));
  }
  for (const auto& r : rays_) {
    IntVector h(r);
    h.push_back(0);
    gens.push_back(std::move(h));
  }
  for (const auto& l : lineality_) {
    IntVector h(l);
    h.push_back(0);
    lin.push_back(std::move(h));
  }
  auto dual = cone_generators(n + 1, gens, lin);
  facets_.clear();
  equations_.clear();
  for (const auto& ray : dual.rays) {
    const IntVector a = orthogonal_to_equations(ray, dual.lineality, n);
    IntVector normal(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(n));
    if (is_zero(normal)) continue;  // t >= 0
    facets_.push_back(normalized_constraint(std::move(normal), Rational(-a[n])));
  }
  for (const auto& a : dual.lineality) {
    IntVector normal(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(n));
    if (is_zero(normal)) throw DomainError("inconsistent generators");
    equations_.push_back(normalized_constraint(std::move(normal), Rational(-a[n])));
  }
  std::sort(facets_.begin(), facets_.end(), constraint_less);
}

void Polyhedron::build_key() {
  std::ostringstream os;
  os << ambient_ << '|' << join_vectors(vertices_) << '|' << join_vectors(rays_) << '|' << join_vectors(lineality_);
  key_ = os.str();
}

bool operator<(const Polyhedron& a, const Polyhedron& b) {
  if (a.ambient_ != b.ambient_) return a.ambient_ < b.ambient_;
  if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
  if (a.vertices_ != b.vertices_) return a.vertices_ < b.vertices_;
  if (a.rays_ != b.rays_) return a.rays_ < b.rays_;
  return a.lineality_ < b.lineality_;
}

bool Polyhedron::is_cone() const {
  return !is_empty() && vertices_.size() == 1 && is_zero(vertices_.front());
}

std::vector<IntVector> Polyhedron::span_basis() const {
  if (is_empty()) return {};
  std::vector<IntVector> normals;
  for (const auto& e : equations_) normals.push_back(e.normal);
  return nullspace(ambient_, normals);
}

RatVector Polyhedron::relative_interior_point() const {
  if (is_empty()) throw DomainError("empty polyhedron has no interior point");
  RatVector x(ambient_);
  for (const auto& v : vertices_)
    for (std::size_t i = 0; i < ambient_; ++i) x[i] += v[i];
  for (auto& xi : x) xi /= Rational(static_cast<long long>(vertices_.size()));
  for (const auto& r : rays_)
    for (std::size_t i = 0; i < ambient_; ++i) x[i] += r[i];
  return x;
}

bool Polyhedron::contains(const RatVector& x) const {
  if (is_empty()) return false;
  if (x.size() != ambient_) throw DomainError("point length does not match ambient dimension");
  for (const auto& e : equations_)
    if (dot(e.normal, x) != e.offset) return false;
  for (const auto& f : facets_)
    if (dot(f.normal, x) < f.offset) return false;
  return true;
}

bool Polyhedron::contains(std::span<const double> x, double tol) const {
  if (is_empty()) return false;
  if (x.size() != ambient_) throw DomainError("point length does not match ambient dimension");
  auto slack = [&](const LinearConstraint& c) {
    double s = -to_double(c.offset), norm = 0;
    for (std::size_t i = 0; i < ambient_; ++i) {
      double a = to_double(c.normal[i]);
      s += a * x[i];
      norm += a * a;
    }
    return s / std::sqrt(norm);
  };
  for (const auto& e : equations_)
    if (std::abs(slack(e)) > tol) return false;
  for (const auto& f : facets_)
    if (slack(f) < -tol) return false;
  return true;
}

Polyhedron Polyhedron::intersect(const Polyhedron& other) const {
  if (other.ambient_ != ambient_) throw DomainError("ambient dimension mismatch");
  if (is_empty() || other.is_empty()) return empty(ambient_);
  auto ineqs = facets_;
  ineqs.insert(ineqs.end(), other.facets_.begin(), other.facets_.end());
  auto eqs = equations_;
  eqs.insert(eqs.end(), other.equations_.begin(), other.equations_.end());
  return from_constraints(ambient_, ineqs, eqs);
}

std::vector<Polyhedron> Polyhedron::facet_faces() const {
  std::vector<Polyhedron> out;
  for (const auto& f : facets_) {
    auto eqs = equations_;
    eqs.push_back(f);
    out.push_back(from_constraints(ambient_, facets_, eqs));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Polyhedron> Polyhedron::faces() const {
  if (is_empty()) return {};
  std::map<std::string, Polyhedron> found{{key_, *this}};
  std::vector<Polyhedron> frontier{*this};
  while (!frontier.empty()) {
    std::vector<Polyhedron> next;
    for (const auto& p : frontier)
      for (auto& f : p.facet_faces())
        if (found.emplace(f.key(), f).second) next.push_back(std::move(f));
    frontier = std::move(next);
  }
  std::vector<Polyhedron> out;
  for (auto& [k, p] : found) out.push_back(std::move(p));
  std::sort(out.begin(), out.end());
  return out;
}

bool Polyhedron::is_face_of(const Polyhedron& other) const {
  if (is_empty()) return true;
  if (other.ambient_ != ambient_ || other.is_empty()) return false;
  for (const auto& v : vertices_)
    if (!other.contains(v)) return false;
  for (const auto& c : other.equations_) {
    for (const auto& r : rays_)
      if (dot(c.normal, r) != 0) return false;
    for (const auto& l : lineality_)
      if (dot(c.normal, l) != 0) return false;
  }
  for (const auto& c : other.facets_) {
    for (const auto& r : rays_)
      if (dot(c.normal, r) < 0) return false;
    for (const auto& l : lineality_)
      if (dot(c.normal, l) != 0) return false;
  }
  // The smallest face of `other` containing our relative interior.
  const RatVector x = relative_interior_point();
  auto eqs = other.equations_;
  for (const auto& c : other.facets_)
    if (dot(c.normal, x) == c.offset) eqs.push_back(c);
  return from_constraints(ambient_, other.facets_, eqs) == *this;
}

Cone::Cone(Polyhedron p) : poly_(std::move(p)) {
  if (!poly_.is_cone()) throw DomainError("polyhedron is not a cone");
}

Cone Cone::from_rays(std::size_t ambient, const std::vector<IntVector>& rays, const std::vector<IntVector>& lineality) {
  return Cone(Polyhedron::from_generators(ambient, {RatVector(ambient)}, rays, lineality));
}

Cone Cone::zero(std::size_t ambient) { return from_rays(ambient, {}); }

std::vector<LinearConstraint> Cone::inequalities() const {
  auto out = poly_.facets();
  for (const auto& e : poly_.equations()) {
    out.push_back(e);
    out.push_back({negate(e.normal), -e.offset});
  }
  return out;
}

std::vector<Cone> Cone::faces() const {
  std::vector<Cone> out;
  for (auto& f : poly_.faces()) out.emplace_back(std::move(f));
  return out;
}

Cone dual_description(std::size_t ambient, const std::vector<IntVector>& generators) {
  require_supported(ambient);
  return Cone::from_rays(ambient, generators);
}

IntVector outward_generator(const Polyhedron& tau, const Polyhedron& sigma) {
  if (tau.is_empty() || sigma.is_empty() || tau.dim() + 1 != sigma.dim() || !tau.is_face_of(sigma))
    throw DomainError("tau is not a codimension-one face of sigma");
  const std::size_t n = sigma.ambient_dim();
  auto face_lattice = saturate_and_complete(n, tau.span_basis());
  RatVector inward = sigma.relative_interior_point();
  const RatVector base = tau.relative_interior_point();
  for (std::size_t i = 0; i < n; ++i) inward[i] -= base[i];
  return outward_generator(face_lattice, sigma.span_basis(), inward);
}

}  // namespace tropdyn

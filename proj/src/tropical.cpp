#include "tropdyn/tropical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tropdyn {

namespace {

constexpr std::size_t kMaxHypersurfaceDim = 3;

double to_double_exp(const Integer& a) { return a.convert_to<double>(); }

}  // namespace

TropicalPolynomial::TropicalPolynomial(const std::vector<std::pair<IntVector, double>>& terms) {
  if (terms.empty()) throw DomainError("tropical polynomial needs at least one term");
  ambient_ = terms.front().first.size();
  for (const auto& [a, c] : terms) {
    if (a.size() != ambient_) throw DomainError("inconsistent exponent lengths");
    if (!std::isfinite(c)) throw DomainError("tropical coefficients must be finite");
    auto [it, inserted] = terms_.emplace(a, c);
    if (!inserted) it->second = std::max(it->second, c);
  }
}

TropicalEvaluation eval_tropical(const TropicalPolynomial& q, std::span<const double> x, double tol) {
  if (x.size() != q.ambient_dim()) throw DomainError("point dimension does not match polynomial");
  std::vector<std::pair<const IntVector*, double>> vals;
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& [a, c] : q.terms()) {
    double v = c;
    for (std::size_t i = 0; i < x.size(); ++i) v += to_double_exp(a[i]) * x[i];
    vals.emplace_back(&a, v);
    best = std::max(best, v);
  }
  TropicalEvaluation out{best, {}};
  for (const auto& [a, v] : vals)
    if (v >= best - tol) out.argmax.push_back(*a);
  return out;
}

ExactTropicalEvaluation eval_tropical(const TropicalPolynomial& q, const RatVector& x) {
  if (x.size() != q.ambient_dim()) throw DomainError("point dimension does not match polynomial");
  std::vector<std::pair<const IntVector*, Rational>> vals;
  for (const auto& [a, c] : q.terms()) vals.emplace_back(&a, rational_from_double(c) + dot(a, x));
  ExactTropicalEvaluation out;
  out.value = vals.front().second;
  for (const auto& [a, v] : vals) out.value = std::max(out.value, v);
  for (const auto& [a, v] : vals)
    if (v == out.value) out.argmax.push_back(*a);
  return out;
}

double dequantized_sum(std::span<const double> values, double h) {
  if (!(h > 0)) throw DomainError("dequantization parameter h must be positive");
  if (values.empty()) throw DomainError("dequantized sum of no values");
  const double top = *std::max_element(values.begin(), values.end());
  if (!std::isfinite(top)) return top;
  double s = 0;
  for (double v : values) s += std::exp((v - top) / h);
  return top + h * std::log(s);
}

ComplexPolynomial::ComplexPolynomial(const std::vector<std::pair<IntVector, std::complex<double>>>& terms) {
  if (terms.empty()) throw DomainError("zero polynomial");
  ambient_ = terms.front().first.size();
  for (const auto& [a, c] : terms) {
    if (a.size() != ambient_) throw DomainError("inconsistent exponent lengths");
    for (const auto& x : a)
      if (x < 0) throw DomainError("complex polynomial exponents must be nonnegative");
    terms_[a] += c;
  }
  std::erase_if(terms_, [](const auto& t) { return t.second == 0.0; });
  if (terms_.empty()) throw DomainError("zero polynomial");
}

std::complex<double> ComplexPolynomial::operator()(std::span<const std::complex<double>> z) const {
  if (z.size() != ambient_) throw DomainError("point dimension does not match polynomial");
  std::complex<double> s = 0;
  for (const auto& [a, c] : terms_) {
    std::complex<double> t = c;
    for (std::size_t i = 0; i < ambient_; ++i) t *= std::pow(z[i], a[i].convert_to<int>());
    s += t;
  }
  return s;
}

TropicalPolynomial tropicalize_poly(const ComplexPolynomial& f) {
  std::vector<std::pair<IntVector, double>> terms;
  for (const auto& [a, c] : f.terms()) {
    IntVector neg(a);
    for (auto& x : neg) x = -x;
    terms.emplace_back(std::move(neg), 0.0);
  }
  return TropicalPolynomial(terms);
}

TropicalCycle::TropicalCycle(WeightedComplex complex) : complex_(std::move(complex)) {
  if (!check_balancing(complex_).balanced) throw DomainError("weighted complex is not balanced");
}

TropicalCycle tropical_hypersurface(const TropicalPolynomial& q) {
  const std::size_t n = q.ambient_dim();
  if (n == 0) throw DomainError("tropical hypersurface needs ambient dimension >= 1");
  if (n > kMaxHypersurfaceDim)
    throw DomainError("ambient dimension unsupported: " + std::to_string(n) + " > " +
                      std::to_string(kMaxHypersurfaceDim));
  std::vector<IntVector> alpha;
  std::vector<Rational> c;
  for (const auto& [a, v] : q.terms()) {
    alpha.push_back(a);
    c.push_back(rational_from_double(v));
  }
  auto diff = [&](std::size_t i, std::size_t j) {
    IntVector d(n);
    for (std::size_t t = 0; t < n; ++t) d[t] = alpha[i][t] - alpha[j][t];
    return d;
  };

  std::map<std::string, WeightedCell> cells;
  const int target = static_cast<int>(n) - 1;
  for (std::size_t i = 0; i < alpha.size(); ++i)
    for (std::size_t j = i + 1; j < alpha.size(); ++j) {
      std::vector<LinearConstraint> ineqs;
      for (std::size_t k = 0; k < alpha.size(); ++k)
        if (k != i && k != j) ineqs.push_back({diff(i, k), c[k] - c[i]});
      Polyhedron cell = Polyhedron::from_constraints(n, ineqs, {{diff(i, j), c[j] - c[i]}});
      if (cell.dim() != target || cells.count(cell.key())) continue;

      const RatVector x = cell.relative_interior_point();
      const Rational top = c[i] + dot(alpha[i], x);
      std::vector<std::size_t> tying;
      for (std::size_t k = 0; k < alpha.size(); ++k)
        if (c[k] + dot(alpha[k], x) == top) tying.push_back(k);
      Integer weight = 0;
      for (std::size_t a = 0; a < tying.size(); ++a)
        for (std::size_t b = a + 1; b < tying.size(); ++b)
          weight = std::max(weight, primitive(diff(tying[a], tying[b])).length);
      std::string key = cell.key();
      cells.emplace(std::move(key), WeightedCell{std::move(cell), std::move(weight)});
    }

  std::vector<WeightedCell> out;
  for (auto& [k, cell] : cells) out.push_back(std::move(cell));
  return TropicalCycle(WeightedComplex(n, target, std::move(out)));
}

TropicalCycle uniform_bergman_fan(int p, int n) {
  if (n < 1 || p < 1 || p > n) throw DomainError("uniform Bergman fan needs 1 <= p <= n");
  if (static_cast<std::size_t>(n) > kMaxPolyhedralDim)
    throw DomainError("ambient dimension unsupported: " + std::to_string(n) + " > " +
                      std::to_string(kMaxPolyhedralDim));
  std::vector<IntVector> gens;
  for (int i = 0; i < n; ++i) {
    IntVector e(n);
    e[i] = 1;
    gens.push_back(std::move(e));
  }
  gens.push_back(IntVector(n, Integer(-1)));

  std::vector<WeightedCell> cells;
  std::vector<bool> pick(n + 1, false);
  std::fill(pick.begin(), pick.begin() + p, true);
  do {
    std::vector<IntVector> rays;
    for (int i = 0; i <= n; ++i)
      if (pick[i]) rays.push_back(gens[i]);
    cells.push_back({Cone::from_rays(n, rays).polyhedron(), 1});
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return TropicalCycle(WeightedComplex(n, p, std::move(cells)));
}

FiberBinomial fiber_binomial(const IntVector& beta, std::complex<double> c) {
  if (is_zero(beta)) throw DomainError("fiber binomial needs a nonzero normal vector");
  if (std::abs(std::abs(c) - 1.0) > 1e-9) throw DomainError("fiber binomial constant must lie on the unit circle");
  auto prim = primitive(beta);
  IntVector plus(beta.size()), minus(beta.size());
  for (std::size_t i = 0; i < beta.size(); ++i) {
    if (prim.direction[i] > 0) plus[i] = prim.direction[i];
    if (prim.direction[i] < 0) minus[i] = -prim.direction[i];
  }
  ComplexPolynomial poly({{plus, 1.0}, {minus, -c}});
  return {std::move(poly), std::move(prim.length), std::move(prim.direction)};
}

}  // namespace tropdyn

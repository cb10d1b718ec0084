#pragma once

// Max-plus arithmetic, tropical polynomials and tropical hypersurfaces.

#include "tropdyn/numeric.hpp"
#include "tropdyn/polyhedra.hpp"

#include <complex>
#include <limits>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace tropdyn {

/// Element of R ∪ {-inf}; + is max, * is ordinary addition.
struct TropicalNumber {
  double value = -std::numeric_limits<double>::infinity();

  static TropicalNumber zero() { return {}; }
  static TropicalNumber one() { return {0.0}; }
  bool is_zero() const { return value == -std::numeric_limits<double>::infinity(); }

  friend TropicalNumber operator+(TropicalNumber a, TropicalNumber b) { return {a.value > b.value ? a.value : b.value}; }
  friend TropicalNumber operator*(TropicalNumber a, TropicalNumber b) {
    if (a.is_zero() || b.is_zero()) return zero();
    return {a.value + b.value};
  }
  friend bool operator==(TropicalNumber, TropicalNumber) = default;
};

/// max_α { <x, α> + c_α } with integer (possibly negative) exponents.
class TropicalPolynomial {
 public:
  /// Repeated exponents keep the larger coefficient. Throws on no terms or
  /// inconsistent exponent lengths.
  explicit TropicalPolynomial(const std::vector<std::pair<IntVector, double>>& terms);

  std::size_t ambient_dim() const { return ambient_; }
  const std::map<IntVector, double>& terms() const { return terms_; }

  bool operator==(const TropicalPolynomial&) const = default;

 private:
  std::size_t ambient_ = 0;
  std::map<IntVector, double> terms_;
};

struct TropicalEvaluation {
  double value = 0;
  std::vector<IntVector> argmax;
};

struct ExactTropicalEvaluation {
  Rational value;
  std::vector<IntVector> argmax;
};

/// Terms within `tol` of the maximum count as attaining it.
TropicalEvaluation eval_tropical(const TropicalPolynomial& q, std::span<const double> x, double tol = 1e-9);
/// Coefficients are read as exact dyadic rationals; ties are exact.
ExactTropicalEvaluation eval_tropical(const TropicalPolynomial& q, const RatVector& x);

/// h ln Σ exp(v_i / h), shifted by the maximum for stability.
double dequantized_sum(std::span<const double> values, double h);

/// Σ c_α z^α with α ∈ Z^n_{>=0} and nonzero coefficients.
class ComplexPolynomial {
 public:
  /// Drops zero coefficients and sums repeated exponents. Throws on negative
  /// exponents, inconsistent lengths, or if nothing is left.
  explicit ComplexPolynomial(const std::vector<std::pair<IntVector, std::complex<double>>>& terms);

  std::size_t ambient_dim() const { return ambient_; }
  const std::map<IntVector, std::complex<double>>& terms() const { return terms_; }
  std::complex<double> operator()(std::span<const std::complex<double>> z) const;

  bool operator==(const ComplexPolynomial&) const = default;

 private:
  std::size_t ambient_ = 0;
  std::map<IntVector, std::complex<double>> terms_;
};

/// max_α <-α, x> with zero coefficients.
TropicalPolynomial tropicalize_poly(const ComplexPolynomial& f);

/// A weighted complex that satisfies the balancing condition.
class TropicalCycle {
 public:
  TropicalCycle() = default;
  /// Throws DomainError if `complex` is not balanced.
  explicit TropicalCycle(WeightedComplex complex);

  const WeightedComplex& complex() const { return complex_; }
  std::size_t ambient_dim() const { return complex_.ambient_dim(); }
  int dim() const { return complex_.dim(); }
  const std::vector<WeightedCell>& cells() const { return complex_.cells(); }

  bool operator==(const TropicalCycle&) const = default;

 private:
  WeightedComplex complex_;
};

/// Corner locus of q with lattice-length weights; ambient dimension at most 3.
TropicalCycle tropical_hypersurface(const TropicalPolynomial& q);

/// p-dimensional cones spanned by subsets of {e_1, ..., e_n, -(e_1 + ... + e_n)}, weight 1.
TropicalCycle uniform_bergman_fan(int p, int n);

struct FiberBinomial {
  ComplexPolynomial poly;
  Integer weight;       // lattice length of β
  IntVector direction;  // primitive α with β = weight · α
};

/// z^{α+} - c z^{α-} for β = weight · α; |c| must be 1.
FiberBinomial fiber_binomial(const IntVector& beta, std::complex<double> c);

}  // namespace tropdyn

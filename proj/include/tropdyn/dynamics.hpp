#pragma once

// Floating-point experiments: roots of unity, amoebas, dequantization.

#include "tropdyn/toric.hpp"
#include "tropdyn/tropical.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tropdyn {

/// Log = -log|.| coordinatewise. Every amoeba and pullback goes through this.
inline double log_coordinate(std::complex<double> z) { return -std::log(std::abs(z)); }

struct PointCloud {
  std::size_t dim = 0;
  std::vector<std::vector<double>> points;
  std::optional<int> m;
  std::optional<std::uint64_t> seed;
};

struct ComplexCloud {
  std::size_t dim = 0;
  std::vector<std::vector<std::complex<double>>> points;
  std::optional<int> m;
  std::optional<std::uint64_t> seed;
};

struct GridSpec {
  std::vector<double> lo, hi;
  std::vector<int> resolution;
  double delta = 0.2;  // exclusion radius around the tropical set
  int phases = 64;     // phase samples per slice in amoeba sweeps

  std::size_t dim() const { return lo.size(); }
  /// Throws unless lo < hi, resolution >= 2 on every axis, delta >= 0, phases >= 1.
  void validate() const;
  /// Grid step on axis i.
  double pitch(std::size_t i) const { return (hi[i] - lo[i]) / (resolution[i] - 1); }
};

struct ConvergenceReport {
  std::vector<int> ms;
  std::vector<double> errors;
  double C = 0;
  double rho = 0;
  std::uint64_t seed = 0;
};

struct RootMode {
  bool all = true;
  std::size_t count = 0;
  std::uint64_t seed = 0;

  static RootMode every() { return {}; }
  static RootMode sampled(std::size_t k, std::uint64_t seed) { return {false, k, seed}; }
};

/// Componentwise m-th roots of a. All mode enumerates the m^n combinations in
/// root-index order (limit 10^6); sampled mode draws independent root indices.
ComplexCloud mth_roots(std::span<const std::complex<double>> a, int m, RootMode mode = RootMode::every());

/// Π_j Σ_{l<m} ζ^{l ν_j} with ζ = exp(2πi/m): m^n if m divides every ν_j, else 0.
Integer weyl_sum(int m, std::span<const long long> nu);

/// (1/N) Σ exp(-i <ν, arg z>) over the cloud.
std::complex<double> empirical_fourier(const ComplexCloud& cloud, std::span<const long long> nu);

/// Star discrepancy of points in [0, 1).
double star_discrepancy(std::vector<double> xs);

class RootFindingError : public DomainError {
 public:
  RootFindingError(const std::string& what, std::vector<std::complex<double>> partial)
      : DomainError(what), partial_(std::move(partial)) {}
  const std::vector<std::complex<double>>& partial() const { return partial_; }

 private:
  std::vector<std::complex<double>> partial_;
};

/// Roots with multiplicity of Σ coeffs[k] z^k (Aberth-Ehrlich iteration).
std::vector<std::complex<double>> polynomial_roots(std::span<const std::complex<double>> coeffs);

/// Scaled amoeba (1/m) Log(Z(f)) of a bivariate f. Sweep j sets z_j = exp(-s + iφ)
/// for s on axis j of the grid box scaled by m and φ on `grid.phases` equally
/// spaced angles shifted by `phase_offset`, then solves for the other variable.
PointCloud amoeba_sample(const ComplexPolynomial& f, const GridSpec& grid, int m, double phase_offset = 0);

/// Points on every cell of C clipped to the box, spaced 1/density, including
/// the vertices of each clipped cell.
PointCloud sample_tropical_support(const TropicalCycle& c, std::span<const double> lo, std::span<const double> hi,
                                   double density);

/// Points of `cloud` inside the box.
PointCloud clip(const PointCloud& cloud, std::span<const double> lo, std::span<const double> hi);

double directed_hausdorff(const PointCloud& a, const PointCloud& b);
double hausdorff(const PointCloud& a, const PointCloud& b);

/// Euclidean distance from x to the support of the cycle (infinity if empty).
double distance_to_support(const TropicalCycle& c, std::span<const double> x);

/// (1/m) log|f(z^m)| at z_j = exp(-x_j + i θ_j), evaluated in log-sum-exp form.
double pullback_log_modulus(const ComplexPolynomial& f, int m, std::span<const double> x,
                            std::span<const double> theta);

struct DequantizationError {
  double l_inf = 0;
  double l1 = 0;  // mean over the retained grid points
  std::size_t points = 0;
  std::size_t resamples = 0;
};

/// |(1/m) log|f(z^m)| - trop(f)(x)| over grid points at distance >= delta from
/// the tropical hypersurface, with seeded random phases.
DequantizationError dequantization_error(const ComplexPolynomial& f, int m, const GridSpec& grid,
                                         std::uint64_t seed = 0);

struct ExperimentConfig {
  std::optional<ComplexPolynomial> f;
  GridSpec grid;
  double density = 50;
  std::uint64_t seed = 0;
};

/// Least-squares fit of log e = log C - ρ log m.
void fit_rate(ConvergenceReport& report);

/// Runs "hausdorff-to-tropical", "dequantization" or "equidistribution-discrepancy"
/// for each m and fits the decay rate.
ConvergenceReport convergence_report(const std::string& metric, const std::vector<int>& ms,
                                     const ExperimentConfig& config);

}  // namespace tropdyn

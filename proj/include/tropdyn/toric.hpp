#pragma once

// Cone-orbit correspondence, distinguished points and the power map Φ_m on orbits.

#include "tropdyn/lattice.hpp"
#include "tropdyn/polyhedra.hpp"

#include <complex>
#include <memory>
#include <vector>

namespace tropdyn {

/// Torus orbit O(σ) ≅ T_{N(σ)} with N(σ) = Z^n / (H_σ ∩ Z^n).
struct Orbit {
  Cone cone;
  QuotientLattice quotient;
  int dim = 0;  // n - dim σ
};

Orbit orbit_of(const Cone& sigma);

/// One orbit per cone of the fan, in the fan's cone order.
std::vector<Orbit> orbits(const Fan& fan);

/// t · z_σ, with t given in the coordinates of the complement basis of N(σ).
struct OrbitPoint {
  std::shared_ptr<const Orbit> orbit;
  std::vector<std::complex<double>> coords;

  /// Throws if the coordinate count differs from dim(orbit) or a coordinate is zero.
  OrbitPoint(std::shared_ptr<const Orbit> orbit, std::vector<std::complex<double>> coords);
};

/// Value of the semigroup homomorphism of z_σ on each probe u ∈ σ^∨ ∩ M:
/// 1 if u ∈ σ^⊥, else 0. Throws if a probe lies outside σ^∨.
std::vector<int> distinguished_point(const Cone& sigma, const std::vector<IntVector>& probes);

/// k-th m-th root of a: |a|^{1/m} exp(i (arg a + 2πk) / m).
std::complex<double> root_of(std::complex<double> a, int m, int k);

/// Raises every orbit coordinate to the m-th power.
OrbitPoint phi_m_orbit(const Cone& sigma, int m, const OrbitPoint& z);

/// All m^{dim orbit} preimages of z under Φ_m, enumerated by root index with
/// the first coordinate varying slowest. Throws if m < 1 or the count exceeds 10^6.
std::vector<OrbitPoint> preimages(const Cone& sigma, int m, const OrbitPoint& z);

}  // namespace tropdyn

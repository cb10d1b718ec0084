#include "tropdyn/toric.hpp"

#include <cmath>

namespace tropdyn {

namespace {

constexpr double kPreimageBudget = 1e6;

void require_orbit_of(const Cone& sigma, const OrbitPoint& z) {
  if (!z.orbit || !(z.orbit->cone == sigma)) throw DomainError("point does not lie on the orbit of the given cone");
}

}  // namespace

Orbit orbit_of(const Cone& sigma) {
  std::vector<IntVector> span = sigma.rays();
  span.insert(span.end(), sigma.lineality().begin(), sigma.lineality().end());
  auto q = saturate_and_complete(sigma.ambient_dim(), span);
  const int d = static_cast<int>(sigma.ambient_dim()) - sigma.dim();
  return {sigma, std::move(q), d};
}

std::vector<Orbit> orbits(const Fan& fan) {
  std::vector<Orbit> out;
  for (const auto& c : fan.cones()) out.push_back(orbit_of(c));
  return out;
}

OrbitPoint::OrbitPoint(std::shared_ptr<const Orbit> o, std::vector<std::complex<double>> c)
    : orbit(std::move(o)), coords(std::move(c)) {
  if (!orbit) throw DomainError("orbit point without orbit");
  if (coords.size() != static_cast<std::size_t>(orbit->dim))
    throw DomainError("orbit point needs " + std::to_string(orbit->dim) + " coordinates");
  for (const auto& x : coords)
    if (x == 0.0) throw DomainError("orbit coordinates must be nonzero");
}

std::vector<int> distinguished_point(const Cone& sigma, const std::vector<IntVector>& probes) {
  std::vector<int> out;
  for (const auto& u : probes) {
    if (u.size() != sigma.ambient_dim()) throw DomainError("probe dimension mismatch");
    bool perp = true;
    for (const auto& l : sigma.lineality())
      if (dot(u, l) != 0) throw DomainError("probe lies outside the dual cone");
    for (const auto& r : sigma.rays()) {
      const Integer s = dot(u, r);
      if (s < 0) throw DomainError("probe lies outside the dual cone");
      if (s != 0) perp = false;
    }
    out.push_back(perp ? 1 : 0);
  }
  return out;
}

std::complex<double> root_of(std::complex<double> a, int m, int k) {
  if (m < 1) throw DomainError("root order m must be >= 1");
  return std::polar(std::pow(std::abs(a), 1.0 / m), (std::arg(a) + 2 * M_PI * k) / m);
}

OrbitPoint phi_m_orbit(const Cone& sigma, int m, const OrbitPoint& z) {
  if (m < 1) throw DomainError("power map needs m >= 1");
  require_orbit_of(sigma, z);
  std::vector<std::complex<double>> c;
  for (const auto& x : z.coords) c.push_back(std::pow(x, m));
  return OrbitPoint(z.orbit, std::move(c));
}

std::vector<OrbitPoint> preimages(const Cone& sigma, int m, const OrbitPoint& z) {
  if (m < 1) throw DomainError("power map needs m >= 1");
  require_orbit_of(sigma, z);
  const int d = z.orbit->dim;
  if (std::pow(double(m), d) > kPreimageBudget) throw DomainError("preimage count m^dim exceeds 10^6");

  std::vector<std::vector<std::complex<double>>> roots(d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < m; ++k) roots[j].push_back(root_of(z.coords[j], m, k));

  std::vector<OrbitPoint> out;
  std::vector<int> idx(d, 0);
  while (true) {
    std::vector<std::complex<double>> c(d);
    for (int j = 0; j < d; ++j) c[j] = roots[j][idx[j]];
    out.emplace_back(z.orbit, std::move(c));
    int j = d - 1;
    while (j >= 0 && ++idx[j] == m) idx[j--] = 0;
    if (j < 0) break;
  }
  return out;
}

}  // namespace tropdyn

#include <doctest.h>

#include "tropdyn/toric.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace tropdyn;

namespace {

Cone cone2(std::vector<std::vector<long long>> rays) {
  std::vector<IntVector> r;
  for (const auto& v : rays) r.push_back(IntVector(v.begin(), v.end()));
  return Cone::from_rays(rays.front().size(), r);
}

Fan p2_fan() {
  return Fan::from_cones(2, {cone2({{1, 0}, {0, 1}}), cone2({{0, 1}, {-1, -1}}), cone2({{-1, -1}, {1, 0}})});
}

OrbitPoint point_on(const Cone& sigma, std::vector<std::complex<double>> coords) {
  return OrbitPoint(std::make_shared<const Orbit>(orbit_of(sigma)), std::move(coords));
}

}  // namespace

TEST_CASE("orbits of small fans") {
  auto o = orbits(p2_fan());
  REQUIRE(o.size() == 7);
  std::vector<int> dims;
  for (const auto& x : o) {
    dims.push_back(x.dim);
    CHECK(x.dim + x.cone.dim() == 2);
    CHECK(x.quotient.quotient_rank() == static_cast<std::size_t>(x.dim));
  }
  std::sort(dims.rbegin(), dims.rend());
  CHECK(dims == std::vector<int>{2, 1, 1, 1, 0, 0, 0});

  auto t = orbits(Fan::from_cones(3, {Cone::zero(3)}));
  REQUIRE(t.size() == 1);
  CHECK(t[0].dim == 3);

  Fan p1p1 = Fan::from_cones(2, {cone2({{1, 0}, {0, 1}}), cone2({{0, 1}, {-1, 0}}), cone2({{-1, 0}, {0, -1}}),
                                 cone2({{0, -1}, {1, 0}})});
  CHECK(orbits(p1p1).size() == 9);
}

TEST_CASE("distinguished points") {
  std::vector<IntVector> probes{int_vector({1, 0}), int_vector({0, 1}), int_vector({-3, 2}), int_vector({0, 0})};
  CHECK(distinguished_point(Cone::zero(2), probes) == std::vector<int>{1, 1, 1, 1});

  auto ray = cone2({{1, 0}});
  CHECK(distinguished_point(ray, {int_vector({1, 0}), int_vector({0, 1}), int_vector({0, -1})}) ==
        std::vector<int>{0, 1, 1});
  CHECK_THROWS_AS(distinguished_point(ray, {int_vector({-1, 0})}), DomainError);

  auto full = cone2({{1, 0}, {0, 1}});
  CHECK(distinguished_point(full, {int_vector({0, 0}), int_vector({1, 0}), int_vector({2, 5})}) ==
        std::vector<int>{1, 0, 0});

  // multiplicative on sums of probes: value(u + v) = value(u) * value(v)
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> d(0, 4);
  for (int k = 0; k < 100; ++k) {
    IntVector u = int_vector({d(rng), d(rng) - 2}), v = int_vector({d(rng), d(rng) - 2});
    IntVector s{u[0] + v[0], u[1] + v[1]};
    auto r = distinguished_point(ray, {u, v, s});
    CHECK(r[2] == r[0] * r[1]);
  }
}

TEST_CASE("preimages under the power map") {
  auto torus = point_on(Cone::zero(2), {1.0, 1.0});
  auto pre = preimages(Cone::zero(2), 3, torus);
  CHECK(pre.size() == 9);
  for (const auto& p : pre) {
    auto back = phi_m_orbit(Cone::zero(2), 3, p);
    for (int j = 0; j < 2; ++j) CHECK(std::abs(back.coords[j] - 1.0) < 1e-12);
  }

  auto ray = cone2({{1, 0}});
  auto z = point_on(ray, {8.0});
  pre = preimages(ray, 3, z);
  REQUIRE(pre.size() == 3);
  const std::complex<double> w = std::polar(1.0, 2 * M_PI / 3);
  CHECK(std::abs(pre[0].coords[0] - 2.0) < 1e-12);
  CHECK(std::abs(pre[1].coords[0] - 2.0 * w) < 1e-12);
  CHECK(std::abs(pre[2].coords[0] - 2.0 * w * w) < 1e-12);

  pre = preimages(ray, 1, z);
  REQUIRE(pre.size() == 1);
  CHECK(pre[0].coords[0] == z.coords[0]);

  auto full = cone2({{1, 0}, {0, 1}});
  CHECK(preimages(full, 5, point_on(full, {})).size() == 1);

  CHECK_THROWS_AS(preimages(ray, 0, z), DomainError);
  CHECK_THROWS_AS(phi_m_orbit(Cone::zero(2), 2, z), DomainError);
  CHECK_THROWS_AS(point_on(ray, {0.0}), DomainError);
  CHECK_THROWS_AS(point_on(ray, {1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(preimages(Cone::zero(3), 101, point_on(Cone::zero(3), {1.0, 1.0, 1.0})), DomainError);
}

TEST_CASE("power maps compose") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> r(0.2, 3), a(-M_PI, M_PI);
  for (int t = 0; t < 50; ++t) {
    auto z = point_on(Cone::zero(2), {std::polar(r(rng), a(rng)), std::polar(r(rng), a(rng))});
    const int m = 1 + t % 4, k = 2 + t % 3;
    auto lhs = phi_m_orbit(Cone::zero(2), m, phi_m_orbit(Cone::zero(2), k, z));
    auto rhs = phi_m_orbit(Cone::zero(2), m * k, z);
    for (int j = 0; j < 2; ++j) CHECK(std::abs(lhs.coords[j] - rhs.coords[j]) <= 1e-9 * std::abs(rhs.coords[j]));
  }
}

TEST_CASE("preimage clouds have vanishing low Fourier modes") {
  const int m = 16;
  auto pre = preimages(Cone::zero(2), m, point_on(Cone::zero(2), {std::polar(1.0, 0.7), std::polar(1.0, -2.0)}));
  for (int n1 = -5; n1 <= 5; ++n1)
    for (int n2 = -5; n2 <= 5; ++n2) {
      if (n1 == 0 && n2 == 0) continue;
      std::complex<double> s = 0;
      for (const auto& p : pre) s += std::exp(std::complex<double>(0, -(n1 * std::arg(p.coords[0]) + n2 * std::arg(p.coords[1]))));
      CHECK(std::abs(s) / pre.size() < 1e-12);
    }
}

#include <doctest.h>

#include "tropdyn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace tropdyn;

namespace {

using C = std::complex<double>;

ComplexPolynomial cpoly(std::vector<std::pair<std::vector<long long>, C>> terms) {
  std::vector<std::pair<IntVector, C>> t;
  for (const auto& [a, c] : terms) t.emplace_back(IntVector(a.begin(), a.end()), c);
  return ComplexPolynomial(t);
}

ComplexPolynomial line_poly() { return cpoly({{{1, 0}, 1.0}, {{0, 1}, 1.0}, {{0, 0}, 1.0}}); }

C brute_weyl(int m, const std::vector<long long>& nu) {
  C total = 1;
  for (long long v : nu) {
    C s = 0;
    for (int l = 0; l < m; ++l) s += std::polar(1.0, 2 * M_PI * double(l) * double(v) / m);
    total *= s;
  }
  return total;
}

C horner(const std::vector<C>& c, C z) {
  C v = 0;
  for (std::size_t k = c.size(); k-- > 0;) v = v * z + c[k];
  return v;
}

// Oracle: distance from x to a union of rays from the origin.
double distance_to_rays(const std::vector<std::array<double, 2>>& rays, const double* x) {
  double best = 1e300;
  for (const auto& r : rays) {
    const double len = std::hypot(r[0], r[1]);
    const double t = std::max(0.0, (x[0] * r[0] + x[1] * r[1]) / len);
    best = std::min(best, std::hypot(x[0] - t * r[0] / len, x[1] - t * r[1] / len));
  }
  return best;
}

}  // namespace

TEST_CASE("m-th roots") {
  const C one[] = {1.0};
  auto r = mth_roots(one, 4);
  REQUIRE(r.points.size() == 4);
  const C expect[] = {1.0, C(0, 1), -1.0, C(0, -1)};
  for (int k = 0; k < 4; ++k) CHECK(std::abs(r.points[k][0] - expect[k]) < 1e-15);

  const C eight[] = {8.0};
  r = mth_roots(eight, 3);
  for (const auto& p : r.points) {
    CHECK(std::abs(std::abs(p[0]) - 2) < 1e-14);
    CHECK(std::abs(p[0] * p[0] * p[0] - 8.0) < 1e-12);
  }

  const C pair[] = {1.0, 1.0};
  CHECK(mth_roots(pair, 2).points.size() == 4);

  auto s = mth_roots(pair, 7, RootMode::sampled(100, 5));
  CHECK(s.points.size() == 100);
  CHECK(s.seed == 5u);
  for (const auto& p : s.points) CHECK(std::abs(std::pow(p[1], 7) - 1.0) < 1e-12);
  auto s2 = mth_roots(pair, 7, RootMode::sampled(100, 5));
  CHECK(s.points == s2.points);

  const C zero[] = {1.0, 0.0};
  CHECK_THROWS_AS(mth_roots(zero, 2), DomainError);
  const C triple[] = {1.0, 1.0, 1.0};
  CHECK_THROWS_AS(mth_roots(triple, 101), DomainError);
  CHECK_THROWS_AS(mth_roots(one, 0), DomainError);
}

TEST_CASE("Weyl sums") {
  const long long a[] = {1};
  CHECK(weyl_sum(3, a) == 0);
  const long long b[] = {6};
  CHECK(weyl_sum(3, b) == 3);
  const long long c[] = {2, 0};
  CHECK(weyl_sum(4, c) == 0);
  CHECK(std::abs(brute_weyl(4, {2, 0})) < 1e-12);

  for (int m = 2; m <= 9; ++m)
    for (long long v1 = -10; v1 <= 10; ++v1)
      for (long long v2 = -3; v2 <= 3; ++v2) {
        const long long nu[] = {v1, v2};
        const C brute = brute_weyl(m, {v1, v2});
        CHECK(std::abs(brute - weyl_sum(m, nu).convert_to<double>()) < 1e-10);
        CHECK((weyl_sum(m, nu) == 0) == (v1 % m != 0 || v2 % m != 0));
      }
}

TEST_CASE("empirical Fourier coefficients of root clouds") {
  const C a[] = {std::polar(1.0, 0.3), std::polar(1.0, -1.1)};
  const int m = 6;
  auto cloud = mth_roots(a, m);
  for (long long v1 = -8; v1 <= 8; ++v1)
    for (long long v2 = -8; v2 <= 8; ++v2) {
      const long long nu[] = {v1, v2};
      // Shifted by the phase of the base point: Σ exp(-i<ν,θ>) = exp(-i<ν,arg a>/m) * weyl / m^n
      const double phase = (v1 * 0.3 + v2 * -1.1) / m;
      const C expect = std::polar(1.0, -phase) * weyl_sum(m, nu).convert_to<double>() / double(m * m);
      CHECK(std::abs(empirical_fourier(cloud, nu) - expect) < 1e-12);
    }
  const C ones[] = {1.0, 1.0};
  cloud = mth_roots(ones, 5);
  const long long nu[] = {5, 10};
  CHECK(std::abs(empirical_fourier(cloud, nu) - 1.0) < 1e-12);
}

TEST_CASE("star discrepancy") {
  CHECK(star_discrepancy({0.5}) == doctest::Approx(0.5));
  std::vector<double> eq;
  for (int k = 0; k < 10; ++k) eq.push_back(k / 10.0);
  CHECK(star_discrepancy(eq) == doctest::Approx(0.1));
  CHECK_THROWS_AS(star_discrepancy({}), DomainError);
}

TEST_CASE("polynomial roots examples") {
  auto sorted = [](std::vector<C> r) {
    std::sort(r.begin(), r.end(), [](C a, C b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
    return r;
  };
  std::vector<C> p{1.0, 0.0, 1.0};
  auto r = sorted(polynomial_roots(p));
  CHECK(std::abs(r[0] - C(0, -1)) < 1e-12);
  CHECK(std::abs(r[1] - C(0, 1)) < 1e-12);

  p = {2.0, -3.0, 1.0};
  r = sorted(polynomial_roots(p));
  CHECK(std::abs(r[0] - 1.0) < 1e-12);
  CHECK(std::abs(r[1] - 2.0) < 1e-12);

  p = {-1.0, 0.0, 0.0, 1.0};
  r = polynomial_roots(p);
  const C one[] = {1.0};
  auto cube = mth_roots(one, 3);
  for (const auto& q : cube.points) {
    double best = 1e9;
    for (const auto& z : r) best = std::min(best, std::abs(z - q[0]));
    CHECK(best < 1e-12);
  }

  p = {0.0, 0.0, 3.0, 1.0};  // z^2 (z + 3)
  r = sorted(polynomial_roots(p));
  CHECK(std::abs(r[0] + 3.0) < 1e-12);
  CHECK(r[1] == 0.0);
  CHECK(r[2] == 0.0);

  p = {-1.0, 3.0, -3.0, 1.0};  // (z - 1)^3
  for (const auto& z : polynomial_roots(p)) CHECK(std::abs(z - 1.0) < 1e-4);

  CHECK_THROWS_AS(polynomial_roots(std::vector<C>{1.0}), DomainError);
  CHECK_THROWS_AS(polynomial_roots(std::vector<C>{1.0, 0.0}), DomainError);
}

TEST_CASE("polynomial roots on random inputs satisfy Vieta") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + trial % 32;
    std::vector<C> p(d + 1);
    for (auto& c : p) c = C(g(rng), g(rng));
    auto r = polynomial_roots(p);
    REQUIRE(r.size() == static_cast<std::size_t>(d));
    double scale = 0;
    for (const auto& z : r) {
      double s = 0, zk = 1;
      for (int k = 0; k <= d; ++k, zk *= std::abs(z)) s += std::abs(p[k]) * zk;
      CHECK(std::abs(horner(p, z)) / s <= 1e-8);
      scale += std::log(std::abs(z));
    }
    CHECK(std::exp(scale) == doctest::Approx(std::abs(p[0] / p[d])).epsilon(1e-8));
  }
}

TEST_CASE("amoeba sampling") {
  GridSpec g{{-1, -1}, {1, 1}, {3, 3}, 0.2, 1};
  auto cloud = amoeba_sample(line_poly(), g, 1);
  bool found = false;
  for (const auto& p : cloud.points) found = found || (std::abs(p[0]) < 1e-15 && std::abs(p[1] + std::log(2.0)) < 1e-12);
  CHECK(found);

  GridSpec fine{{-2, -2}, {2, 2}, {41, 41}, 0.2, 8};
  auto diag = amoeba_sample(cpoly({{{1, 0}, 1.0}, {{0, 1}, -1.0}}), fine, 1);
  CHECK(!diag.points.empty());
  for (const auto& p : diag.points) CHECK(std::abs(p[0] - p[1]) < 1e-12);

  // m-scaling: the m = 8 cloud is the m = 1 cloud over the 8-times box, shrunk by 8
  GridSpec big = fine;
  for (auto& x : big.lo) x *= 8;
  for (auto& x : big.hi) x *= 8;
  auto a8 = amoeba_sample(line_poly(), fine, 8);
  auto a1 = amoeba_sample(line_poly(), big, 1);
  REQUIRE(a8.points.size() == a1.points.size());
  for (std::size_t i = 0; i < a8.points.size(); ++i)
    for (int j = 0; j < 2; ++j) CHECK(a8.points[i][j] == doctest::Approx(a1.points[i][j] / 8).epsilon(1e-12));

  // Log forgets phases: offsetting the slice phases barely moves the cloud
  GridSpec dense{{-2, -2}, {2, 2}, {81, 81}, 0.2, 256};
  const double lo[] = {-1.5, -1.5}, hi[] = {1.5, 1.5};
  auto p0 = clip(amoeba_sample(line_poly(), dense, 1), lo, hi);
  auto p1 = clip(amoeba_sample(line_poly(), dense, 1, 0.37), lo, hi);
  CHECK(hausdorff(p0, p1) < 2 * dense.pitch(0));

  CHECK_THROWS_AS(amoeba_sample(cpoly({{{1, 0}, 1.0}, {{0, 0}, 1.0}}), fine, 1), DomainError);
  CHECK_THROWS_AS(amoeba_sample(line_poly(), fine, 0), DomainError);
}

TEST_CASE("scaled amoebas approach the tropical line") {
  const std::vector<std::array<double, 2>> rays{{1, 0}, {0, 1}, {-1, -1}};
  GridSpec g{{-3, -3}, {3, 3}, {121, 121}, 0.2, 32};
  const double lo[] = {-3, -3}, hi[] = {3, 3};
  double prev = 1e9;
  for (int m : {1, 2, 4, 8, 16}) {
    auto cloud = clip(amoeba_sample(line_poly(), g, m), lo, hi);
    double worst = 0;
    for (const auto& p : cloud.points) worst = std::max(worst, distance_to_rays(rays, p.data()));
    CHECK(worst <= prev + 2 * g.pitch(0));
    // the amoeba of a line lies within log(2) of its spine in each coordinate
    CHECK(worst <= std::log(2.0) * std::sqrt(2.0) / m + 1e-9);
    prev = worst;
  }
}

TEST_CASE("tropical support samples") {
  auto line = tropical_hypersurface(TropicalPolynomial({{int_vector({0, 0}), 0}, {int_vector({1, 0}), 0}, {int_vector({0, 1}), 0}}));
  const double lo[] = {-2, -2}, hi[] = {2, 2};
  auto s = sample_tropical_support(line, lo, hi, 10);
  auto near = [&](double x, double y, double tol) {
    for (const auto& p : s.points)
      if (std::hypot(p[0] - x, p[1] - y) <= tol) return true;
    return false;
  };
  CHECK(near(1, 1, 0.1));
  CHECK(near(-2, 0, 1e-12));
  CHECK(near(0, -2, 1e-12));
  CHECK(near(2, 2, 1e-12));
  CHECK(near(0, 0, 1e-12));
  for (const auto& p : s.points) CHECK(distance_to_support(line, p) < 1e-9);

  auto empty = tropical_hypersurface(TropicalPolynomial({{int_vector({1, 0}), 0}}));
  CHECK(sample_tropical_support(empty, lo, hi, 10).points.empty());

  auto axis = tropical_hypersurface(TropicalPolynomial({{int_vector({0, 0}), 0}, {int_vector({-2, 0}), 0}}));
  auto a = sample_tropical_support(axis, lo, hi, 10);
  CHECK(a.points.size() >= 41);
  for (const auto& p : a.points) CHECK(p[0] == 0);

  // surfaces in R^3 get interior samples
  auto plane3 = tropical_hypersurface(
      TropicalPolynomial({{int_vector({0, 0, 0}), 0}, {int_vector({1, 0, 0}), 0}, {int_vector({0, 1, 0}), 0}, {int_vector({0, 0, 1}), 0}}));
  const double lo3[] = {-1, -1, -1}, hi3[] = {1, 1, 1};
  auto s3 = sample_tropical_support(plane3, lo3, hi3, 4);
  CHECK(s3.points.size() > 40);
  for (const auto& p : s3.points) CHECK(distance_to_support(plane3, p) < 1e-9);

  CHECK_THROWS_AS(sample_tropical_support(line, lo, hi, 0), DomainError);
}

TEST_CASE("distance to support") {
  auto line = tropical_hypersurface(tropicalize_poly(line_poly()));
  const std::vector<std::array<double, 2>> rays{{1, 0}, {0, 1}, {-1, -1}};
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-4, 4);
  for (int k = 0; k < 300; ++k) {
    const double x[] = {u(rng), u(rng)};
    CHECK(distance_to_support(line, x) == doctest::Approx(distance_to_rays(rays, x)).epsilon(1e-12));
  }
}

TEST_CASE("Hausdorff distances") {
  PointCloud a{2, {{0, 0}}, {}, {}}, b{2, {{3, 4}}, {}, {}};
  CHECK(directed_hausdorff(a, b) == 5);
  PointCloud c{2, {{0, 0}, {3, 4}}, {}, {}};
  CHECK(directed_hausdorff(a, c) == 0);
  PointCloud d{1, {{0}, {1}}, {}, {}}, e{1, {{0.5}}, {}, {}};
  CHECK(directed_hausdorff(d, e) == 0.5);
  CHECK(hausdorff(d, e) == 0.5);
  CHECK_THROWS_AS(hausdorff(a, PointCloud{2, {}, {}, {}}), DomainError);

  // early exit agrees with the plain double loop
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  PointCloud p{2, {}, {}, {}}, q{2, {}, {}, {}};
  for (int k = 0; k < 200; ++k) p.points.push_back({u(rng), u(rng)}), q.points.push_back({u(rng), 2 * u(rng)});
  double plain = 0;
  for (const auto& x : p.points) {
    double best = 1e300;
    for (const auto& y : q.points) best = std::min(best, std::hypot(x[0] - y[0], x[1] - y[1]));
    plain = std::max(plain, best);
  }
  CHECK(directed_hausdorff(p, q) == doctest::Approx(plain).epsilon(1e-14));
}

TEST_CASE("dequantization pointwise") {
  const double x[] = {1, 2}, zero[] = {0, 0};
  const double hand = std::log(1 + std::exp(-8.0) + std::exp(-16.0)) / 8;
  CHECK(pullback_log_modulus(line_poly(), 8, x, zero) == doctest::Approx(hand).epsilon(1e-12));
  CHECK(hand == doctest::Approx(4.2e-5).epsilon(0.01));

  // monomials dequantize exactly
  GridSpec g{{-3, -3}, {3, 3}, {21, 21}, 0.2, 1};
  auto mono = cpoly({{{1, 0}, 1.0}});
  auto err = dequantization_error(mono, 5, g, 1);
  CHECK(err.l_inf < 1e-12);

  // a non-unit dominant coefficient gives the 1/m rate: (1/m) log 2 at x = (1, 2)
  auto f = cpoly({{{1, 0}, 1.0}, {{0, 1}, 1.0}, {{0, 0}, 2.0}});
  const double t[] = {0.4, 1.3};
  for (int m : {4, 8, 16}) {
    const double e1 = std::abs(pullback_log_modulus(f, m, x, t));
    const double e2 = std::abs(pullback_log_modulus(f, 2 * m, x, t));
    CHECK(e2 / e1 == doctest::Approx(0.5).epsilon(0.02));
  }
}

TEST_CASE("dequantized sums match pullbacks at phase zero") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> c(0.1, 5), u(-2, 2);
  std::uniform_int_distribution<int> e(0, 3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::pair<IntVector, C>> terms;
    for (int k = 0; k < 4; ++k) terms.emplace_back(int_vector({e(rng), e(rng)}), c(rng));
    ComplexPolynomial f(terms);
    const int m = 1 + trial % 16;
    const double x[] = {u(rng), u(rng)}, zero[] = {0, 0};
    std::vector<double> v;
    for (const auto& [a, coeff] : f.terms())
      v.push_back(-(a[0].convert_to<double>() * x[0] + a[1].convert_to<double>() * x[1]) + std::log(coeff.real()) / m);
    CHECK(std::abs(pullback_log_modulus(f, m, x, zero) - dequantized_sum(v, 1.0 / m)) < 1e-12);
  }
}

TEST_CASE("dequantization error over a grid") {
  GridSpec g{{-3, -3}, {3, 3}, {31, 31}, 0.2, 1};
  auto e4 = dequantization_error(line_poly(), 4, g, 7);
  auto e8 = dequantization_error(line_poly(), 8, g, 7);
  CHECK(e4.points > 0);
  CHECK(e8.l_inf < e4.l_inf);
  CHECK(e8.l1 < e4.l1);
  CHECK(e4.l1 <= e4.l_inf);
  // deterministic in the seed
  auto again = dequantization_error(line_poly(), 4, g, 7);
  CHECK(again.l_inf == e4.l_inf);
  CHECK(again.l1 == e4.l1);
  // bound: each point is at least delta from the corner locus, so the error is below (1/m) log 3
  CHECK(e4.l_inf <= std::log(3.0) / 4);

  GridSpec bad = g;
  bad.resolution = {1, 31};
  CHECK_THROWS_AS(dequantization_error(line_poly(), 4, bad), DomainError);
  GridSpec all_excluded{{-0.05, -0.05}, {0.05, 0.05}, {3, 3}, 0.2, 1};
  CHECK_THROWS_AS(dequantization_error(line_poly(), 4, all_excluded), DomainError);
}

TEST_CASE("convergence reports") {
  ExperimentConfig cfg;
  auto r = convergence_report("equidistribution-discrepancy", {64, 128, 256}, cfg);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(r.errors[i] <= 2.0 / r.ms[i]);
    CHECK(r.errors[i] == doctest::Approx(1.0 / r.ms[i]).epsilon(1e-9));
  }
  CHECK(r.rho == doctest::Approx(1).epsilon(1e-6));

  ConvergenceReport exact{{2, 4, 8}, {3.0 / 4, 3.0 / 16, 3.0 / 64}, 0, 0, 0};
  fit_rate(exact);
  CHECK(exact.rho == doctest::Approx(2));
  CHECK(exact.C == doctest::Approx(3));

  cfg.f = line_poly();
  cfg.grid = GridSpec{{-3, -3}, {3, 3}, {61, 61}, 0.2, 16};
  cfg.density = 20;
  auto h = convergence_report("hausdorff-to-tropical", {4, 8, 16}, cfg);
  CHECK(h.errors[1] < h.errors[0]);
  CHECK(h.errors[2] < h.errors[1]);

  CHECK_THROWS_AS(convergence_report("nope", {1, 2}, cfg), DomainError);
  CHECK_THROWS_AS(convergence_report("dequantization", {4}, cfg), DomainError);
  CHECK_THROWS_AS(convergence_report("dequantization", {8, 4}, cfg), DomainError);
  CHECK_THROWS_AS(convergence_report("dequantization", {4, 8}, ExperimentConfig{}), DomainError);
}

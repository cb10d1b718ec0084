#include "tropdyn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace tropdyn {

namespace {

constexpr double kRootBudget = 1e6;
constexpr int kAberthIterations = 200;
constexpr double kAberthTol = 1e-12;
constexpr double kResidualTol = 1e-8;
constexpr double kVanishingTol = 1e-13;
constexpr std::size_t kResampleBudget = 1000;

using Vec = std::vector<double>;

double norm(const Vec& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Orthonormal basis of the span of integer vectors (modified Gram-Schmidt).
std::vector<Vec> orthonormal(const std::vector<IntVector>& span) {
  std::vector<Vec> out;
  for (const auto& v : span) {
    Vec w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = to_double(v[i]);
    for (const auto& b : out) {
      double d = std::inner_product(w.begin(), w.end(), b.begin(), 0.0);
      for (std::size_t i = 0; i < w.size(); ++i) w[i] -= d * b[i];
    }
    const double len = norm(w);
    if (len < 1e-12) continue;
    for (auto& x : w) x /= len;
    out.push_back(std::move(w));
  }
  return out;
}

Vec to_doubles(const RatVector& v) {
  Vec out;
  for (const auto& x : v) out.push_back(to_double(x));
  return out;
}

// Double-precision copy of a face for repeated projections.
struct FlatFace {
  Vec origin;
  std::vector<Vec> basis;
  std::vector<std::pair<Vec, double>> facets;  // unit normal, offset
};

FlatFace flatten(const Polyhedron& p) {
  FlatFace f;
  f.origin = to_doubles(p.relative_interior_point());
  f.basis = orthonormal(p.span_basis());
  for (const auto& c : p.facets()) {
    Vec n(c.normal.size());
    for (std::size_t i = 0; i < n.size(); ++i) n[i] = to_double(c.normal[i]);
    const double len = norm(n);
    for (auto& x : n) x /= len;
    f.facets.emplace_back(std::move(n), to_double(c.offset) / len);
  }
  return f;
}

class SupportGeometry {
 public:
  explicit SupportGeometry(const TropicalCycle& c) {
    for (const auto& cell : c.cells())
      for (const auto& face : cell.cell.faces()) faces_.push_back(flatten(face));
  }

  double distance(std::span<const double> x) const {
    double best = std::numeric_limits<double>::infinity();
    const std::size_t n = x.size();
    Vec p(n);
    for (const auto& f : faces_) {
      for (std::size_t i = 0; i < n; ++i) p[i] = f.origin[i];
      for (const auto& b : f.basis) {
        double d = 0;
        for (std::size_t i = 0; i < n; ++i) d += (x[i] - f.origin[i]) * b[i];
        for (std::size_t i = 0; i < n; ++i) p[i] += d * b[i];
      }
      bool inside = true;
      for (const auto& [nv, off] : f.facets) {
        double s = -off;
        for (std::size_t i = 0; i < n; ++i) s += nv[i] * p[i];
        if (s < -1e-9) {
          inside = false;
          break;
        }
      }
      if (!inside) continue;
      double d2 = 0;
      for (std::size_t i = 0; i < n; ++i) d2 += (x[i] - p[i]) * (x[i] - p[i]);
      best = std::min(best, std::sqrt(d2));
    }
    return best;
  }

 private:
  std::vector<FlatFace> faces_;
};

void sample_face(const Polyhedron& face, double density, PointCloud& out) {
  const Vec origin = to_doubles(face.vertices().front());
  if (face.dim() == 0) {
    out.points.push_back(origin);
    return;
  }
  const double step = 1.0 / density;
  if (face.dim() == 1) {
    const Vec a = origin, b = to_doubles(face.vertices().back());
    Vec d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = b[i] - a[i];
    const double len = norm(d);
    const auto k = static_cast<long long>(std::floor(len / step));
    for (long long j = 1; j <= k; ++j) {
      const double t = j * step / len;
      if (t >= 1 - 1e-12) break;
      Vec p(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) p[i] = a[i] + t * d[i];
      out.points.push_back(std::move(p));
    }
    return;
  }
  // Interior lattice of pitch `step` in the face's affine hull, anchored at a vertex.
  const auto basis = orthonormal(face.span_basis());
  std::vector<double> lo(basis.size(), 0), hi(basis.size(), 0);
  for (const auto& v : face.vertices()) {
    const Vec w = to_doubles(v);
    for (std::size_t j = 0; j < basis.size(); ++j) {
      double c = 0;
      for (std::size_t i = 0; i < w.size(); ++i) c += (w[i] - origin[i]) * basis[j][i];
      lo[j] = std::min(lo[j], c);
      hi[j] = std::max(hi[j], c);
    }
  }
  std::vector<long long> idx(basis.size()), first(basis.size()), last(basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    first[j] = static_cast<long long>(std::ceil(lo[j] / step));
    last[j] = static_cast<long long>(std::floor(hi[j] / step));
    if (first[j] > last[j]) return;
  }
  idx = first;
  while (true) {
    Vec p = origin;
    for (std::size_t j = 0; j < basis.size(); ++j)
      for (std::size_t i = 0; i < p.size(); ++i) p[i] += idx[j] * step * basis[j][i];
    if (face.contains(std::span<const double>(p), 1e-12)) out.points.push_back(std::move(p));
    std::size_t j = 0;
    while (j < idx.size() && ++idx[j] > last[j]) idx[j] = first[j], ++j;
    if (j == idx.size()) break;
  }
}

void require_positive_m(int m) {
  if (m < 1) throw DomainError("m must be a positive integer");
}

// Coefficients in the free variable after fixing the other one. A leading
// coefficient that cancels to rounding level is dropped.
std::vector<std::complex<double>> slice(const ComplexPolynomial& f, std::size_t fixed, std::complex<double> z) {
  const std::size_t free = 1 - fixed;
  std::vector<std::complex<double>> c;
  std::vector<double> magnitude;
  for (const auto& [a, coeff] : f.terms()) {
    const auto k = a[free].convert_to<std::size_t>();
    if (c.size() <= k) c.resize(k + 1), magnitude.resize(k + 1);
    const auto t = coeff * std::pow(z, a[fixed].convert_to<int>());
    c[k] += t;
    magnitude[k] += std::abs(t);
  }
  while (!c.empty() && std::abs(c.back()) <= 1e-14 * magnitude[c.size() - 1]) c.pop_back();
  return c;
}

}  // namespace

void GridSpec::validate() const {
  if (lo.size() != hi.size() || lo.size() != resolution.size() || lo.empty())
    throw DomainError("grid bounds and resolution must have matching nonzero lengths");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!(lo[i] < hi[i])) throw DomainError("grid box needs lo < hi on every axis");
    if (resolution[i] < 2) throw DomainError("grid resolution must be >= 2");
  }
  if (!(delta >= 0)) throw DomainError("exclusion radius must be >= 0");
  if (phases < 1) throw DomainError("phase count must be >= 1");
}

ComplexCloud mth_roots(std::span<const std::complex<double>> a, int m, RootMode mode) {
  require_positive_m(m);
  for (const auto& x : a)
    if (x == 0.0) throw DomainError("m-th roots need nonzero components");
  const std::size_t n = a.size();
  ComplexCloud cloud;
  cloud.dim = n;
  cloud.m = m;
  if (mode.all) {
    if (std::pow(double(m), double(n)) > kRootBudget) throw DomainError("root count m^n exceeds 10^6");
    std::vector<int> idx(n, 0);
    while (true) {
      std::vector<std::complex<double>> p(n);
      for (std::size_t j = 0; j < n; ++j) p[j] = root_of(a[j], m, idx[j]);
      cloud.points.push_back(std::move(p));
      std::size_t j = n;
      while (j > 0 && ++idx[j - 1] == m) idx[--j] = 0;
      if (j == 0) break;
    }
    return cloud;
  }
  cloud.seed = mode.seed;
  std::mt19937_64 rng(mode.seed);
  std::uniform_int_distribution<int> pick(0, m - 1);
  for (std::size_t k = 0; k < mode.count; ++k) {
    std::vector<std::complex<double>> p(n);
    for (std::size_t j = 0; j < n; ++j) p[j] = root_of(a[j], m, pick(rng));
    cloud.points.push_back(std::move(p));
  }
  return cloud;
}

Integer weyl_sum(int m, std::span<const long long> nu) {
  require_positive_m(m);
  Integer s = 1;
  for (long long v : nu) {
    if (v % m != 0) return 0;
    s *= m;
  }
  return s;
}

std::complex<double> empirical_fourier(const ComplexCloud& cloud, std::span<const long long> nu) {
  if (nu.size() != cloud.dim) throw DomainError("frequency length does not match cloud dimension");
  if (cloud.points.empty()) throw DomainError("empty point cloud");
  std::complex<double> s = 0;
  for (const auto& p : cloud.points) {
    double phase = 0;
    for (std::size_t j = 0; j < nu.size(); ++j) phase += double(nu[j]) * std::arg(p[j]);
    s += std::polar(1.0, -phase);
  }
  return s / double(cloud.points.size());
}

double star_discrepancy(std::vector<double> xs) {
  if (xs.empty()) throw DomainError("discrepancy of no points");
  std::sort(xs.begin(), xs.end());
  const double n = double(xs.size());
  double d = 0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    d = std::max({d, (i + 1) / n - xs[i], xs[i] - i / n});
  return d;
}

std::vector<std::complex<double>> polynomial_roots(std::span<const std::complex<double>> coeffs) {
  using C = std::complex<double>;
  if (coeffs.size() < 2) throw DomainError("polynomial degree must be >= 1");
  if (coeffs.back() == 0.0) throw DomainError("leading coefficient must be nonzero");

  std::vector<C> roots;
  std::size_t low = 0;
  while (coeffs[low] == 0.0) {
    roots.push_back(0.0);
    ++low;
  }
  std::vector<C> p(coeffs.begin() + static_cast<std::ptrdiff_t>(low), coeffs.end());
  const std::size_t d = p.size() - 1;
  if (d == 0) return roots;
  if (d == 1) {
    roots.push_back(-p[0] / p[1]);
    return roots;
  }

  auto eval = [&](C z, C& dp) {
    C v = p[d];
    dp = 0;
    for (std::size_t k = d; k-- > 0;) {
      dp = dp * z + v;
      v = v * z + p[k];
    }
    return v;
  };
  auto backward_error = [&](C z) {
    C dp;
    double scale = 0, zk = 1;
    for (std::size_t k = 0; k <= d; ++k, zk *= std::abs(z)) scale += std::abs(p[k]) * zk;
    return std::abs(eval(z, dp)) / scale;
  };

  double radius = 0;
  for (std::size_t k = 0; k < d; ++k) radius = std::max(radius, std::abs(p[k] / p[d]));
  radius += 1;
  std::vector<C> z(d);
  for (std::size_t k = 0; k < d; ++k) z[k] = std::polar(radius, 2 * M_PI * k / d + 0.4);

  for (int it = 0; it < kAberthIterations; ++it) {
    double worst = 0;
    for (std::size_t k = 0; k < d; ++k) {
      C dp;
      const C v = eval(z[k], dp);
      if (v == 0.0) continue;
      const C ratio = v / dp;
      C repulsion = 0;
      for (std::size_t j = 0; j < d; ++j)
        if (j != k) repulsion += 1.0 / (z[k] - z[j]);
      const C step = ratio / (1.0 - ratio * repulsion);
      z[k] -= step;
      worst = std::max(worst, std::abs(step) / std::max(1.0, std::abs(z[k])));
    }
    if (worst < kAberthTol) break;
  }

  roots.insert(roots.end(), z.begin(), z.end());
  for (const auto& r : z)
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag()) || backward_error(r) > kResidualTol)
      throw RootFindingError("root finder did not converge", roots);
  return roots;
}

PointCloud amoeba_sample(const ComplexPolynomial& f, const GridSpec& grid, int m, double phase_offset) {
  require_positive_m(m);
  if (f.ambient_dim() != 2) throw DomainError("amoeba sampling needs a polynomial in 2 variables");
  grid.validate();
  if (grid.dim() != 2) throw DomainError("amoeba grid must be 2-dimensional");
  bool uses[2] = {false, false};
  for (const auto& [a, c] : f.terms())
    for (int j = 0; j < 2; ++j) uses[j] = uses[j] || a[j] != 0;
  if (!uses[0] || !uses[1]) throw DomainError("polynomial must depend on both variables");

  PointCloud cloud;
  cloud.dim = 2;
  cloud.m = m;
  const double scale = 1.0 / m;
  for (std::size_t fixed = 0; fixed < 2; ++fixed) {
    for (int i = 0; i < grid.resolution[fixed]; ++i) {
      const double s = m * (grid.lo[fixed] + i * grid.pitch(fixed));
      for (int k = 0; k < grid.phases; ++k) {
        const double phi = phase_offset + 2 * M_PI * k / grid.phases;
        const std::complex<double> zf = std::exp(std::complex<double>(-s, phi));
        const auto c = slice(f, fixed, zf);
        if (c.size() < 2) continue;
        for (const auto& r : polynomial_roots(c)) {
          if (r == 0.0 || !std::isfinite(std::abs(r))) continue;
          std::vector<double> p(2);
          p[fixed] = scale * log_coordinate(zf);
          p[1 - fixed] = scale * log_coordinate(r);
          cloud.points.push_back(std::move(p));
        }
      }
    }
  }
  return cloud;
}

PointCloud sample_tropical_support(const TropicalCycle& c, std::span<const double> lo, std::span<const double> hi,
                                   double density) {
  if (!(density > 0)) throw DomainError("sampling density must be positive");
  const std::size_t n = c.ambient_dim();
  if (lo.size() != n || hi.size() != n) throw DomainError("box dimension does not match cycle");
  RatVector rlo, rhi;
  for (std::size_t i = 0; i < n; ++i) {
    rlo.push_back(rational_from_double(lo[i]));
    rhi.push_back(rational_from_double(hi[i]));
  }
  const Polyhedron box = Polyhedron::box(rlo, rhi);
  PointCloud cloud;
  cloud.dim = n;
  for (const auto& cell : c.cells()) {
    const Polyhedron clipped = cell.cell.intersect(box);
    if (clipped.is_empty()) continue;
    for (const auto& face : clipped.faces()) sample_face(face, density, cloud);
  }
  return cloud;
}

PointCloud clip(const PointCloud& cloud, std::span<const double> lo, std::span<const double> hi) {
  PointCloud out = cloud;
  out.points.clear();
  for (const auto& p : cloud.points) {
    bool inside = true;
    for (std::size_t i = 0; i < p.size(); ++i) inside = inside && p[i] >= lo[i] && p[i] <= hi[i];
    if (inside) out.points.push_back(p);
  }
  return out;
}

double directed_hausdorff(const PointCloud& a, const PointCloud& b) {
  if (a.points.empty() || b.points.empty()) throw DomainError("Hausdorff distance of an empty cloud");
  if (a.dim != b.dim) throw DomainError("point clouds differ in dimension");
  double worst = 0;  // squared
  for (const auto& p : a.points) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : b.points) {
      double d = 0;
      for (std::size_t i = 0; i < p.size(); ++i) d += (p[i] - q[i]) * (p[i] - q[i]);
      if (d < best) {
        best = d;
        if (best <= worst) break;
      }
    }
    worst = std::max(worst, best);
  }
  return std::sqrt(worst);
}

double hausdorff(const PointCloud& a, const PointCloud& b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double distance_to_support(const TropicalCycle& c, std::span<const double> x) {
  if (x.size() != c.ambient_dim()) throw DomainError("point dimension does not match cycle");
  return SupportGeometry(c).distance(x);
}

double pullback_log_modulus(const ComplexPolynomial& f, int m, std::span<const double> x,
                            std::span<const double> theta) {
  require_positive_m(m);
  const std::size_t n = f.ambient_dim();
  if (x.size() != n || theta.size() != n) throw DomainError("point dimension does not match polynomial");
  // log|c_α z^{mα}| and arg, then a shifted sum
  std::vector<std::pair<double, double>> terms;
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& [a, c] : f.terms()) {
    double lm = std::log(std::abs(c)), ph = std::arg(c);
    for (std::size_t j = 0; j < n; ++j) {
      const double k = a[j].convert_to<double>();
      lm -= m * k * x[j];
      ph += m * k * theta[j];
    }
    terms.emplace_back(lm, ph);
    top = std::max(top, lm);
  }
  std::complex<double> s = 0;
  for (const auto& [lm, ph] : terms) s += std::polar(std::exp(lm - top), ph);
  return (top + std::log(std::abs(s))) / m;
}

DequantizationError dequantization_error(const ComplexPolynomial& f, int m, const GridSpec& grid,
                                         std::uint64_t seed) {
  require_positive_m(m);
  grid.validate();
  const std::size_t n = f.ambient_dim();
  if (grid.dim() != n) throw DomainError("grid dimension does not match polynomial");
  const TropicalPolynomial q = tropicalize_poly(f);
  const SupportGeometry support(tropical_hypersurface(q));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0, 2 * M_PI);
  DequantizationError out;
  double total = 0;
  std::vector<int> idx(n, 0);
  std::vector<double> x(n), theta(n);
  while (true) {
    for (std::size_t j = 0; j < n; ++j) x[j] = grid.lo[j] + idx[j] * grid.pitch(j);
    if (support.distance(x) >= grid.delta) {
      double value;
      while (true) {
        for (auto& t : theta) t = angle(rng);
        // |f(z^m)| relative to its largest term
        const double lm = pullback_log_modulus(f, m, x, theta);
        double top = -std::numeric_limits<double>::infinity();
        for (const auto& [a, c] : f.terms()) {
          double l = std::log(std::abs(c));
          for (std::size_t j = 0; j < n; ++j) l -= m * a[j].convert_to<double>() * x[j];
          top = std::max(top, l);
        }
        if (std::isfinite(lm) && m * lm - top > std::log(kVanishingTol)) {
          value = lm;
          break;
        }
        if (++out.resamples > kResampleBudget) throw DomainError("f(z^m) vanished too often; resample budget exhausted");
      }
      const double err = std::abs(value - eval_tropical(q, x).value);
      out.l_inf = std::max(out.l_inf, err);
      total += err;
      ++out.points;
    }
    std::size_t j = n;
    while (j > 0 && ++idx[j - 1] == grid.resolution[j - 1]) idx[--j] = 0;
    if (j == 0) break;
  }
  if (out.points == 0) throw DomainError("no grid points outside the exclusion radius");
  out.l1 = total / double(out.points);
  return out;
}

void fit_rate(ConvergenceReport& report) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = double(report.ms.size());
  for (std::size_t i = 0; i < report.ms.size(); ++i) {
    if (!(report.errors[i] > 0)) throw DomainError("rate fit needs positive errors");
    const double lx = std::log(double(report.ms[i])), ly = std::log(report.errors[i]);
    sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
  }
  const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  report.rho = -slope;
  report.C = std::exp((sy - slope * sx) / k);
}

ConvergenceReport convergence_report(const std::string& metric, const std::vector<int>& ms,
                                     const ExperimentConfig& config) {
  if (metric != "hausdorff-to-tropical" && metric != "dequantization" && metric != "equidistribution-discrepancy")
    throw DomainError("unknown metric: " + metric);
  if (ms.size() < 2) throw DomainError("convergence report needs at least two values of m");
  for (std::size_t i = 0; i < ms.size(); ++i) {
    require_positive_m(ms[i]);
    if (i > 0 && ms[i] <= ms[i - 1]) throw DomainError("values of m must be strictly increasing");
  }
  ConvergenceReport report;
  report.ms = ms;
  report.seed = config.seed;

  if (metric == "equidistribution-discrepancy") {
    const std::complex<double> one[] = {1.0};
    for (int m : ms) {
      std::vector<double> xs;
      for (const auto& p : mth_roots(one, m).points) {
        double t = std::arg(p[0]) / (2 * M_PI);
        if (t < 0) t += 1;
        xs.push_back(t);
      }
      report.errors.push_back(star_discrepancy(std::move(xs)));
    }
  } else {
    if (!config.f) throw DomainError(metric + " needs a polynomial");
    const ComplexPolynomial& f = *config.f;
    if (metric == "dequantization") {
      for (int m : ms) report.errors.push_back(dequantization_error(f, m, config.grid, config.seed).l_inf);
    } else {
      config.grid.validate();
      const auto trop = sample_tropical_support(tropical_hypersurface(tropicalize_poly(f)), config.grid.lo,
                                                config.grid.hi, config.density);
      if (trop.points.empty()) throw DomainError("tropical hypersurface misses the box");
      for (int m : ms) {
        const auto amoeba = clip(amoeba_sample(f, config.grid, m), config.grid.lo, config.grid.hi);
        report.errors.push_back(hausdorff(amoeba, trop));
      }
    }
  }
  fit_rate(report);
  return report;
}

}  // namespace tropdyn

#include "tropdyn/svg.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace tropdyn {

namespace {

constexpr double kSize = 480, kMargin = 40;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string header() {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
     << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  return os.str();
}

}  // namespace

std::string scatter_svg(const std::vector<ScatterLayer>& layers, std::span<const double> lo,
                        std::span<const double> hi) {
  if (lo.size() != 2 || hi.size() != 2) throw DomainError("scatter plots need a planar box");
  const double w = kSize - 2 * kMargin;
  auto sx = [&](double x) { return kMargin + (x - lo[0]) / (hi[0] - lo[0]) * w; };
  auto sy = [&](double y) { return kSize - kMargin - (y - lo[1]) / (hi[1] - lo[1]) * w; };
  std::ostringstream os;
  os << header();
  os << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << w << "\" height=\"" << w
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (const auto& layer : layers) {
    if (layer.cloud->dim != 2) throw DomainError("scatter plots need planar clouds");
    os << "<g fill=\"" << layer.color << "\">\n";
    for (const auto& p : layer.cloud->points) {
      if (p[0] < lo[0] || p[0] > hi[0] || p[1] < lo[1] || p[1] > hi[1]) continue;
      os << "<circle cx=\"" << fmt(sx(p[0])) << "\" cy=\"" << fmt(sy(p[1])) << "\" r=\"" << fmt(layer.radius)
         << "\"/>\n";
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string loglog_svg(const ConvergenceReport& report) {
  if (report.ms.empty()) throw DomainError("empty convergence report");
  double x0 = std::log(double(report.ms.front())), x1 = std::log(double(report.ms.back()));
  double y0 = 1e300, y1 = -1e300;
  for (double e : report.errors) {
    if (!(e > 0)) continue;
    y0 = std::min(y0, std::log(e));
    y1 = std::max(y1, std::log(e));
  }
  if (y0 > y1) y0 = -1, y1 = 0;
  if (x1 - x0 < 1e-12) x1 = x0 + 1;
  if (y1 - y0 < 1e-12) y1 = y0 + 1;
  const double w = kSize - 2 * kMargin;
  auto sx = [&](double x) { return kMargin + (x - x0) / (x1 - x0) * w; };
  auto sy = [&](double y) { return kSize - kMargin - (y - y0) / (y1 - y0) * w; };
  std::ostringstream os;
  os << header();
  os << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << w << "\" height=\"" << w
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  if (report.C > 0) {
    auto fit = [&](double lx) { return std::log(report.C) - report.rho * lx; };
    os << "<line x1=\"" << fmt(sx(x0)) << "\" y1=\"" << fmt(sy(fit(x0))) << "\" x2=\"" << fmt(sx(x1)) << "\" y2=\""
       << fmt(sy(fit(x1))) << "\" stroke=\"steelblue\"/>\n";
  }
  os << "<g fill=\"black\">\n";
  for (std::size_t i = 0; i < report.ms.size(); ++i) {
    if (!(report.errors[i] > 0)) continue;
    os << "<circle cx=\"" << fmt(sx(std::log(double(report.ms[i])))) << "\" cy=\""
       << fmt(sy(std::log(report.errors[i]))) << "\" r=\"3\"/>\n";
  }
  os << "</g>\n<text x=\"" << kMargin << "\" y=\"" << kMargin - 10 << "\" font-size=\"12\">rho = " << fmt(report.rho)
     << ", C = " << fmt(report.C) << "</text>\n</svg>\n";
  return os.str();
}

}  // namespace tropdyn

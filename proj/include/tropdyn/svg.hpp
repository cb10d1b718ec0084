#pragma once

// Minimal SVG figures for point clouds and convergence plots.

#include "tropdyn/dynamics.hpp"

#include <string>
#include <vector>

namespace tropdyn {

struct ScatterLayer {
  const PointCloud* cloud;
  std::string color;
  double radius = 1.0;
};

/// Planar scatter plot of the layers over the box [lo, hi].
std::string scatter_svg(const std::vector<ScatterLayer>& layers, std::span<const double> lo,
                        std::span<const double> hi);

/// log-log plot of errors against m with the fitted line C m^{-rho}.
std::string loglog_svg(const ConvergenceReport& report);

}  // namespace tropdyn

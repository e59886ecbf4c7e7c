#pragma once

#include "moebius/moebius_group.hpp"

namespace moebius {

/// Point of S^1 x Delta in coordinates (t, rho, theta); the angles are
/// reduced to [0, 2 pi).
class ProductPoint {
public:
  ProductPoint() = default;
  ProductPoint(double t, double rho, double theta);

  [[nodiscard]] double t() const { return t_; }
  [[nodiscard]] double rho() const { return rho_; }
  [[nodiscard]] double theta() const { return theta_; }

private:
  double t_ = 0.0;
  double rho_ = 0.0;
  double theta_ = 0.0;
};

/// Reduces an angle to [0, 2 pi).
double reduce_angle(double angle);

/// Diagonal product metric dt^2 + E(rho) drho^2 + G(rho) dtheta^2 with
/// E = 2 / (1 - rho^2) and G = 2 rho^2 / (1 - rho^2).
struct MetricTensor {
  double g_tt = 1.0;
  double g_rr = 2.0;
  double g_thth = 0.0;

  /// True at the origin, where the angular coefficient vanishes.
  [[nodiscard]] bool polar_degenerate() const { return g_thth == 0.0; }
};

MetricTensor metric_tensor(const ProductPoint& p);
MetricTensor metric_tensor(double rho);

/// Nonzero Christoffel symbols of the disc factor in polar coordinates.
struct ChristoffelSymbols {
  double rho_rhorho;      // Gamma^rho_{rho rho}
  double rho_thetatheta;  // Gamma^rho_{theta theta}
  double theta_rhotheta;  // Gamma^theta_{rho theta}
};

/// Throws DegenerateChartError at rho = 0.
ChristoffelSymbols christoffel(double rho);

double gaussian_curvature(double rho);

/// Curvature of the disc factor from the orthogonal-metric formula
/// K = -(1 / (2 sqrt(EG))) d/drho (G' / sqrt(EG)), with both derivatives
/// replaced by central differences of step h. Requires h < rho / 2 and
/// rho + 2h < 1.
double curvature_numeric(double rho, double h);

/// Metric length of the radial segment [r0, r1]: sqrt(2) (asin r1 - asin r0).
double radial_length(double r0, double r1);

/// Length of the inextendible radial ray from the origin, pi / sqrt(2).
double radial_ray_length();

/// The isometry (t, rho, theta) -> e^{it} T_{rho e^{i theta}} and its inverse.
/// to_product sets theta = 0 when alpha = 0.
MoebiusMap to_moebius(const ProductPoint& p);
ProductPoint to_product(const MoebiusMap& g);

}  // namespace moebius

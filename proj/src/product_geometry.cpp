#include "moebius/product_geometry.hpp"

#include <cmath>
#include <numbers>

#include "moebius/errors.hpp"

namespace moebius {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double radial_coefficient(double rho) { return 2.0 / (1.0 - rho * rho); }
double angular_coefficient(double rho) { return 2.0 * rho * rho / (1.0 - rho * rho); }

void require_disc_radius(double rho, const char* where) {
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw DomainError(std::string(where) + ": rho must lie in [0, 1)");
  }
}

}  // namespace

double reduce_angle(double angle) {
  double r = std::fmod(angle, two_pi);
  if (r < 0.0) r += two_pi;
  // fmod of a tiny negative number can round up to exactly 2 pi
  if (r >= two_pi) r = 0.0;
  return r;
}

ProductPoint::ProductPoint(double t, double rho, double theta)
    : t_(reduce_angle(t)), rho_(rho), theta_(reduce_angle(theta)) {
  require_disc_radius(rho, "ProductPoint");
}

MetricTensor metric_tensor(double rho) {
  require_disc_radius(rho, "metric_tensor");
  return {1.0, radial_coefficient(rho), angular_coefficient(rho)};
}

MetricTensor metric_tensor(const ProductPoint& p) { return metric_tensor(p.rho()); }

ChristoffelSymbols christoffel(double rho) {
  require_disc_radius(rho, "christoffel");
  if (rho == 0.0) throw DegenerateChartError("christoffel: polar chart is degenerate at rho = 0");
  const double q = 1.0 - rho * rho;
  // E'/(2E), -G'/(2E), G'/(2G) with E' = G' = 4 rho / q^2
  return {rho / q, -rho / q, 1.0 / (rho * q)};
}

double gaussian_curvature(double rho) {
  require_disc_radius(rho, "gaussian_curvature");
  return -1.0 / (1.0 - rho * rho);
}

double curvature_numeric(double rho, double h) {
  if (!(h > 0.0 && h < rho / 2.0 && rho + 2.0 * h < 1.0)) {
    throw DomainError("curvature_numeric: step too large for the stencil");
  }
  const auto root_eg = [](double r) {
    return std::sqrt(radial_coefficient(r) * angular_coefficient(r));
  };
  // Compact stencil: G' / sqrt(EG) at rho +- h/2 from one-step differences of G.
  const double g_minus = angular_coefficient(rho - h);
  const double g_mid = angular_coefficient(rho);
  const double g_plus = angular_coefficient(rho + h);
  const double flux_plus = (g_plus - g_mid) / h / root_eg(rho + 0.5 * h);
  const double flux_minus = (g_mid - g_minus) / h / root_eg(rho - 0.5 * h);
  return -(flux_plus - flux_minus) / h / (2.0 * root_eg(rho));
}

double radial_length(double r0, double r1) {
  if (!(0.0 <= r0 && r0 <= r1 && r1 < 1.0)) {
    throw DomainError("radial_length: requires 0 <= r0 <= r1 < 1");
  }
  return std::numbers::sqrt2 * (std::asin(r1) - std::asin(r0));
}

double radial_ray_length() { return std::numbers::pi / std::numbers::sqrt2; }

MoebiusMap to_moebius(const ProductPoint& p) {
  return {UnitComplex::from_angle(p.t()), DiscPoint::polar(p.rho(), p.theta())};
}

ProductPoint to_product(const MoebiusMap& g) {
  const Complex a = g.alpha().value();
  const double rho = std::abs(a);
  const double theta = rho > 0.0 ? std::arg(a) : 0.0;
  return {g.u().angle(), rho, theta};
}

}  // namespace moebius

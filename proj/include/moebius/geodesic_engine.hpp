#pragma once

#include <string>
#include <vector>

#include "moebius/kinetic_metric.hpp"
#include "moebius/product_geometry.hpp"

namespace moebius {

/// Integration stops once rho exceeds this radius.
inline constexpr double boundary_stop_rho = 1.0 - 1e-6;
/// Below this radius the flow is integrated in the Cartesian chart.
inline constexpr double cartesian_chart_radius = 0.05;
inline constexpr double max_integration_step = 1e-3;

struct GeodesicState {
  ProductPoint point;
  ProductTangent velocity;
};

/// Time derivative of a state: the velocity and the geodesic acceleration.
struct StateDerivative {
  ProductTangent velocity;
  ProductTangent acceleration;
};

double speed_squared(const GeodesicState& state);
/// Speed squared of the disc factor alone.
double disc_speed_squared(const GeodesicState& state);

/// Angular momentum G(rho) dtheta/ds, conserved along geodesics.
double clairaut_constant(const GeodesicState& state);

/// Geodesic equation of the product metric in polar coordinates. Below
/// cartesian_chart_radius the acceleration is computed in the Cartesian chart
/// and mapped back. Throws DegenerateChartError at rho = 0.
StateDerivative geodesic_rhs(const GeodesicState& state);

/// One classical Runge-Kutta step of size h (negative h integrates backward).
GeodesicState rk4_step(const GeodesicState& state, double h);

struct PathSample {
  double s = 0.0;
  GeodesicState state;
  // Continuous lifts of the two angles (not reduced mod 2 pi).
  double t_lift = 0.0;
  double theta_lift = 0.0;
};

struct GeodesicPath {
  std::vector<PathSample> samples;
  double step = 0.0;
  /// Set when integration stopped at boundary_stop_rho. The last sample then
  /// sits on the stopping radius and follows a partial step.
  bool boundary_reached = false;
};

/// Fixed-step RK4 over parameter length `length`. Requires
/// 0 < step <= max_integration_step and length > 0.
GeodesicPath integrate(const GeodesicState& initial, double length, double step);

/// Minimum radius c / sqrt(2 v^2 + c^2) of a geodesic with angular momentum c
/// and disc speed v.
double turning_radius(double c, double v);

enum class RadialDirection { inward, outward };

/// State at (rho0, theta0) with angular momentum c, disc speed v and circle
/// speed dt. Requires rho0 >= turning_radius(c, v).
GeodesicState clairaut_state(double c, double v, double rho0, double theta0 = 0.0, double dt = 0.0,
                             RadialDirection direction = RadialDirection::inward);

/// The geodesic with momentum c and disc speed v that touches the circle
/// rho = turning_radius(c, v) at angle theta0, integrated in both directions
/// until it reaches the boundary. The tangency point is at s = 0.
GeodesicPath tangency_arc(double c, double v, double theta0, double step);

/// Minimum of rho along the path, refined by a parabola through the
/// smallest sample and its neighbours.
double minimum_rho(const GeodesicPath& path);

/// The two candidate trajectory equations for rho(theta), rho' = d rho / d theta:
///   first_integral: (rho')^2 = rho^2 ((2 lambda + 1) rho^2 - 1) / (1 - rho^2)
///   reciprocal:     (rho')^2 = (mu + rho^2) / ((1 - rho^2) rho^2)
enum class TrajectoryForm { first_integral, reciprocal };

std::string to_string(TrajectoryForm form);

struct TrajectoryFit {
  TrajectoryForm form = TrajectoryForm::first_integral;
  double constant = 0.0;  // lambda or mu
  double max_residual = 0.0;
  std::size_t samples_used = 0;
};

/// Samples closer than this to the circle are left out of the residual.
inline constexpr double residual_boundary_margin = 1e-4;

/// Least-squares fit of the form's constant along the path, with rho'
/// estimated by fourth-order central differences. Residuals are those of the
/// equation multiplied through by its denominator. Throws NotApplicableError
/// for radial paths or when dtheta/ds changes sign.
TrajectoryFit trajectory_residual(const GeodesicPath& path, TrajectoryForm form);

struct TrajectoryVerdict {
  TrajectoryFit first_integral;
  TrajectoryFit reciprocal;
  bool decisive = false;
  std::string summary;
};

/// Fits both forms and decides which one the path satisfies: a form matches
/// when its residual is below `match_tol` while the other exceeds `reject_tol`.
TrajectoryVerdict adjudicate_trajectory(const GeodesicPath& path, double match_tol = 1e-6,
                                        double reject_tol = 1e-2);

struct HypocycloidFit {
  double rolling_radius = 0.0;
  double phase = 0.0;
  double rho_min = 0.0;
  double max_deviation = 0.0;
};

/// Point of the fitted hypocycloid
/// e^{i phase} ((1-k) e^{i phi} + k e^{-i (1-k) phi / k}).
Complex hypocycloid_point(double k, double phase, double phi);

/// Rolling radius k = (1 - rho_min) / 2 with the curve rotated so its
/// closest approach lines up with the path's. max_deviation is the largest
/// distance from a path point to the arch phi in [0, 2 pi k]. Throws
/// NotApplicableError unless the path has an interior rho minimum and both
/// ends within 1e-2 of the circle.
HypocycloidFit hypocycloid_fit(const GeodesicPath& path);

}  // namespace moebius

#include "moebius/geodesic_engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "moebius/errors.hpp"

namespace moebius {

namespace {

constexpr double pi = std::numbers::pi;

// Phase-space vectors: polar (t, rho, theta, dt, drho, dtheta) with lifted
// angles, or Cartesian (t, x, y, dt, dx, dy).
using Vec6 = std::array<double, 6>;

Vec6 axpy(const Vec6& y, double a, const Vec6& k) {
  Vec6 out;
  for (std::size_t i = 0; i < 6; ++i) out[i] = y[i] + a * k[i];
  return out;
}

template <class Rhs>
Vec6 rk4(const Vec6& y, double h, Rhs rhs) {
  const Vec6 k1 = rhs(y);
  const Vec6 k2 = rhs(axpy(y, 0.5 * h, k1));
  const Vec6 k3 = rhs(axpy(y, 0.5 * h, k2));
  const Vec6 k4 = rhs(axpy(y, h, k3));
  Vec6 out;
  for (std::size_t i = 0; i < 6; ++i) {
    out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

Vec6 polar_rhs(const Vec6& y) {
  const double rho = y[1];
  const double drho = y[4];
  const double dtheta = y[5];
  const double q = 1.0 - rho * rho;
  return {y[3], drho, dtheta, 0.0, (rho / q) * (dtheta * dtheta - drho * drho),
          -2.0 * drho * dtheta / (rho * q)};
}

Vec6 cartesian_rhs(const Vec6& y) {
  const double x = y[1], yy = y[2], dx = y[4], dy = y[5];
  const double q = 1.0 - x * x - yy * yy;
  const double radial = (x * dx + yy * dy) / q;
  const double speed2 = (dx * dx + dy * dy) / q;
  return {y[3], dx, dy, 0.0, -2.0 * radial * dx + speed2 * x, -2.0 * radial * dy + speed2 * yy};
}

Vec6 polar_to_cartesian(const Vec6& p) {
  const double c = std::cos(p[2]), s = std::sin(p[2]);
  return {p[0], p[1] * c, p[1] * s, p[3], p[4] * c - p[1] * p[5] * s, p[4] * s + p[1] * p[5] * c};
}

Vec6 cartesian_to_polar(const Vec6& c, double theta_hint) {
  const double rho = std::hypot(c[1], c[2]);
  if (rho == 0.0) {
    // Exactly at the origin: keep the previous direction.
    const double speed = std::hypot(c[4], c[5]);
    const double dir = speed > 0.0 ? std::atan2(c[5], c[4]) : theta_hint;
    return {c[0], 0.0, theta_hint + std::remainder(dir - theta_hint, 2.0 * pi), c[3], speed, 0.0};
  }
  const double raw = std::atan2(c[2], c[1]);
  const double theta = theta_hint + std::remainder(raw - theta_hint, 2.0 * pi);
  return {c[0], rho, theta, c[3], (c[1] * c[4] + c[2] * c[5]) / rho,
          (c[1] * c[5] - c[2] * c[4]) / (rho * rho)};
}

Vec6 step_any_chart(const Vec6& y, double h) {
  if (y[1] < cartesian_chart_radius) {
    return cartesian_to_polar(rk4(polar_to_cartesian(y), h, cartesian_rhs), y[2]);
  }
  return rk4(y, h, polar_rhs);
}

Vec6 to_phase(const GeodesicState& s) {
  return {s.point.t(),     s.point.rho(),      s.point.theta(),
          s.velocity.dt, s.velocity.drho, s.velocity.dtheta};
}

GeodesicState to_state(const Vec6& y) {
  return {ProductPoint{y[0], y[1], y[2]}, ProductTangent{y[3], y[4], y[5]}};
}

PathSample to_sample(double s, const Vec6& y) { return {s, to_state(y), y[0], y[2]}; }

bool inside_stop(const Vec6& y) { return std::isfinite(y[1]) && y[1] <= boundary_stop_rho; }

void require_interior(const GeodesicState& state, const char* where) {
  if (!(state.point.rho() < boundary_stop_rho)) {
    throw DomainError(std::string(where) + ": state is outside the interior");
  }
}

ProductTangent negate(const ProductTangent& v) { return {-v.dt, -v.drho, -v.dtheta}; }

}  // namespace

double speed_squared(const GeodesicState& state) {
  return state.velocity.dt * state.velocity.dt + disc_speed_squared(state);
}

double disc_speed_squared(const GeodesicState& state) {
  const MetricTensor m = metric_tensor(state.point);
  const auto& v = state.velocity;
  return m.g_rr * v.drho * v.drho + m.g_thth * v.dtheta * v.dtheta;
}

double clairaut_constant(const GeodesicState& state) {
  return metric_tensor(state.point).g_thth * state.velocity.dtheta;
}

StateDerivative geodesic_rhs(const GeodesicState& state) {
  require_interior(state, "geodesic_rhs");
  const double rho = state.point.rho();
  if (rho == 0.0) {
    throw DegenerateChartError("geodesic_rhs: polar chart is degenerate at rho = 0");
  }
  const Vec6 y = to_phase(state);
  if (rho >= cartesian_chart_radius) {
    const Vec6 d = polar_rhs(y);
    return {state.velocity, {d[3], d[4], d[5]}};
  }
  const Vec6 c = polar_to_cartesian(y);
  const Vec6 d = cartesian_rhs(c);
  const double drho = y[4], dtheta = y[5];
  const double ddrho =
      (c[4] * c[4] + c[5] * c[5] + c[1] * d[4] + c[2] * d[5]) / rho - drho * drho / rho;
  const double ddtheta = (c[1] * d[5] - c[2] * d[4]) / (rho * rho) - 2.0 * drho * dtheta / rho;
  return {state.velocity, {0.0, ddrho, ddtheta}};
}

GeodesicState rk4_step(const GeodesicState& state, double h) {
  require_interior(state, "rk4_step");
  return to_state(step_any_chart(to_phase(state), h));
}

GeodesicPath integrate(const GeodesicState& initial, double length, double step) {
  if (!(step > 0.0 && step <= max_integration_step)) {
    throw DomainError("integrate: step must lie in (0, 1e-3]");
  }
  if (!(length > 0.0)) throw DomainError("integrate: length must be positive");
  require_interior(initial, "integrate");

  GeodesicPath path;
  path.step = step;
  const auto full_steps = static_cast<long long>(std::floor(length / step + 1e-9));
  const double remainder = length - static_cast<double>(full_steps) * step;
  path.samples.reserve(static_cast<std::size_t>(full_steps) + 2);

  Vec6 y = to_phase(initial);
  double s = 0.0;
  path.samples.push_back(to_sample(s, y));

  const auto advance = [&](double h) {
    const Vec6 next = step_any_chart(y, h);
    if (inside_stop(next)) {
      y = next;
      s += h;
      path.samples.push_back(to_sample(s, y));
      return true;
    }
    // Bisect the step size for the crossing of the stopping radius.
    double lo = 0.0, hi = h;
    Vec6 at_lo = y;
    for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
      const double mid = 0.5 * (lo + hi);
      const Vec6 trial = step_any_chart(y, mid);
      if (inside_stop(trial)) {
        lo = mid;
        at_lo = trial;
      } else {
        hi = mid;
      }
    }
    y = at_lo;
    s += lo;
    path.samples.push_back(to_sample(s, y));
    path.boundary_reached = true;
    return false;
  };

  for (long long k = 0; k < full_steps; ++k) {
    if (!advance(step)) return path;
  }
  if (remainder > 1e-12 * step) advance(remainder);
  return path;
}

double turning_radius(double c, double v) {
  if (!(v > 0.0)) throw DomainError("turning_radius: disc speed must be positive");
  return std::abs(c) / std::sqrt(2.0 * v * v + c * c);
}

GeodesicState clairaut_state(double c, double v, double rho0, double theta0, double dt,
                             RadialDirection direction) {
  const double rmin = turning_radius(c, v);
  if (!(rho0 >= rmin && rho0 < boundary_stop_rho)) {
    throw DomainError("clairaut_state: rho0 must lie between the turning radius and the boundary");
  }
  const MetricTensor m = metric_tensor(rho0);
  const double dtheta = c == 0.0 ? 0.0 : c / m.g_thth;
  const double radial_energy = std::max(0.0, v * v - (c == 0.0 ? 0.0 : c * c / m.g_thth));
  const double sign = direction == RadialDirection::inward ? -1.0 : 1.0;
  const double drho = sign * std::sqrt(radial_energy / m.g_rr);
  return {ProductPoint{0.0, rho0, theta0}, ProductTangent{dt, drho, dtheta}};
}

GeodesicPath tangency_arc(double c, double v, double theta0, double step) {
  const double rmin = turning_radius(c, v);
  GeodesicState start;
  if (rmin == 0.0) {
    start = {ProductPoint{0.0, 0.0, theta0},
             ProductTangent{0.0, v / std::sqrt(metric_tensor(0.0).g_rr), 0.0}};
  } else {
    start = clairaut_state(c, v, rmin, theta0, 0.0, RadialDirection::outward);
    start.velocity.drho = 0.0;
  }
  // Any arc is shorter than the diameter, 2 pi / sqrt(2) in metric length.
  const double budget = 4.0 / v;
  const GeodesicPath forward = integrate(start, budget, step);
  const GeodesicPath backward =
      integrate({start.point, negate(start.velocity)}, budget, step);
  if (!forward.boundary_reached || !backward.boundary_reached) {
    throw NotApplicableError("tangency_arc: geodesic did not reach the boundary");
  }

  GeodesicPath arc;
  arc.step = step;
  arc.boundary_reached = true;
  arc.samples.reserve(forward.samples.size() + backward.samples.size());
  for (auto it = backward.samples.rbegin(); it != std::prev(backward.samples.rend()); ++it) {
    PathSample sample = *it;
    sample.s = -sample.s;
    sample.state.velocity = negate(sample.state.velocity);
    arc.samples.push_back(sample);
  }
  arc.samples.insert(arc.samples.end(), forward.samples.begin(), forward.samples.end());
  return arc;
}

double minimum_rho(const GeodesicPath& path) {
  if (path.samples.empty()) throw DomainError("minimum_rho: empty path");
  const auto& smp = path.samples;
  const auto it = std::min_element(smp.begin(), smp.end(), [](const auto& a, const auto& b) {
    return a.state.point.rho() < b.state.point.rho();
  });
  const auto i = static_cast<std::size_t>(it - smp.begin());
  const double b = smp[i].state.point.rho();
  if (i == 0 || i + 1 == smp.size()) return b;
  const double a = smp[i - 1].state.point.rho();
  const double c = smp[i + 1].state.point.rho();
  const double curvature = a - 2.0 * b + c;
  if (!(curvature > 0.0)) return b;
  return b - (c - a) * (c - a) / (8.0 * curvature);
}

std::string to_string(TrajectoryForm form) {
  return form == TrajectoryForm::first_integral ? "first_integral" : "reciprocal";
}

TrajectoryFit trajectory_residual(const GeodesicPath& path, TrajectoryForm form) {
  const auto& smp = path.samples;
  const double h = path.step;
  double max_dtheta = 0.0;
  for (const auto& sample : smp) {
    max_dtheta = std::max(max_dtheta, std::abs(sample.state.velocity.dtheta));
  }
  if (max_dtheta < 1e-12) {
    throw NotApplicableError("trajectory_residual: radial path has no rho(theta) description");
  }

  std::vector<double> ys, basis;
  int orientation = 0;
  for (std::size_t i = 2; i + 2 < smp.size(); ++i) {
    if (std::abs(smp[i + 2].s - smp[i - 2].s - 4.0 * h) > 1e-9 * h) continue;
    const double rho = smp[i].state.point.rho();
    if (rho > 1.0 - residual_boundary_margin) continue;
    const auto diff = [&](auto value) {
      return (-value(smp[i + 2]) + 8.0 * value(smp[i + 1]) - 8.0 * value(smp[i - 1]) +
              value(smp[i - 2])) /
             (12.0 * h);
    };
    const double drho = diff([](const PathSample& p) { return p.state.point.rho(); });
    const double dtheta = diff([](const PathSample& p) { return p.theta_lift; });
    const int sign = dtheta > 0.0 ? 1 : -1;
    if (orientation == 0) orientation = sign;
    if (sign != orientation || dtheta == 0.0) {
      throw NotApplicableError("trajectory_residual: theta is not monotone along the path");
    }
    const double slope = drho / dtheta;
    const double q = 1.0 - rho * rho;
    const double r2 = rho * rho;
    if (form == TrajectoryForm::first_integral) {
      ys.push_back(q * slope * slope + r2 - r2 * r2);
      basis.push_back(2.0 * r2 * r2);
    } else {
      ys.push_back(q * r2 * slope * slope - r2);
      basis.push_back(1.0);
    }
  }
  if (ys.empty()) throw NotApplicableError("trajectory_residual: path too short");

  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < ys.size(); ++k) {
    num += ys[k] * basis[k];
    den += basis[k] * basis[k];
  }
  const double fitted = num / den;
  double worst = 0.0;
  for (std::size_t k = 0; k < ys.size(); ++k) {
    worst = std::max(worst, std::abs(ys[k] - fitted * basis[k]));
  }
  return {form, fitted, worst, ys.size()};
}

TrajectoryVerdict adjudicate_trajectory(const GeodesicPath& path, double match_tol,
                                        double reject_tol) {
  TrajectoryVerdict verdict{trajectory_residual(path, TrajectoryForm::first_integral),
                            trajectory_residual(path, TrajectoryForm::reciprocal), false, {}};
  const auto& fi = verdict.first_integral;
  const auto& rc = verdict.reciprocal;
  std::ostringstream out;
  out.precision(6);
  if (fi.max_residual < match_tol && rc.max_residual > reject_tol) {
    verdict.decisive = true;
    out << "first_integral form matches (lambda = " << fi.constant
        << ", residual " << fi.max_residual << "); reciprocal form rejected (residual "
        << rc.max_residual << ")";
  } else if (rc.max_residual < match_tol && fi.max_residual > reject_tol) {
    verdict.decisive = true;
    out << "reciprocal form matches (mu = " << rc.constant << ", residual " << rc.max_residual
        << "); first_integral form rejected (residual " << fi.max_residual << ")";
  } else {
    out << "undecided: first_integral residual " << fi.max_residual << ", reciprocal residual "
        << rc.max_residual;
  }
  verdict.summary = out.str();
  return verdict;
}

Complex hypocycloid_point(double k, double phase, double phi) {
  return std::polar(1.0, phase) *
         ((1.0 - k) * std::polar(1.0, phi) + k * std::polar(1.0, -(1.0 - k) * phi / k));
}

HypocycloidFit hypocycloid_fit(const GeodesicPath& path) {
  const auto& smp = path.samples;
  constexpr double end_tolerance = 1e-2;
  if (smp.size() < 5) throw NotApplicableError("hypocycloid_fit: path lacks a complete arc");
  const auto it = std::min_element(smp.begin(), smp.end(), [](const auto& a, const auto& b) {
    return a.state.point.rho() < b.state.point.rho();
  });
  const auto imin = static_cast<std::size_t>(it - smp.begin());
  if (imin == 0 || imin + 1 == smp.size() || smp.front().state.point.rho() < 1.0 - end_tolerance ||
      smp.back().state.point.rho() < 1.0 - end_tolerance) {
    throw NotApplicableError("hypocycloid_fit: path lacks a complete arc");
  }

  // Parabolic refinement of the closest approach in both rho and theta.
  const double a = smp[imin - 1].state.point.rho();
  const double b = smp[imin].state.point.rho();
  const double c = smp[imin + 1].state.point.rho();
  const double curvature = a - 2.0 * b + c;
  const double offset = curvature > 0.0 ? 0.5 * (a - c) / curvature : 0.0;
  const double rho_min = curvature > 0.0 ? b - (c - a) * (c - a) / (8.0 * curvature) : b;
  // The closest approach is a quarter turn behind the direction of travel,
  // which stays well defined when the arc passes through the origin.
  const auto heading = [&](std::size_t i) {
    const auto& st = smp[i].state;
    const Complex v = Complex{st.velocity.drho, st.point.rho() * st.velocity.dtheta} *
                      std::polar(1.0, st.point.theta());
    return std::arg(v);
  };
  const double h1 = heading(imin);
  const double h0 = h1 + std::remainder(heading(imin - 1) - h1, 2.0 * pi);
  const double h2 = h1 + std::remainder(heading(imin + 1) - h1, 2.0 * pi);
  const double dir = h1 + offset * 0.5 * (h2 - h0) + 0.5 * offset * offset * (h2 - 2.0 * h1 + h0);
  const double turn = smp[imin].state.velocity.dtheta < 0.0 ? -1.0 : 1.0;
  const double theta_min = dir - turn * 0.5 * pi;

  HypocycloidFit fit;
  fit.rho_min = rho_min;
  fit.rolling_radius = 0.5 * (1.0 - rho_min);
  const double k = fit.rolling_radius;
  // The arch phi in [0, 2 pi k] is closest to the centre at phi = pi k.
  fit.phase = theta_min - pi * k;

  const double arch = 2.0 * pi * k;
  constexpr int table_size = 2048;
  std::vector<Complex> table(table_size + 1);
  for (int j = 0; j <= table_size; ++j) {
    table[static_cast<std::size_t>(j)] = hypocycloid_point(k, fit.phase, arch * j / table_size);
  }
  const double spacing = arch / table_size;
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);

  for (const auto& sample : smp) {
    const Complex p = std::polar(sample.state.point.rho(), sample.state.point.theta());
    std::size_t best = 0;
    double best_d = std::norm(table[0] - p);
    for (std::size_t j = 1; j < table.size(); ++j) {
      const double d = std::norm(table[j] - p);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    const auto dist = [&](double phi) { return std::norm(hypocycloid_point(k, fit.phase, phi) - p); };
    double lo = std::max(0.0, (static_cast<double>(best) - 1.0) * spacing);
    double hi = std::min(arch, (static_cast<double>(best) + 1.0) * spacing);
    double x1 = hi - golden * (hi - lo), x2 = lo + golden * (hi - lo);
    double f1 = dist(x1), f2 = dist(x2);
    for (int iter = 0; iter < 80; ++iter) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - golden * (hi - lo);
        f1 = dist(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + golden * (hi - lo);
        f2 = dist(x2);
      }
    }
    const double d = std::sqrt(std::min({best_d, f1, f2}));
    fit.max_deviation = std::max(fit.max_deviation, d);
  }
  return fit;
}

}  // namespace moebius

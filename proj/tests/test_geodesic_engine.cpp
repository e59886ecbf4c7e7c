#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "moebius/errors.hpp"
#include "moebius/geodesic_engine.hpp"
#include "moebius/product_geometry.hpp"
#include "test_support.hpp"

using namespace moebius;
using moebius::test::pi;

namespace {

GeodesicState advance(GeodesicState s, double length, double h) {
  const int n = static_cast<int>(std::lround(length / std::abs(h)));
  for (int i = 0; i < n; ++i) s = rk4_step(s, h);
  return s;
}

double state_distance(const GeodesicState& a, const GeodesicState& b) {
  const Complex pa = std::polar(a.point.rho(), a.point.theta());
  const Complex pb = std::polar(b.point.rho(), b.point.theta());
  return std::max({std::abs(pa - pb), std::abs(std::remainder(a.point.t() - b.point.t(), 2.0 * pi)),
                   std::abs(a.velocity.drho - b.velocity.drho),
                   std::abs(a.velocity.dtheta - b.velocity.dtheta)});
}

}  // namespace

TEST_CASE("geodesic equation in the polar chart") {
  const GeodesicState s{ProductPoint(0.0, 0.6, 1.0), ProductTangent{0.3, 0.2, 0.7}};
  const StateDerivative d = geodesic_rhs(s);
  const double q = 1.0 - 0.36;
  CHECK(d.acceleration.dt == 0.0);
  CHECK(d.acceleration.drho == doctest::Approx(-(0.6 / q) * 0.04 + (0.6 / q) * 0.49));
  CHECK(d.acceleration.dtheta == doctest::Approx(-2.0 / (0.6 * q) * 0.2 * 0.7));

  // Inside the Cartesian region the result must agree with the polar formula.
  const double rho = 0.03;
  const GeodesicState inner{ProductPoint(0.0, rho, 2.0), ProductTangent{0.0, 0.5, 4.0}};
  const StateDerivative di = geodesic_rhs(inner);
  const double qi = 1.0 - rho * rho;
  CHECK(di.acceleration.drho == doctest::Approx(-(rho / qi) * 0.25 + (rho / qi) * 16.0).epsilon(1e-10));
  CHECK(di.acceleration.dtheta == doctest::Approx(-2.0 / (rho * qi) * 0.5 * 4.0).epsilon(1e-10));
  CHECK_THROWS_AS(geodesic_rhs({ProductPoint(0.0, 0.0, 0.0), ProductTangent{0.0, 1.0, 0.0}}),
                  DegenerateChartError);
}

TEST_CASE("radial and rotational geodesics") {
  const GeodesicPath radial = integrate({ProductPoint(0.0, 0.2, 1.1), ProductTangent{0.0, 0.5, 0.0}}, 1.0, 1e-3);
  for (const auto& p : radial.samples) CHECK(p.state.point.theta() == doctest::Approx(1.1));
  // Starting at rho = 0.2 with speed sqrt(E) * 0.5, the arc length in rho is the radial length.
  const double speed = std::sqrt(speed_squared(radial.samples.front().state));
  const double rho_end = radial.samples.back().state.point.rho();
  CHECK(radial_length(0.2, rho_end) == doctest::Approx(speed * radial.samples.back().s).epsilon(1e-10));

  const GeodesicPath spin = integrate({ProductPoint(0.5, 0.4, 2.0), ProductTangent{1.0, 0.0, 0.0}}, 1.0, 1e-3);
  const auto& last = spin.samples.back();
  CHECK(last.state.point.rho() == doctest::Approx(0.4));
  CHECK(last.state.point.theta() == doctest::Approx(2.0));
  CHECK(last.t_lift == doctest::Approx(1.5));
}

TEST_CASE("through the origin and out to the boundary") {
  const GeodesicPath path =
      integrate({ProductPoint(0.0, 0.0, 0.5), ProductTangent{0.0, 1.0 / std::sqrt(2.0), 0.0}}, 3.0, 1e-4);
  CHECK(path.boundary_reached);
  const auto& end = path.samples.back();
  CHECK(end.state.point.rho() == doctest::Approx(boundary_stop_rho).epsilon(1e-12));
  CHECK(std::abs(end.s - radial_length(0.0, boundary_stop_rho)) < 1e-9);
  CHECK(end.s < radial_ray_length());

  const GeodesicPath across =
      integrate({ProductPoint(0.0, 0.5, 0.5), ProductTangent{0.0, -0.5, 0.0}}, 5.0, 1e-3);
  CHECK(across.boundary_reached);
  CHECK(std::abs(std::remainder(across.samples.back().state.point.theta() - 0.5 - pi, 2.0 * pi)) < 1e-9);
}

TEST_CASE("integrator preconditions") {
  const GeodesicState s{ProductPoint(0.0, 0.5, 0.0), ProductTangent{0.0, 0.1, 0.1}};
  CHECK_THROWS_AS(integrate(s, 1.0, 2e-3), DomainError);
  CHECK_THROWS_AS(integrate(s, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(integrate(s, 0.0, 1e-3), DomainError);
  CHECK_THROWS_AS(clairaut_state(1.0, 1.0, 0.3), DomainError);
}

TEST_CASE("rk4 is fourth order") {
  const GeodesicState s = clairaut_state(1.0, 1.0, 0.8, 0.3, 0.2);
  const GeodesicState ref = advance(s, 0.8, 0.8 / 4096);
  const double e1 = state_distance(advance(s, 0.8, 0.1), ref);
  const double e2 = state_distance(advance(s, 0.8, 0.05), ref);
  const double e3 = state_distance(advance(s, 0.8, 0.025), ref);
  CHECK(std::log2(e1 / e2) == doctest::Approx(4.0).epsilon(0.1));
  CHECK(std::log2(e2 / e3) == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("reversibility") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> cdist(0.2, 2.0), vdist(0.5, 1.5);
  for (int i = 0; i < 10; ++i) {
    const double c = cdist(rng), v = vdist(rng);
    const GeodesicState s = clairaut_state(c, v, 0.5 * (1.0 + turning_radius(c, v)), 0.4, 0.3);
    const GeodesicState there = advance(s, 0.5, 1e-3);
    const GeodesicState back = advance(there, 0.5, -1e-3);
    CHECK(state_distance(back, s) < 1e-7);
  }
}

TEST_CASE("conserved quantities and the turning radius") {
  const GeodesicState probe{ProductPoint(0.0, 0.5, 0.0), ProductTangent{0.0, 0.3, 1.0}};
  CHECK(clairaut_constant(probe) == doctest::Approx(2.0 / 3.0));
  CHECK(disc_speed_squared(probe) == doctest::Approx(8.0 / 3.0 * 0.09 + 2.0 / 3.0));

  for (const double c : {0.5, 1.0, 2.0}) {
    const GeodesicState s = clairaut_state(c, 1.0, 0.95, 0.0, 0.4);
    CHECK(clairaut_constant(s) == doctest::Approx(c));
    CHECK(disc_speed_squared(s) == doctest::Approx(1.0));
    const GeodesicPath path = integrate(s, 2.0, 1e-4);
    double drift = 0.0;
    for (const auto& p : path.samples) {
      if (p.state.point.rho() > 0.97) continue;
      drift = std::max({drift, std::abs(clairaut_constant(p.state) - c),
                        std::abs(speed_squared(p.state) - speed_squared(s))});
    }
    CHECK(drift < 1e-10);
    CHECK(minimum_rho(path) == doctest::Approx(c / std::sqrt(2.0 + c * c)).epsilon(1e-8));
  }
  CHECK(turning_radius(1.0, 1.0) == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(turning_radius(0.0, 1.0) == 0.0);
}

TEST_CASE("trajectory equation") {
  const GeodesicPath radial =
      integrate({ProductPoint(0.0, 0.2, 1.1), ProductTangent{0.0, 0.5, 0.0}}, 1.0, 1e-3);
  CHECK_THROWS_AS(trajectory_residual(radial, TrajectoryForm::first_integral), NotApplicableError);

  for (const double c : {0.5, 1.0, 2.0}) {
    const double v = 1.2;
    const GeodesicPath path = tangency_arc(c, v, 0.0, 1e-4);
    const TrajectoryFit fit = trajectory_residual(path, TrajectoryForm::first_integral);
    CHECK(fit.max_residual < 1e-6);
    CHECK(fit.constant == doctest::Approx(v * v / (c * c)).epsilon(1e-8));
    const TrajectoryVerdict verdict = adjudicate_trajectory(path);
    CHECK(verdict.decisive);
    CHECK(verdict.reciprocal.max_residual > 1e-2);
  }
  CHECK(to_string(TrajectoryForm::first_integral) == "first_integral");
}

TEST_CASE("tangency arcs are hypocycloids") {
  const double k_expected = 0.5 * (1.0 - 1.0 / std::sqrt(3.0));
  const HypocycloidFit fit = hypocycloid_fit(tangency_arc(1.0, 1.0, 0.0, 1e-4));
  CHECK(fit.rolling_radius == doctest::Approx(k_expected).epsilon(1e-8));
  CHECK(fit.max_deviation < 1e-3);

  const HypocycloidFit turned = hypocycloid_fit(tangency_arc(1.0, 1.0, 2.5, 1e-4));
  CHECK(turned.rolling_radius == doctest::Approx(fit.rolling_radius).epsilon(1e-10));
  CHECK(std::abs(std::remainder(turned.phase - fit.phase - 2.5, 2.0 * pi)) < 1e-8);

  // Through the origin the arch degenerates to a diameter.
  const HypocycloidFit diameter = hypocycloid_fit(tangency_arc(0.0, 1.0, 0.7, 1e-3));
  CHECK(diameter.rolling_radius == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(diameter.max_deviation < 1e-10);
  const HypocycloidFit near = hypocycloid_fit(tangency_arc(1e-3, 1.0, 0.7, 1e-4));
  CHECK(near.max_deviation < 1e-6);

  // The fitted curve touches the circle at both ends of the arch.
  CHECK(std::abs(hypocycloid_point(fit.rolling_radius, fit.phase, 0.0)) == doctest::Approx(1.0));
  CHECK(std::abs(hypocycloid_point(fit.rolling_radius, fit.phase, 2.0 * pi * fit.rolling_radius)) ==
        doctest::Approx(1.0));

  const GeodesicPath partial = integrate(clairaut_state(1.0, 1.0, 0.9), 0.2, 1e-3);
  CHECK_THROWS_AS(hypocycloid_fit(partial), NotApplicableError);
}

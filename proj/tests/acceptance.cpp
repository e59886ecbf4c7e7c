// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "moebius/errors.hpp"
#include "moebius/geodesic_engine.hpp"
#include "moebius/kinetic_metric.hpp"
#include "moebius/motion_energy.hpp"
#include "moebius/product_geometry.hpp"
#include "test_support.hpp"
#include "validation.hpp"

using namespace moebius;
using moebius::test::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

double matrix_error(const Matrix3& a, double d0, double d1, double d2) {
  const Matrix3 b{{{d0, 0.0, 0.0}, {0.0, d1, 0.0}, {0.0, 0.0, d2}}};
  double worst = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) worst = std::max(worst, std::abs(a[i][j] - b[i][j]));
  }
  return worst;
}

std::vector<GeodesicState> geodesic_states() {
  return {
      clairaut_state(0.5, 0.8, 0.5, 0.3, 0.4),
      clairaut_state(1.0, 0.8, 0.7, 1.0, 0.0),
      clairaut_state(-0.3, 0.6, 0.4, 2.0, -0.7),
      clairaut_state(0.0, 0.5, 0.3, 0.5, 0.2),
      clairaut_state(0.2, 0.5, 0.6, 4.0, 1.0),
  };
}

Outcome metric_values() {
  Outcome o;
  const QuadratureRule quad(256);
  for (const double r : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double q = 1.0 - r * r;
    const double err = matrix_error(gram_matrix(MoebiusMap::transvection(DiscPoint{r}), quad), 1.0, 2.0 / q,
                                    2.0 * r * r / q);
    o.require(err < 1e-10, "r=" + fmt("%.1f", r) + " error " + fmt("%.3g", err));
  }
  return o;
}

Outcome isometry() {
  Outcome o;
  const QuadratureRule quad(256);
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * pi), radius(0.05, 0.9);
  double worst = 0.0, torus = 0.0;
  for (int i = 0; i < 50; ++i) {
    const ProductPoint p(angle(rng), radius(rng), angle(rng));
    const double q = 1.0 - p.rho() * p.rho();
    const Matrix3 gram = gram_matrix(to_moebius(p), quad);
    worst = std::max(worst, matrix_error(gram, 1.0, 2.0 / q, 2.0 * p.rho() * p.rho() / q));
    const MoebiusMap moved = compose(MoebiusMap::rotation(UnitComplex::from_angle(angle(rng))),
                                     compose(to_moebius(p), MoebiusMap::rotation(UnitComplex::from_angle(angle(rng)))));
    const Matrix3 g2 = gram_matrix(moved, quad);
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t b = 0; b < 3; ++b) torus = std::max(torus, std::abs(g2[a][b] - gram[a][b]));
    }
  }
  o.require(worst < 1e-9, "gram error " + fmt("%.3g", worst));
  o.require(torus < 1e-9, "torus change " + fmt("%.3g", torus));
  if (o.pass) o.detail = "max error " + fmt("%.2g", worst) + ", torus " + fmt("%.2g", torus);
  return o;
}

Outcome curvature() {
  Outcome o;
  double worst_order = 2.0;
  for (int i = 1; i <= 9; ++i) {
    const double rho = 0.1 * i;
    const double exact = -1.0 / (1.0 - rho * rho);
    const double err = std::abs(curvature_numeric(rho, 1e-4) - exact);
    o.require(err < 1e-6, "rho=" + fmt("%.1f", rho) + " error " + fmt("%.3g", err));
    const double e1 = std::abs(curvature_numeric(rho, 1e-2) - exact);
    const double e2 = std::abs(curvature_numeric(rho, 5e-3) - exact);
    const double order = std::log2(e1 / e2);
    if (std::abs(order - 2.0) > std::abs(worst_order - 2.0)) worst_order = order;
    o.require(std::abs(order - 2.0) <= 0.2, "rho=" + fmt("%.1f", rho) + " order " + fmt("%.3f", order));
  }
  if (o.pass) o.detail = "worst order " + fmt("%.3f", worst_order);
  return o;
}

Outcome incompleteness() {
  Outcome o;
  const GeodesicState start{ProductPoint(0.0, 0.0, 0.0), ProductTangent{0.0, 1.0 / std::sqrt(2.0), 0.0}};
  const GeodesicPath path = integrate(start, 3.0, 1e-4);
  const double speed = std::sqrt(speed_squared(start));
  const double length = speed * path.samples.back().s;
  const double exact = std::sqrt(2.0) * std::asin(1.0 - 1e-6);
  o.require(path.boundary_reached, "boundary not reached");
  o.require(std::abs(length - exact) < 1e-8, "length error " + fmt("%.3g", std::abs(length - exact)));
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("length ") + fmt("%.10f", length) + ", limit pi/sqrt2 = " +
              fmt("%.9f", radial_ray_length());
  return o;
}

Outcome conservation() {
  Outcome o;
  double speed = 0.0, clairaut = 0.0, affine = 0.0;
  for (const auto& state : geodesic_states()) {
    const GeodesicPath path = integrate(state, 2.0, 1e-4);
    const double s0 = std::sqrt(speed_squared(state));
    // Angular momentum G(rho) dtheta/ds written out from the metric.
    const auto momentum = [](const GeodesicState& s) {
      const double r = s.point.rho();
      return 2.0 * r * r / (1.0 - r * r) * s.velocity.dtheta;
    };
    for (const auto& p : path.samples) {
      speed = std::max(speed, std::abs(std::sqrt(speed_squared(p.state)) - s0));
      clairaut = std::max(clairaut, std::abs(momentum(p.state) - momentum(state)));
      affine = std::max(affine, std::abs(p.t_lift - state.point.t() - state.velocity.dt * p.s));
    }
  }
  o.require(speed < 1e-8, "speed drift " + fmt("%.3g", speed));
  o.require(clairaut < 1e-8, "clairaut drift " + fmt("%.3g", clairaut));
  o.require(affine < 1e-10, "circle factor " + fmt("%.3g", affine));
  if (o.pass) {
    o.detail = "speed " + fmt("%.2g", speed) + ", clairaut " + fmt("%.2g", clairaut) + ", affine " + fmt("%.2g", affine);
  }
  return o;
}

Outcome turning() {
  Outcome o;
  double worst = 0.0;
  for (const double c : {0.25, 0.5, 1.0, 2.0}) {
    const double expected = c / std::sqrt(2.0 + c * c);
    const GeodesicPath path = integrate(clairaut_state(c, 1.0, 0.5 * (1.0 + expected)), 3.0, 1e-4);
    const double err = std::abs(minimum_rho(path) - expected);
    worst = std::max(worst, err);
    o.require(err < 1e-6, "c=" + fmt("%g", c) + " error " + fmt("%.3g", err));
  }
  if (o.pass) o.detail = "max error " + fmt("%.2g", worst);
  return o;
}

Outcome adjudication() {
  Outcome o;
  for (const double c : {0.5, 1.0, 2.0}) {
    for (const double v : {0.5, 1.0}) {
      const GeodesicPath path = tangency_arc(c, v, 0.3, 1e-4);
      const TrajectoryVerdict verdict = adjudicate_trajectory(path, 1e-6, 1e-2);
      const double a = verdict.first_integral.max_residual, b = verdict.reciprocal.max_residual;
      const bool exactly_one = (a < 1e-6 && b > 1e-2) || (b < 1e-6 && a > 1e-2);
      o.require(exactly_one, "c=" + fmt("%g", c) + " v=" + fmt("%g", v) + " undecided");
      if (a < 1e-6) {
        const double lambda = v * v / (c * c);
        o.require(std::abs(verdict.first_integral.constant - lambda) < 1e-6 * lambda,
                  "fitted constant " + fmt("%.10g", verdict.first_integral.constant));
      }
    }
  }
  const validation::Report report = validation::run("clairaut", validation::Config{});
  const std::string text = report.to_json().dump();
  o.require(report.pass(), "clairaut suite failed");
  o.require(text.find("verdict") != std::string::npos, "report lacks verdict");
  o.require(text.find("lambda") != std::string::npos || text.find("constant") != std::string::npos,
            "report lacks fitted constant");
  if (o.pass) o.detail = "first-integral form matches, reciprocal form rejected on 6 paths";
  return o;
}

Outcome energy() {
  Outcome o;
  const QuadratureRule quad(256);
  double lag = 0.0, speed = 0.0, mass = 0.0;
  for (const auto& state : geodesic_states()) {
    const SampledMotion m = geodesic_motion(integrate(state, 1.0, 1e-4), 10);
    for (std::size_t i = 2; i + 2 < m.size(); i += 7) {
      const double e = kinetic_energy(m, i, quad);
      lag = std::max(lag, std::abs(kinetic_energy_lagrangian(m, i, quad) - e));
      speed = std::max(speed, std::abs(e - pi * metric_speed_squared(m, i, quad)));
      mass = std::max(mass, std::abs(total_mass(m.map(i), quad) - 2.0 * pi));
    }
  }
  std::vector<double> times;
  std::vector<MoebiusMap> maps;
  for (int i = 0; i <= 1000; ++i) {
    times.push_back(1e-3 * i);
    maps.push_back(MoebiusMap::rotation(UnitComplex::from_angle(1e-3 * i)));
  }
  double rotation = 0.0;
  for (const double e : energy_trace(SampledMotion(times, maps), quad)) rotation = std::max(rotation, std::abs(e - pi));
  o.require(lag < 1e-8, "lagrangian vs eulerian " + fmt("%.3g", lag));
  o.require(speed < 1e-8, "pi |v|^2 " + fmt("%.3g", speed));
  o.require(mass < 1e-10, "mass " + fmt("%.3g", mass));
  o.require(rotation < 1e-10, "rotation " + fmt("%.3g", rotation));
  if (o.pass) {
    o.detail = "eq2/eq3 " + fmt("%.2g", lag) + ", speed " + fmt("%.2g", speed) + ", mass " + fmt("%.2g", mass) +
               ", rotation " + fmt("%.2g", rotation);
  }
  return o;
}

Outcome force_free() {
  Outcome o;
  const QuadratureRule quad(256);
  double critical = 0.0, perturbed = 1e300;
  std::uint64_t seed = 20120659;
  for (const auto& state : geodesic_states()) {
    const SampledMotion m = geodesic_motion(integrate(state, 1.0, 1e-4), 10);
    critical = std::max(critical, force_free_residual(m, 20, quad, seed));
    perturbed = std::min(perturbed, force_free_residual(bump_perturbed(m, Coordinate::rho, 0.01), 20, quad, seed));
    ++seed;
  }
  o.require(critical < 1e-5, "geodesic residual " + fmt("%.3g", critical));
  o.require(perturbed > 1e-2, "perturbed residual " + fmt("%.3g", perturbed));
  if (o.pass) o.detail = "geodesic max " + fmt("%.2g", critical) + ", perturbed min " + fmt("%.3g", perturbed);
  return o;
}

Outcome hypocycloid() {
  Outcome o;
  for (const double c : {0.5, 1.0, 2.0}) {
    try {
      const HypocycloidFit fit = hypocycloid_fit(tangency_arc(c, 1.0, 0.0, 1e-4));
      const double k = 0.5 * (1.0 - c / std::sqrt(2.0 + c * c));
      o.require(fit.max_deviation < 1e-3, "c=" + fmt("%g", c) + " deviation " + fmt("%.3g", fit.max_deviation));
      o.require(std::abs(fit.rolling_radius - k) < 1e-6, "c=" + fmt("%g", c) + " k " + fmt("%.8f", fit.rolling_radius));
      o.detail += (o.detail.empty() ? "" : ", ") + std::string("c=") + fmt("%g", c) + " dev " +
                  fmt("%.2g", fit.max_deviation);
    } catch (const NotApplicableError& e) {
      o.require(false, "c=" + fmt("%g", c) + ": " + e.what());
    }
  }
  return o;
}

Outcome group() {
  Outcome o;
  const QuadratureRule roots(64);
  std::mt19937_64 rng(1000);
  double worst = 0.0;
  const auto pointwise = [&](const MoebiusMap& g, const std::function<Complex(Complex)>& f) {
    for (const auto z : roots.nodes()) worst = std::max(worst, std::abs(g(z.value()) - f(z.value())));
  };
  for (int i = 0; i < 1000; ++i) {
    const MoebiusMap g = test::random_map(rng), h = test::random_map(rng);
    const auto formula = [](const MoebiusMap& m) {
      return [m](Complex z) { return test::moebius_formula(m.u().value(), m.alpha().value(), z); };
    };
    const auto fg = formula(g), fh = formula(h);
    pointwise(compose(g, h), [&](Complex z) { return fg(fh(z)); });
    pointwise(compose(inverse(g), g), [](Complex z) { return z; });
    pointwise(to_moebius(to_product(g)), fg);
  }
  o.require(worst < 1e-12, "max error " + fmt("%.3g", worst));
  if (o.pass) o.detail = "max error " + fmt("%.2g", worst);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"metric values", metric_values},   {"isometry", isometry},
      {"curvature", curvature},           {"incompleteness", incompleteness},
      {"conservation", conservation},     {"turning radius", turning},
      {"clairaut adjudication", adjudication}, {"energy identities", energy},
      {"force-free criticality", force_free},  {"hypocycloid", hypocycloid},
      {"group arithmetic", group},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s %2zu %-24s %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

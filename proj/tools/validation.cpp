#include "validation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "moebius/geodesic_engine.hpp"
#include "moebius/kinetic_metric.hpp"
#include "moebius/moebius_group.hpp"
#include "moebius/motion_energy.hpp"
#include "moebius/product_geometry.hpp"

namespace moebius::validation {

namespace {

constexpr double pi = std::numbers::pi;

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

void below(Report& r, std::string name, double value, double tol, std::string detail = {}) {
  r.checks.push_back({std::move(name), value, tol, value < tol, std::move(detail)});
}

void above(Report& r, std::string name, double value, double floor, std::string detail = {}) {
  r.checks.push_back({std::move(name), value, floor, value > floor, std::move(detail)});
}

MoebiusMap random_map(std::mt19937_64& rng, double max_radius) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double rho = max_radius * std::sqrt(unit(rng));
  return {UnitComplex::from_angle(angle(rng)), DiscPoint::polar(rho, angle(rng))};
}

double pointwise_distance(const MoebiusMap& a, const std::function<Complex(Complex)>& b,
                          const QuadratureRule& roots) {
  double worst = 0.0;
  for (const auto z : roots.nodes()) worst = std::max(worst, std::abs(a(z.value()) - b(z.value())));
  return worst;
}

void group_suite(Report& r, const Config& cfg) {
  std::mt19937_64 rng(cfg.seed);
  const QuadratureRule roots(64);
  double compose_err = 0.0, inverse_err = 0.0, assoc_err = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const MoebiusMap g = random_map(rng, 0.9), h = random_map(rng, 0.9), k = random_map(rng, 0.9);
    compose_err = std::max(compose_err, pointwise_distance(compose(g, h), [&](Complex z) { return g(h(z)); }, roots));
    inverse_err = std::max(inverse_err, pointwise_distance(compose(g, inverse(g)), [](Complex z) { return z; }, roots));
    assoc_err = std::max(assoc_err, pointwise_distance(compose(compose(g, h), k),
                                                       [&](Complex z) { return compose(g, compose(h, k))(z); }, roots));
  }
  below(r, "group.compose_pointwise", compose_err, 1e-12);
  below(r, "group.inverse_round_trip", inverse_err, 1e-12);
  below(r, "group.associativity", assoc_err, 1e-12);
}

double gram_error(const Matrix3& gram, double rho) {
  const MetricTensor m = metric_tensor(rho);
  const Matrix3 target{{{m.g_tt, 0, 0}, {0, m.g_rr, 0}, {0, 0, m.g_thth}}};
  double worst = 0.0;
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) worst = std::max(worst, std::abs(gram[a][b] - target[a][b]));
  }
  return worst;
}

void metric_suite(Report& r, const Config& cfg) {
  const QuadratureRule quad(cfg.nodes);
  for (const double rho : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const Matrix3 gram = gram_matrix(MoebiusMap::transvection(DiscPoint{rho}), quad);
    below(r, "metric.gram_at_r=" + fmt(rho), gram_error(gram, rho), 1e-10,
          "diag(" + fmt(gram[0][0]) + ", " + fmt(gram[1][1]) + ", " + fmt(gram[2][2]) + ")");
  }
}

void isometry_suite(Report& r, const Config& cfg) {
  const QuadratureRule quad(cfg.nodes);
  std::mt19937_64 rng(cfg.seed + 1);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
  std::uniform_real_distribution<double> radius(0.05, 0.9);
  double iso = 0.0, torus = 0.0;
  for (int i = 0; i < 50; ++i) {
    const ProductPoint p{angle(rng), radius(rng), angle(rng)};
    const MoebiusMap g = to_moebius(p);
    const Matrix3 gram = gram_matrix(g, quad);
    iso = std::max(iso, gram_error(gram, p.rho()));
    const MoebiusMap moved = compose(MoebiusMap::rotation(UnitComplex::from_angle(angle(rng))),
                                     compose(g, MoebiusMap::rotation(UnitComplex::from_angle(angle(rng)))));
    const Matrix3 gram2 = gram_matrix(moved, quad);
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t b = 0; b < 3; ++b) torus = std::max(torus, std::abs(gram[a][b] - gram2[a][b]));
    }
  }
  below(r, "isometry.gram_equals_product_metric", iso, 1e-9);
  below(r, "isometry.torus_invariance", torus, 1e-9);
}

void curvature_suite(Report& r, const Config&) {
  for (int i = 1; i <= 9; ++i) {
    const double rho = 0.1 * i;
    const double exact = gaussian_curvature(rho);
    below(r, "curvature.value_at_rho=" + fmt(rho), std::abs(curvature_numeric(rho, 1e-4) - exact), 1e-6);
    const double e1 = std::abs(curvature_numeric(rho, 1e-2) - exact);
    const double e2 = std::abs(curvature_numeric(rho, 5e-3) - exact);
    const double order = std::log2(e1 / e2);
    below(r, "curvature.order_at_rho=" + fmt(rho), std::abs(order - 2.0), 0.2, "order " + fmt(order));
  }
}

void incompleteness_suite(Report& r, const Config& cfg) {
  const GeodesicState start{ProductPoint{0, 0, 0}, ProductTangent{0, 1.0 / std::sqrt(2.0), 0}};
  const GeodesicPath path = integrate(start, 3.0, cfg.step);
  const double length = path.samples.back().s;
  const double expected = std::sqrt(2.0) * std::asin(boundary_stop_rho);
  r.checks.push_back({"incompleteness.boundary_reached", path.boundary_reached ? 1.0 : 0.0, 1.0,
                      path.boundary_reached, ""});
  below(r, "incompleteness.radial_length", std::abs(length - expected), 1e-8,
        "length " + fmt(length) + ", limit pi/sqrt(2) = " + fmt(radial_ray_length()));
}

std::vector<GeodesicState> sample_states() {
  return {
      clairaut_state(0.5, 0.8, 0.5, 0.3, 0.4, RadialDirection::inward),
      clairaut_state(1.0, 0.8, 0.7, 1.0, 0.0, RadialDirection::inward),
      clairaut_state(-0.3, 0.6, 0.4, 2.0, -0.7, RadialDirection::inward),
      clairaut_state(0.0, 0.5, 0.3, 0.5, 0.2, RadialDirection::inward),
      clairaut_state(0.2, 0.5, 0.6, 4.0, 1.0, RadialDirection::inward),
  };
}

void conservation_suite(Report& r, const Config& cfg) {
  double speed = 0.0, clairaut = 0.0, affine = 0.0;
  for (const auto& state : sample_states()) {
    const GeodesicPath path = integrate(state, 2.0, cfg.step);
    const double s0 = std::sqrt(speed_squared(state));
    const double c0 = clairaut_constant(state);
    for (const auto& p : path.samples) {
      speed = std::max(speed, std::abs(std::sqrt(speed_squared(p.state)) - s0));
      clairaut = std::max(clairaut, std::abs(clairaut_constant(p.state) - c0));
      affine = std::max(affine, std::abs(p.t_lift - state.point.t() - state.velocity.dt * p.s));
    }
  }
  below(r, "conservation.speed_drift", speed, 1e-8);
  below(r, "conservation.clairaut_drift", clairaut, 1e-8);
  below(r, "conservation.circle_factor_affine", affine, 1e-10);
}

void turning_suite(Report& r, const Config& cfg) {
  for (const double c : {0.25, 0.5, 1.0, 2.0}) {
    const double expected = c / std::sqrt(2.0 + c * c);
    const GeodesicState start = clairaut_state(c, 1.0, 0.5 * (1.0 + expected), 0.0);
    const double measured = minimum_rho(integrate(start, 2.0, cfg.step));
    below(r, "turning.min_rho_at_c=" + fmt(c), std::abs(measured - expected), 1e-6,
          "measured " + fmt(measured));
  }
}

void clairaut_suite(Report& r, const Config& cfg) {
  for (const double c : {0.25, 0.5, 1.0, 2.0}) {
    const double rmin = turning_radius(c, 1.0);
    const GeodesicState start = clairaut_state(c, 1.0, 0.5 * (1.0 + rmin), 0.0);
    const TrajectoryVerdict v = adjudicate_trajectory(integrate(start, 2.0, cfg.step));
    r.checks.push_back({"clairaut.adjudication_at_c=" + fmt(c),
                        std::min(v.first_integral.max_residual, v.reciprocal.max_residual), 1e-6,
                        v.decisive, "verdict: " + v.summary});
    below(r, "clairaut.lambda_equals_v2_over_c2_at_c=" + fmt(c),
          std::abs(v.first_integral.constant - 1.0 / (c * c)), 1e-6,
          "lambda " + fmt(v.first_integral.constant) + ", mu " + fmt(v.reciprocal.constant));
  }
}

SampledMotion rotation_motion() {
  std::vector<double> times;
  std::vector<MoebiusMap> maps;
  for (int i = 0; i <= 1000; ++i) {
    times.push_back(i * 1e-3);
    maps.push_back(MoebiusMap::rotation(UnitComplex::from_angle(i * 1e-3)));
  }
  return {times, maps};
}

SampledMotion transvection_motion() {
  std::vector<double> times;
  std::vector<MoebiusMap> maps;
  for (int i = 0; i <= 1000; ++i) {
    const double t = i * 1e-3;
    times.push_back(t);
    maps.push_back({UnitComplex::from_angle(0.3 * t), DiscPoint::polar(0.5 + 0.1 * std::sin(t), 0.5 * t)});
  }
  return {times, maps};
}

std::vector<SampledMotion> geodesic_motions(const Config& cfg) {
  std::vector<SampledMotion> out;
  for (const auto& state : sample_states()) {
    out.push_back(geodesic_motion(integrate(state, 1.0, 1e-4), 10));
  }
  (void)cfg;
  return out;
}

void energy_suite(Report& r, const Config& cfg) {
  const QuadratureRule quad(cfg.nodes);
  std::vector<SampledMotion> motions = geodesic_motions(cfg);
  motions.push_back(transvection_motion());
  double lagrange = 0.0, metric = 0.0, mass = 0.0;
  for (const auto& m : motions) {
    for (std::size_t i = 2; i + 2 < m.size(); i += 97) {
      const double e = kinetic_energy(m, i, quad);
      lagrange = std::max(lagrange, std::abs(e - kinetic_energy_lagrangian(m, i, quad)));
      metric = std::max(metric, std::abs(e - pi * metric_speed_squared(m, i, quad)));
      mass = std::max(mass, std::abs(total_mass(m.map(i), quad) - 2.0 * pi));
    }
  }
  below(r, "energy.eulerian_equals_lagrangian", lagrange, 1e-8);
  below(r, "energy.equals_pi_metric_speed", metric, 1e-8);
  below(r, "energy.total_mass", mass, 1e-10);
  const auto trace = energy_trace(rotation_motion(), quad);
  double rot = 0.0;
  for (const double e : trace) rot = std::max(rot, std::abs(e - pi));
  below(r, "energy.unit_rotation_is_pi", rot, 1e-10);
}

void forcefree_suite(Report& r, const Config& cfg) {
  const QuadratureRule quad(cfg.nodes);
  int index = 0;
  for (const auto& m : geodesic_motions(cfg)) {
    const double res = force_free_residual(m, 20, quad, cfg.seed + static_cast<std::uint64_t>(index));
    below(r, "forcefree.geodesic_" + std::to_string(index), res, cfg.critical_tol);
    const double bumped = force_free_residual(bump_perturbed(m, Coordinate::rho, 0.01), 20, quad,
                                              cfg.seed + static_cast<std::uint64_t>(index));
    above(r, "forcefree.perturbed_" + std::to_string(index), bumped, cfg.noncritical_floor);
    ++index;
  }
}

void hypocycloid_suite(Report& r, const Config& cfg) {
  for (const double c : {0.5, 1.0, 2.0}) {
    const HypocycloidFit fit = hypocycloid_fit(tangency_arc(c, 1.0, 0.0, cfg.step));
    below(r, "hypocycloid.deviation_at_c=" + fmt(c), fit.max_deviation, 1e-3,
          "k " + fmt(fit.rolling_radius) + ", rho_min " + fmt(fit.rho_min));
  }
}

const std::map<std::string, void (*)(Report&, const Config&)>& registry() {
  static const std::map<std::string, void (*)(Report&, const Config&)> suites{
      {"group", group_suite},           {"metric", metric_suite},
      {"isometry", isometry_suite},     {"curvature", curvature_suite},
      {"incompleteness", incompleteness_suite}, {"conservation", conservation_suite},
      {"turning", turning_suite},       {"clairaut", clairaut_suite},
      {"energy", energy_suite},         {"forcefree", forcefree_suite},
      {"hypocycloid", hypocycloid_suite},
  };
  return suites;
}

}  // namespace

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

nlohmann::json Report::to_json() const {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& c : checks) {
    items.push_back({{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance},
                     {"pass", c.pass}, {"detail", c.detail}});
  }
  return {{"schema", "moebius-validation-report/1"}, {"suite", suite}, {"pass", pass()},
          {"checks", items}};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "group",   "metric",    "isometry", "curvature", "incompleteness", "conservation",
      "turning", "clairaut",  "energy",   "forcefree", "hypocycloid"};
  return names;
}

bool is_suite(const std::string& name) {
  return name == "all" || registry().count(name) != 0;
}

Report run(const std::string& suite, const Config& config) {
  Report report{suite, {}};
  // A suite that cannot complete is reported as a failed check.
  const auto guarded = [&](const std::string& name) {
    try {
      registry().at(name)(report, config);
    } catch (const std::exception& e) {
      report.checks.push_back({name + ".completed", 0.0, 0.0, false, e.what()});
    }
  };
  if (suite == "all") {
    for (const auto& name : suite_names()) guarded(name);
    return report;
  }
  if (registry().count(suite) == 0) throw std::invalid_argument("unknown suite: " + suite);
  guarded(suite);
  return report;
}

}  // namespace moebius::validation

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "moebius/errors.hpp"
#include "moebius/geodesic_engine.hpp"
#include "moebius/io.hpp"
#include "moebius/kinetic_metric.hpp"
#include "moebius/motion_energy.hpp"
#include "moebius/product_geometry.hpp"
#include "validation.hpp"

namespace moebius::cli {

namespace {

struct RunConfig {
  double r = 0.5;
  double c = 0.0;
  double v = 1.0;
  std::optional<double> rho0;
  double theta0 = 0.0;
  double dt = 0.0;
  bool outward = false;
  double length = 2.0;
  double step = 1e-4;
  int nodes = QuadratureRule::default_nodes;
  std::uint64_t seed = validation::Config{}.seed;
  std::string in;
  std::string out;
  std::string format;
  std::string suite = "all";
};

/// Opens `path` for writing, or returns `fallback` when path is empty or "-".
class Sink {
public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw DomainError("cannot open output file " + path);
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

private:
  std::ofstream file_;
  std::ostream* stream_;
};

int cmd_metric(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!(cfg.r > 0.0 && cfg.r < 1.0)) {
    err << "metric: --r must lie in (0, 1), got " << cfg.r << '\n';
    return usage_error;
  }
  const QuadratureRule quad(cfg.nodes);
  const Matrix3 gram = gram_matrix(MoebiusMap::transvection(DiscPoint{cfg.r}), quad);
  const MetricTensor target = metric_tensor(cfg.r);
  const Matrix3 t{{{target.g_tt, 0, 0}, {0, target.g_rr, 0}, {0, 0, target.g_thth}}};
  double error = 0.0;
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) error = std::max(error, std::abs(gram[a][b] - t[a][b]));
  }
  constexpr double tolerance = 1e-10;
  const bool ok = error < tolerance;

  if (cfg.format == "csv") {
    Sink sink(cfg.out, out);
    io::write_gram_csv(sink.get(), gram);
  } else if (cfg.format == "json") {
    Sink sink(cfg.out, out);
    sink.get() << nlohmann::json{{"schema", io::gram_schema}, {"r", cfg.r}, {"nodes", cfg.nodes},
                                 {"gram", gram},
                                 {"target", {target.g_tt, target.g_rr, target.g_thth}},
                                 {"max_error", error}, {"tolerance", tolerance}, {"pass", ok}}
                      .dump(2)
               << '\n';
  }
  if (cfg.format != "csv" && cfg.format != "json") {
    out << std::setprecision(12);
    out << "Gram matrix at (1, r=" << cfg.r << ") with " << cfg.nodes << " nodes:\n";
    for (const auto& row : gram) out << "  " << row[0] << "  " << row[1] << "  " << row[2] << '\n';
    out << "target diag(" << target.g_tt << ", " << target.g_rr << ", " << target.g_thth << ")\n";
  }
  std::ostream& summary = cfg.out.empty() && !cfg.format.empty() ? err : out;
  summary << std::setprecision(3) << "max entrywise error " << error << " (tolerance " << tolerance
          << "): " << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? success : tolerance_failure;
}

int cmd_geodesic(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const double rmin = turning_radius(cfg.c, cfg.v);
  const double rho0 = cfg.rho0.value_or(cfg.c == 0.0 ? 0.0 : 0.5 * (1.0 + rmin));
  const GeodesicState start = clairaut_state(
      cfg.c, cfg.v, rho0, cfg.theta0, cfg.dt,
      cfg.outward || cfg.c == 0.0 ? RadialDirection::outward : RadialDirection::inward);
  const GeodesicPath path = integrate(start, cfg.length, cfg.step);

  double speed_drift = 0.0, c_drift = 0.0;
  const double s0 = std::sqrt(speed_squared(start));
  const double c0 = clairaut_constant(start);
  for (const auto& p : path.samples) {
    speed_drift = std::max(speed_drift, std::abs(std::sqrt(speed_squared(p.state)) - s0));
    c_drift = std::max(c_drift, std::abs(clairaut_constant(p.state) - c0));
  }
  {
    Sink sink(cfg.out, out);
    io::write_path_csv(sink.get(), path);
  }
  std::ostream& summary = cfg.out.empty() ? err : out;
  summary << std::setprecision(8) << "samples " << path.samples.size() << ", final s "
          << path.samples.back().s << "\nspeed drift " << speed_drift << ", clairaut drift "
          << c_drift << "\nmin rho " << minimum_rho(path) << " (turning radius " << rmin << ")\n";
  if (path.boundary_reached) {
    summary << "boundary reached at rho = " << boundary_stop_rho << "; integration stopped early\n";
  }
  return success;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!validation::is_suite(cfg.suite)) {
    err << "validate: unknown suite '" << cfg.suite << "'\n";
    return usage_error;
  }
  validation::Config vc;
  vc.nodes = cfg.nodes;
  vc.step = cfg.step;
  vc.seed = cfg.seed;
  const validation::Report report = validation::run(cfg.suite, vc);
  Sink sink(cfg.out, out);
  sink.get() << report.to_json().dump(2) << '\n';
  return report.pass() ? success : tolerance_failure;
}

std::vector<Complex> decimate(const std::vector<Complex>& pts, std::size_t limit) {
  if (pts.size() <= limit) return pts;
  std::vector<Complex> out;
  const std::size_t stride = (pts.size() + limit - 1) / limit;
  for (std::size_t i = 0; i < pts.size(); i += stride) out.push_back(pts[i]);
  if ((pts.size() - 1) % stride != 0) out.push_back(pts.back());
  return out;
}

int cmd_plot(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::ifstream in(cfg.in);
  if (!in) {
    err << "plot: cannot open input file '" << cfg.in << "'\n";
    return usage_error;
  }
  std::vector<Complex> pts;
  io::PlotOverlay overlay;
  std::string title;
  const bool is_json = cfg.in.size() >= 5 && cfg.in.substr(cfg.in.size() - 5) == ".json";
  try {
    if (is_json) {
      const SampledMotion motion = io::motion_from_json(nlohmann::json::parse(in));
      for (const auto& g : motion.maps()) pts.push_back(g.alpha().value());
      title = "Moebius motion: transvection parameter";
    } else {
      const GeodesicPath path = io::read_path_csv(in);
      for (const auto& p : path.samples) pts.push_back(std::polar(p.state.point.rho(), p.theta_lift));
      title = "Geodesic trajectory in the disc";
      const double c = clairaut_constant(path.samples.front().state);
      if (std::abs(c) > 1e-12) {
        overlay.tangency_radius = minimum_rho(path);
        try {
          const HypocycloidFit fit = hypocycloid_fit(path);
          if (fit.max_deviation < 1e-3) overlay.hypocycloid = fit;
          title += " (hypocycloid k=" + std::to_string(fit.rolling_radius) + ")";
        } catch (const NotApplicableError&) {
        }
      }
    }
  } catch (const nlohmann::json::exception& e) {
    err << "plot: malformed input: " << e.what() << '\n';
    return usage_error;
  } catch (const io::FormatError& e) {
    err << "plot: malformed input: " << e.what() << '\n';
    return usage_error;
  }
  Sink sink(cfg.out, out);
  io::write_disc_svg(sink.get(), decimate(pts, 4000), overlay, title);
  return success;
}

int cmd_energy(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::ifstream in(cfg.in);
  if (!in) {
    err << "energy: cannot open input file '" << cfg.in << "'\n";
    return usage_error;
  }
  std::optional<SampledMotion> motion;
  try {
    motion = io::motion_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    err << "energy: malformed input: " << e.what() << '\n';
    return usage_error;
  } catch (const io::FormatError& e) {
    err << "energy: malformed input: " << e.what() << '\n';
    return usage_error;
  }
  const QuadratureRule quad(cfg.nodes);
  const auto trace = energy_trace(*motion, quad);
  {
    Sink sink(cfg.out, out);
    io::write_energy_csv(sink.get(), *motion, trace);
  }
  std::ostream& summary = cfg.out.empty() ? err : out;
  summary << std::setprecision(12) << "action " << action(*motion, quad) << '\n';
  return success;
}

int cmd_fields(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!(cfg.r > 0.0 && cfg.r < 1.0)) {
    err << "fields: --r must lie in (0, 1), got " << cfg.r << '\n';
    return usage_error;
  }
  const QuadratureRule quad(cfg.nodes);
  const CoordinateFields f = coordinate_fields(cfg.r, quad);
  const InducedField* pick = &f.t;
  if (cfg.format == "rho") pick = &f.rho;
  if (cfg.format == "theta") pick = &f.theta;
  Sink sink(cfg.out, out);
  io::write_field_csv(sink.get(), *pick, quad);
  return success;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Kinetic-energy geometry of the Moebius group of the circle"};
  app.require_subcommand(1);

  const auto numeric = [&](CLI::App* sub) {
    sub->add_option("--nodes", cfg.nodes, "quadrature node count (even, >= 8)")->capture_default_str();
    sub->add_option("--out", cfg.out, "output file ('-' or empty for stdout)");
  };

  auto* metric = app.add_subcommand("metric", "Gram matrix of the coordinate fields at (1, r)");
  metric->add_option("--r", cfg.r, "transvection radius in (0, 1)")->capture_default_str();
  metric->add_option("--format", cfg.format, "text (default), csv or json");
  numeric(metric);

  auto* fields = app.add_subcommand("fields", "export a coordinate field at (1, r) as CSV");
  fields->add_option("--r", cfg.r, "transvection radius in (0, 1)")->capture_default_str();
  fields->add_option("--format", cfg.format, "field to export: t (default), rho or theta");
  numeric(fields);

  auto* geodesic = app.add_subcommand("geodesic", "integrate a geodesic and write its path CSV");
  geodesic->add_option("--c", cfg.c, "angular momentum G(rho) dtheta/ds")->capture_default_str();
  geodesic->add_option("--v", cfg.v, "disc-factor speed")->capture_default_str();
  geodesic->add_option("--rho0", cfg.rho0, "starting radius");
  geodesic->add_option("--theta0", cfg.theta0, "starting angle")->capture_default_str();
  geodesic->add_option("--dt", cfg.dt, "circle-factor speed")->capture_default_str();
  geodesic->add_flag("--outward", cfg.outward, "start moving away from the centre");
  geodesic->add_option("--length", cfg.length, "parameter length")->capture_default_str();
  geodesic->add_option("--step", cfg.step, "RK4 step (<= 1e-3)")->capture_default_str();
  geodesic->add_option("--format", cfg.format, "csv (only format)");
  numeric(geodesic);

  auto* validate = app.add_subcommand("validate", "run verification suites, JSON report");
  validate->add_option("suite", cfg.suite, "suite name or 'all'")->capture_default_str();
  validate->add_option("--step", cfg.step, "geodesic step")->capture_default_str();
  validate->add_option("--seed", cfg.seed, "seed for randomized checks")->capture_default_str();
  validate->add_option("--format", cfg.format, "json (only format)");
  numeric(validate);

  auto* plot = app.add_subcommand("plot", "SVG of a path CSV or motion JSON");
  plot->add_option("input", cfg.in, "path CSV or motion JSON")->required();
  plot->add_option("--out", cfg.out, "output SVG file");
  plot->add_option("--format", cfg.format, "svg (only format)");

  auto* energy = app.add_subcommand("energy", "energy trace and action of a motion JSON");
  energy->add_option("input", cfg.in, "motion JSON")->required();
  numeric(energy);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return success;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << "run with --help for usage\n";
    return usage_error;
  }

  try {
    if (*metric) return cmd_metric(cfg, out, err);
    if (*fields) return cmd_fields(cfg, out, err);
    if (*geodesic) return cmd_geodesic(cfg, out, err);
    if (*validate) return cmd_validate(cfg, out, err);
    if (*plot) return cmd_plot(cfg, out, err);
    if (*energy) return cmd_energy(cfg, out, err);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  }
  return usage_error;
}

}  // namespace moebius::cli

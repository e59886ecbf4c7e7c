#include "moebius/io.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "moebius/errors.hpp"

namespace moebius::io {

using nlohmann::json;

json to_json(const MoebiusMap& g) {
  return {{"u_re", g.u().value().real()},
          {"u_im", g.u().value().imag()},
          {"alpha_re", g.alpha().value().real()},
          {"alpha_im", g.alpha().value().imag()}};
}

MoebiusMap map_from_json(const json& j) {
  try {
    const Complex u{j.at("u_re").get<double>(), j.at("u_im").get<double>()};
    const Complex a{j.at("alpha_re").get<double>(), j.at("alpha_im").get<double>()};
    return {UnitComplex{u}, DiscPoint{a}};
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed Moebius map: ") + e.what());
  } catch (const DomainError& e) {
    throw FormatError(std::string("invalid Moebius map: ") + e.what());
  }
}

json to_json(const SampledMotion& motion) {
  json maps = json::array();
  for (const auto& g : motion.maps()) maps.push_back(to_json(g));
  return {{"schema", motion_schema}, {"times", motion.times()}, {"maps", maps}};
}

SampledMotion motion_from_json(const json& j) {
  try {
    if (j.contains("schema") && j.at("schema").get<std::string>() != motion_schema) {
      throw FormatError("motion: unexpected schema " + j.at("schema").dump());
    }
    auto times = j.at("times").get<std::vector<double>>();
    std::vector<MoebiusMap> maps;
    for (const auto& m : j.at("maps")) maps.push_back(map_from_json(m));
    return {std::move(times), std::move(maps)};
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed motion: ") + e.what());
  } catch (const DomainError& e) {
    throw FormatError(std::string("invalid motion: ") + e.what());
  }
}

void write_path_csv(std::ostream& out, const GeodesicPath& path) {
  out << "# " << path_schema << " step=" << std::setprecision(17) << path.step << '\n';
  out << "s,t,rho,theta,dt,drho,dtheta,speed,clairaut_c\n";
  for (const auto& p : path.samples) {
    const auto& v = p.state.velocity;
    out << p.s << ',' << p.t_lift << ',' << p.state.point.rho() << ',' << p.theta_lift << ','
        << v.dt << ',' << v.drho << ',' << v.dtheta << ',' << std::sqrt(speed_squared(p.state))
        << ',' << clairaut_constant(p.state) << '\n';
  }
  if (path.boundary_reached && !path.samples.empty()) {
    out << "# boundary_reached s=" << path.samples.back().s << '\n';
  }
}

GeodesicPath read_path_csv(std::istream& in) {
  GeodesicPath path;
  std::string line;
  bool header_seen = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.find("boundary_reached") != std::string::npos) path.boundary_reached = true;
      if (const auto pos = line.find("step="); pos != std::string::npos) {
        path.step = std::strtod(line.c_str() + pos + 5, nullptr);
      }
      continue;
    }
    if (!header_seen) {
      if (line.rfind("s,t,rho,theta", 0) != 0) throw FormatError("path CSV: missing header row");
      header_seen = true;
      continue;
    }
    std::istringstream row(line);
    std::vector<double> cols;
    std::string cell;
    while (std::getline(row, cell, ',')) {
      char* end = nullptr;
      const double value = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str()) {
        throw FormatError("path CSV: non-numeric cell on line " + std::to_string(line_no));
      }
      cols.push_back(value);
    }
    if (cols.size() < 7) throw FormatError("path CSV: short row on line " + std::to_string(line_no));
    try {
      PathSample sample;
      sample.s = cols[0];
      sample.t_lift = cols[1];
      sample.theta_lift = cols[3];
      sample.state = {ProductPoint{cols[1], cols[2], cols[3]},
                      ProductTangent{cols[4], cols[5], cols[6]}};
      path.samples.push_back(sample);
    } catch (const DomainError& e) {
      throw FormatError("path CSV: line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (path.samples.empty()) throw FormatError("path CSV: no samples");
  if (path.step <= 0.0 && path.samples.size() > 1) {
    path.step = path.samples[1].s - path.samples[0].s;
  }
  return path;
}

void write_field_csv(std::ostream& out, const InducedField& field, const QuadratureRule& quad) {
  if (field.size() != quad.nodes().size()) {
    throw DomainError("write_field_csv: field does not match quadrature rule");
  }
  out << "# " << field_schema << '\n' << "node,z_re,z_im,field_re,field_im\n"
      << std::setprecision(17);
  for (std::size_t k = 0; k < field.size(); ++k) {
    const Complex z = quad.nodes()[k].value();
    out << k << ',' << z.real() << ',' << z.imag() << ',' << field[k].real() << ','
        << field[k].imag() << '\n';
  }
}

void write_gram_csv(std::ostream& out, const Matrix3& gram) {
  out << "# " << gram_schema << '\n' << "row,t,rho,theta\n" << std::setprecision(17);
  constexpr const char* names[] = {"t", "rho", "theta"};
  for (std::size_t a = 0; a < 3; ++a) {
    out << names[a] << ',' << gram[a][0] << ',' << gram[a][1] << ',' << gram[a][2] << '\n';
  }
}

void write_energy_csv(std::ostream& out, const SampledMotion& motion,
                      const std::vector<double>& energies) {
  if (energies.size() != motion.size()) {
    throw DomainError("write_energy_csv: one energy per sample required");
  }
  out << "# " << energy_schema << '\n' << "t,energy\n" << std::setprecision(17);
  for (std::size_t i = 0; i < energies.size(); ++i) {
    out << motion.time(i) << ',' << energies[i] << '\n';
  }
}

namespace {

constexpr double canvas = 600.0;
constexpr double margin = 40.0;

double sx(double x) { return canvas / 2 + x * (canvas / 2 - margin); }
double sy(double y) { return canvas / 2 - y * (canvas / 2 - margin); }

void polyline(std::ostream& out, const std::vector<Complex>& pts, const char* style) {
  out << "  <polyline fill=\"none\" " << style << " points=\"";
  for (const auto& p : pts) out << sx(p.real()) << ',' << sy(p.imag()) << ' ';
  out << "\"/>\n";
}

}  // namespace

void write_disc_svg(std::ostream& out, const std::vector<Complex>& trajectory,
                    const PlotOverlay& overlay, const std::string& title) {
  const double radius = canvas / 2 - margin;
  out << std::setprecision(6);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<!-- " << path_schema << " disc plot -->\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << canvas << "\" height=\"" << canvas
      << "\" viewBox=\"0 0 " << canvas << ' ' << canvas << "\">\n"
      << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "  <text x=\"10\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" << title
      << "</text>\n"
      << "  <circle id=\"boundary\" cx=\"" << sx(0) << "\" cy=\"" << sy(0) << "\" r=\"" << radius
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  if (overlay.tangency_radius) {
    out << "  <circle id=\"tangency\" cx=\"" << sx(0) << "\" cy=\"" << sy(0) << "\" r=\""
        << *overlay.tangency_radius * radius
        << "\" fill=\"none\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n";
  }
  if (overlay.hypocycloid) {
    const auto& fit = *overlay.hypocycloid;
    std::vector<Complex> curve;
    const double arch = 2.0 * std::numbers::pi * fit.rolling_radius;
    for (int j = 0; j <= 400; ++j) {
      curve.push_back(hypocycloid_point(fit.rolling_radius, fit.phase, arch * j / 400.0));
    }
    out << "  <g id=\"hypocycloid\">\n";
    polyline(out, curve, "stroke=\"orange\" stroke-width=\"4\" stroke-opacity=\"0.5\"");
    out << "  </g>\n";
  }
  out << "  <g id=\"trajectory\">\n";
  polyline(out, trajectory, "stroke=\"steelblue\" stroke-width=\"1.5\"");
  out << "  </g>\n</svg>\n";
}

}  // namespace moebius::io

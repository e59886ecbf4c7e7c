#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "moebius/geodesic_engine.hpp"
#include "moebius/kinetic_metric.hpp"
#include "moebius/motion_energy.hpp"

namespace moebius::io {

// Every CSV starts with a "# <schema>" comment line; JSON documents carry a
// "schema" member.
inline constexpr const char* path_schema = "moebius-geodesic-path/1";
inline constexpr const char* field_schema = "moebius-induced-field/1";
inline constexpr const char* gram_schema = "moebius-gram-matrix/1";
inline constexpr const char* energy_schema = "moebius-energy-trace/1";
inline constexpr const char* motion_schema = "moebius-motion/1";
inline constexpr const char* report_schema = "moebius-validation-report/1";

/// Thrown on malformed input files.
class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

nlohmann::json to_json(const MoebiusMap& g);
MoebiusMap map_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SampledMotion& motion);
SampledMotion motion_from_json(const nlohmann::json& j);

/// Columns: s, t, rho, theta, dt, drho, dtheta, speed, clairaut_c. When the
/// path stopped at the boundary a trailing "# boundary_reached s=..." line
/// flags the last row.
void write_path_csv(std::ostream& out, const GeodesicPath& path);
GeodesicPath read_path_csv(std::istream& in);

/// Columns: node, z_re, z_im, field_re, field_im.
void write_field_csv(std::ostream& out, const InducedField& field, const QuadratureRule& quad);
void write_gram_csv(std::ostream& out, const Matrix3& gram);
/// Columns: t, energy.
void write_energy_csv(std::ostream& out, const SampledMotion& motion,
                      const std::vector<double>& energies);

struct PlotOverlay {
  std::optional<double> tangency_radius;
  std::optional<HypocycloidFit> hypocycloid;
};

/// Static SVG of the unit disc with a trajectory polyline (disc points as
/// complex numbers) and optional overlays.
void write_disc_svg(std::ostream& out, const std::vector<Complex>& trajectory,
                    const PlotOverlay& overlay, const std::string& title);

}  // namespace moebius::io

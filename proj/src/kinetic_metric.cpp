#include "moebius/kinetic_metric.hpp"

#include <cmath>
#include <numbers>

#include "moebius/errors.hpp"

namespace moebius {

QuadratureRule::QuadratureRule(int n) : weight_(2.0 * std::numbers::pi / n) {
  if (n < 8 || n % 2 != 0) {
    throw DomainError("QuadratureRule: node count must be even and at least 8");
  }
  nodes_.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    nodes_.push_back(UnitComplex::from_angle(2.0 * std::numbers::pi * k / n));
  }
}

namespace {

void require_same_size(const InducedField& a, const InducedField& b) {
  if (a.size() != b.size()) {
    throw DomainError("InducedField: fields sampled on different quadrature rules");
  }
}

}  // namespace

InducedField& InducedField::operator+=(const InducedField& other) {
  require_same_size(*this, other);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
  return *this;
}

InducedField& InducedField::operator-=(const InducedField& other) {
  require_same_size(*this, other);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
  return *this;
}

InducedField& InducedField::operator*=(double s) {
  for (auto& v : values_) v *= s;
  return *this;
}

InducedField operator+(InducedField a, const InducedField& b) { return a += b; }
InducedField operator-(InducedField a, const InducedField& b) { return a -= b; }
InducedField operator*(double s, InducedField a) { return a *= s; }

CoordinateFields coordinate_fields(double r, const QuadratureRule& quad) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("coordinate_fields: r must lie in (0, 1)");
  const Complex i{0.0, 1.0};
  std::vector<Complex> x, y, z;
  x.reserve(quad.nodes().size());
  y.reserve(quad.nodes().size());
  z.reserve(quad.nodes().size());
  for (const auto node : quad.nodes()) {
    const Complex w = node.value();
    const Complex d = 1.0 + r * w;
    x.push_back(i * (w + r) / d);
    y.push_back((1.0 - w * w) / (d * d));
    z.push_back(r * i * (1.0 + 2.0 * r * w + w * w) / (d * d));
  }
  return {InducedField{std::move(x)}, InducedField{std::move(y)}, InducedField{std::move(z)}};
}

InducedField induced_field(const MoebiusMap& g, const ProductTangent& v, const QuadratureRule& quad) {
  const Complex a = g.alpha().value();
  const double rho = std::abs(a);
  // d alpha / d rho is the unit direction of alpha; at the origin the chart
  // direction is theta = 0.
  const Complex dir = rho > 0.0 ? a / rho : Complex{1.0, 0.0};
  return induced_field_cartesian(g, GroupTangent{v.dt, v.drho * dir + v.dtheta * Complex{0.0, 1.0} * a}, quad);
}

InducedField induced_field_cartesian(const MoebiusMap& g, const GroupTangent& v, const QuadratureRule& quad) {
  const Complex i{0.0, 1.0};
  const Complex u = g.u().value();
  const Complex a = g.alpha().value();
  const Complex abar = std::conj(a);
  const Complex dabar = std::conj(v.dalpha);

  // g depends on alpha and conj(alpha) separately:
  //   dg/dalpha = u / (1 + abar z),  dg/dabar = -u z (z + a) / (1 + abar z)^2
  std::vector<Complex> out;
  out.reserve(quad.nodes().size());
  for (const auto node : quad.nodes()) {
    const Complex w = node.value();
    const Complex d = 1.0 + abar * w;
    const Complex gz = u * (w + a) / d;
    const Complex d_alpha = u / d;
    const Complex d_abar = -u * w * (w + a) / (d * d);
    out.push_back(v.dt * i * gz + d_alpha * v.dalpha + d_abar * dabar);
  }
  return InducedField{std::move(out)};
}

double norm_squared(const InducedField& field) {
  double sum = 0.0;
  for (const auto v : field.values()) sum += std::norm(v);
  return field.size() == 0 ? 0.0 : sum / static_cast<double>(field.size());
}

double inner(const InducedField& a, const InducedField& b) {
  require_same_size(a, b);
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sum += std::real(a[k] * std::conj(b[k]));
  return a.size() == 0 ? 0.0 : sum / static_cast<double>(a.size());
}

double tangency_defect(const MoebiusMap& g, const InducedField& field, const QuadratureRule& quad) {
  if (field.size() != quad.nodes().size()) {
    throw DomainError("tangency_defect: field does not match quadrature rule");
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < field.size(); ++k) {
    const Complex base = g(quad.nodes()[k].value());
    worst = std::max(worst, std::abs(std::real(field[k] * std::conj(base))));
  }
  return worst;
}

Matrix3 gram_matrix(const MoebiusMap& g, const QuadratureRule& quad) {
  if (std::abs(g.alpha().value()) == 0.0) {
    throw DegenerateChartError("gram_matrix: polar chart is degenerate at alpha = 0");
  }
  const std::array<InducedField, 3> fields{
      induced_field(g, {1.0, 0.0, 0.0}, quad),
      induced_field(g, {0.0, 1.0, 0.0}, quad),
      induced_field(g, {0.0, 0.0, 1.0}, quad),
  };
  Matrix3 m{};
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = a; b < 3; ++b) {
      m[a][b] = inner(fields[a], fields[b]);
      m[b][a] = m[a][b];
    }
  }
  return m;
}

}  // namespace moebius

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "moebius/moebius_group.hpp"

namespace moebius {

/// Periodic trapezoid rule on the unit circle: n equispaced nodes
/// e^{2 pi i k / n} with equal weights 2 pi / n.
class QuadratureRule {
public:
  static constexpr int default_nodes = 256;

  explicit QuadratureRule(int n = default_nodes);

  [[nodiscard]] int size() const { return static_cast<int>(nodes_.size()); }
  [[nodiscard]] double weight() const { return weight_; }
  [[nodiscard]] UnitComplex node(int k) const { return nodes_[static_cast<std::size_t>(k)]; }
  [[nodiscard]] std::span<const UnitComplex> nodes() const { return nodes_; }

private:
  std::vector<UnitComplex> nodes_;
  double weight_;
};

/// Velocity of the circle points under an infinitesimal motion, sampled at
/// the quadrature nodes. Entry k is attached to node z_k and lives in the
/// tangent line of the circle at g(z_k), written as an ambient complex number.
class InducedField {
public:
  InducedField() = default;
  explicit InducedField(std::vector<Complex> values) : values_(std::move(values)) {}

  [[nodiscard]] std::size_t size() const { return values_.size(); }
  [[nodiscard]] Complex operator[](std::size_t k) const { return values_[k]; }
  [[nodiscard]] std::span<const Complex> values() const { return values_; }

  InducedField& operator+=(const InducedField& other);
  InducedField& operator-=(const InducedField& other);
  InducedField& operator*=(double s);

private:
  std::vector<Complex> values_;
};

InducedField operator+(InducedField a, const InducedField& b);
InducedField operator-(InducedField a, const InducedField& b);
InducedField operator*(double s, InducedField a);

/// Tangent vector to S^1 x Delta in the coordinates (t, rho, theta).
struct ProductTangent {
  double dt = 0.0;
  double drho = 0.0;
  double dtheta = 0.0;
};

/// Tangent vector in the chart (t, alpha), which stays regular at alpha = 0.
struct GroupTangent {
  double dt = 0.0;
  Complex dalpha{0.0, 0.0};
};

/// Images of d/dt, d/drho, d/dtheta at the transvection T_r.
struct CoordinateFields {
  InducedField t;
  InducedField rho;
  InducedField theta;
};

CoordinateFields coordinate_fields(double r, const QuadratureRule& quad);

/// Field induced by the tangent vector v at g, where v is expressed in the
/// coordinates g = e^{it} T_{rho e^{i theta}}.
InducedField induced_field(const MoebiusMap& g, const ProductTangent& v, const QuadratureRule& quad);
InducedField induced_field_cartesian(const MoebiusMap& g, const GroupTangent& v, const QuadratureRule& quad);

/// Kinetic-energy norm: mean of |X(z)|^2 over the circle.
double norm_squared(const InducedField& field);

/// Real part of the mean Hermitian product. Throws DomainError if the
/// fields were sampled on different rules.
double inner(const InducedField& a, const InducedField& b);

/// Largest |Re(X(z_k) conj(g(z_k)))|: how far the field is from tangent.
double tangency_defect(const MoebiusMap& g, const InducedField& field, const QuadratureRule& quad);

using Matrix3 = std::array<std::array<double, 3>, 3>;

/// Gram matrix of the three coordinate fields at g, ordered (t, rho, theta).
/// Throws DegenerateChartError when alpha = 0.
Matrix3 gram_matrix(const MoebiusMap& g, const QuadratureRule& quad);

}  // namespace moebius

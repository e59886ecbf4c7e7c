#pragma once

#include <complex>

namespace moebius {

using Complex = std::complex<double>;

/// Complex number of modulus one. Renormalized on construction.
class UnitComplex {
public:
  UnitComplex() = default;
  explicit UnitComplex(Complex value);

  static UnitComplex from_angle(double angle);

  [[nodiscard]] Complex value() const { return value_; }
  [[nodiscard]] double angle() const { return std::arg(value_); }
  [[nodiscard]] UnitComplex conj() const;

private:
  Complex value_{1.0, 0.0};
};

UnitComplex operator*(UnitComplex a, UnitComplex b);

/// Point of the open unit disc, bounded away from the circle by
/// DiscPoint::boundary_margin.
class DiscPoint {
public:
  static constexpr double boundary_margin = 1e-12;

  DiscPoint() = default;
  explicit DiscPoint(Complex value);

  static DiscPoint polar(double rho, double theta);

  [[nodiscard]] Complex value() const { return value_; }

private:
  Complex value_{0.0, 0.0};
};

/// Element of the Moebius group of the circle in normal form
///
///     z -> u (z + alpha) / (1 + conj(alpha) z),   |u| = 1, |alpha| < 1.
///
/// The pair (u, alpha) is unique for each group element.
class MoebiusMap {
public:
  MoebiusMap() = default;
  MoebiusMap(UnitComplex u, DiscPoint alpha) : u_(u), alpha_(alpha) {}

  static MoebiusMap identity() { return {}; }
  static MoebiusMap rotation(UnitComplex u) { return {u, DiscPoint{}}; }
  static MoebiusMap transvection(DiscPoint alpha) { return {UnitComplex{}, alpha}; }

  [[nodiscard]] UnitComplex u() const { return u_; }
  [[nodiscard]] DiscPoint alpha() const { return alpha_; }

  /// Evaluates the map at an arbitrary point of the closed disc.
  [[nodiscard]] Complex operator()(Complex z) const;
  /// Complex derivative at z.
  [[nodiscard]] Complex derivative(Complex z) const;

private:
  UnitComplex u_;
  DiscPoint alpha_;
};

/// Field-wise comparison of normal forms.
bool approx_equal(const MoebiusMap& a, const MoebiusMap& b, double tol = 1e-12);

UnitComplex apply(const MoebiusMap& g, UnitComplex z);

/// Returns k with k(z) = g(h(z)).
MoebiusMap compose(const MoebiusMap& g, const MoebiusMap& h);

MoebiusMap inverse(const MoebiusMap& g);

/// Stretch factor |g'(z)| of the induced circle diffeomorphism at z.
double circle_derivative(const MoebiusMap& g, UnitComplex z);

}  // namespace moebius

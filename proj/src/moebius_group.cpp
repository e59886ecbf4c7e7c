#include "moebius/moebius_group.hpp"

#include <cmath>
#include <string>

#include "moebius/errors.hpp"

namespace moebius {

UnitComplex::UnitComplex(Complex value) {
  const double modulus = std::abs(value);
  if (!std::isfinite(modulus) || modulus == 0.0) {
    throw DomainError("UnitComplex: value must be finite and nonzero");
  }
  value_ = value / modulus;
}

UnitComplex UnitComplex::from_angle(double angle) { return UnitComplex{std::polar(1.0, angle)}; }

UnitComplex UnitComplex::conj() const { return UnitComplex{std::conj(value_)}; }

UnitComplex operator*(UnitComplex a, UnitComplex b) { return UnitComplex{a.value() * b.value()}; }

DiscPoint::DiscPoint(Complex value) : value_(value) {
  const double modulus = std::abs(value);
  if (!std::isfinite(modulus) || modulus >= 1.0 - boundary_margin) {
    throw DomainError("DiscPoint: |alpha| = " + std::to_string(modulus) +
                      " is not inside the open unit disc");
  }
}

DiscPoint DiscPoint::polar(double rho, double theta) {
  if (rho < 0.0) throw DomainError("DiscPoint::polar: negative radius");
  return DiscPoint{std::polar(rho, theta)};
}

Complex MoebiusMap::operator()(Complex z) const {
  const Complex a = alpha_.value();
  return u_.value() * (z + a) / (1.0 + std::conj(a) * z);
}

Complex MoebiusMap::derivative(Complex z) const {
  const Complex a = alpha_.value();
  const Complex d = 1.0 + std::conj(a) * z;
  return u_.value() * (1.0 - std::norm(a)) / (d * d);
}

bool approx_equal(const MoebiusMap& a, const MoebiusMap& b, double tol) {
  return std::abs(a.u().value() - b.u().value()) <= tol &&
         std::abs(a.alpha().value() - b.alpha().value()) <= tol;
}

UnitComplex apply(const MoebiusMap& g, UnitComplex z) { return UnitComplex{g(z.value())}; }

MoebiusMap compose(const MoebiusMap& g, const MoebiusMap& h) {
  // Normal form from the value and derivative of g∘h at the origin:
  // k(0) = u_k alpha_k and arg k'(0) = arg u_k.
  const Complex h0 = h(0.0);
  const Complex f0 = g(h0);
  const Complex df0 = g.derivative(h0) * h.derivative(0.0);
  const UnitComplex u{df0};
  return {u, DiscPoint{std::conj(u.value()) * f0}};
}

MoebiusMap inverse(const MoebiusMap& g) {
  // w = u T_a(z)  <=>  z = conj(u) T_{-u a}(w)
  const UnitComplex ubar = g.u().conj();
  return {ubar, DiscPoint{-g.u().value() * g.alpha().value()}};
}

double circle_derivative(const MoebiusMap& g, UnitComplex z) {
  const Complex a = g.alpha().value();
  return (1.0 - std::norm(a)) / std::norm(1.0 + std::conj(a) * z.value());
}

}  // namespace moebius

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "moebius/geodesic_engine.hpp"
#include "moebius/kinetic_metric.hpp"
#include "moebius/moebius_group.hpp"

namespace moebius {

/// A Moebius motion sampled on a uniform time grid.
class SampledMotion {
public:
  static constexpr std::size_t min_samples = 5;

  /// Throws DomainError unless there are at least min_samples strictly
  /// increasing, uniformly spaced times and one map per time.
  SampledMotion(std::vector<double> times, std::vector<MoebiusMap> maps);

  [[nodiscard]] std::size_t size() const { return times_.size(); }
  [[nodiscard]] double time(std::size_t i) const { return times_[i]; }
  [[nodiscard]] const MoebiusMap& map(std::size_t i) const { return maps_[i]; }
  [[nodiscard]] const std::vector<double>& times() const { return times_; }
  [[nodiscard]] const std::vector<MoebiusMap>& maps() const { return maps_; }
  [[nodiscard]] double step() const { return step_; }
  [[nodiscard]] double duration() const { return times_.back() - times_.front(); }

private:
  std::vector<double> times_;
  std::vector<MoebiusMap> maps_;
  double step_;
};

/// Velocities d/ds gamma(s)(p) at the quadrature nodes p, by the five-point
/// central stencil. Requires 2 <= index < size - 2.
InducedField velocity_field(const SampledMotion& motion, std::size_t index, const QuadratureRule& quad);

/// Half the integral of |velocity|^2 over the initial particle positions.
double kinetic_energy(const SampledMotion& motion, std::size_t index, const QuadratureRule& quad);

/// Half the integral of |v_t(q)|^2 rho_t(q) over the current positions q,
/// with rho_t(q) = 1 / gamma(t)'(p) the transported density. The nodes are
/// uniform in q and pulled back through gamma(t)^{-1}.
double kinetic_energy_lagrangian(const SampledMotion& motion, std::size_t index,
                                 const QuadratureRule& quad);

/// Integral of the transported density 1 / g'(g^{-1}(q)) over the circle.
double total_mass(const MoebiusMap& g, const QuadratureRule& quad);

/// d/dt of the (t, rho, theta) coordinates of the motion, five-point stencil.
ProductTangent coordinate_velocity(const SampledMotion& motion, std::size_t index);

/// d/dt of (t, alpha), five-point stencil. Unlike coordinate_velocity this
/// stays meaningful when the motion passes through alpha = 0.
GroupTangent group_velocity(const SampledMotion& motion, std::size_t index);

/// Squared kinetic-metric norm of the velocity, computed from
/// group_velocity and induced_field.
double metric_speed_squared(const SampledMotion& motion, std::size_t index,
                            const QuadratureRule& quad);

/// Kinetic energy at every sample; the first and last two samples use
/// one-sided fourth-order stencils.
std::vector<double> energy_trace(const SampledMotion& motion, const QuadratureRule& quad);

/// Composite trapezoid of the energy trace.
double action(const SampledMotion& motion, const QuadratureRule& quad);

enum class Coordinate { t = 0, rho = 1, theta = 2 };

inline constexpr double variation_step = 1e-4;

/// Central-difference derivatives d/ds E(gamma_s) along seeded proper
/// variations gamma_s(t) = F(coords(gamma(t)) + s V(t)) with
/// V(t) = a sin(pi tau) e_k, tau the normalized time. Variation i moves
/// coordinate k = i mod 3; the amplitude a is drawn from +-[0.02, 0.2].
std::vector<double> variation_derivatives(const SampledMotion& motion, int variation_count,
                                          const QuadratureRule& quad, std::uint64_t seed);

/// Largest |d/ds E| over variation_derivatives.
double force_free_residual(const SampledMotion& motion, int variation_count,
                           const QuadratureRule& quad, std::uint64_t seed);

/// Left torus action g -> u g conj(v), applied sample by sample.
SampledMotion torus_translate(const SampledMotion& motion, UnitComplex u, UnitComplex v);

/// Image under F of every `stride`-th sample of a geodesic path. Partial
/// steps at a boundary stop are dropped.
SampledMotion geodesic_motion(const GeodesicPath& path, std::size_t stride);

/// Adds amplitude * sin^2(pi tau) to one coordinate of every sample.
SampledMotion bump_perturbed(const SampledMotion& motion, Coordinate coordinate, double amplitude);

}  // namespace moebius

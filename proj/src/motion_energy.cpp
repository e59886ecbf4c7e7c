#include "moebius/motion_energy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "moebius/errors.hpp"
#include "moebius/product_geometry.hpp"

namespace moebius {

namespace {

constexpr double pi = std::numbers::pi;

/// Five-point first-derivative stencil (weights already divided by 12)
/// covering samples first .. first + 4.
struct Stencil {
  std::size_t first;
  std::array<double, 5> weights;
};

Stencil stencil_at(std::size_t i, std::size_t n) {
  constexpr double c = 1.0 / 12.0;
  if (i >= 2 && i + 2 < n) return {i - 2, {c, -8 * c, 0.0, 8 * c, -c}};
  if (i == 0) return {0, {-25 * c, 48 * c, -36 * c, 16 * c, -3 * c}};
  if (i == 1) return {0, {-3 * c, -10 * c, 18 * c, -6 * c, c}};
  if (i + 1 == n) return {n - 5, {3 * c, -16 * c, 36 * c, -48 * c, 25 * c}};
  return {n - 5, {-c, 6 * c, -18 * c, 10 * c, 3 * c}};
}

void require_index(const SampledMotion& motion, std::size_t index, bool central_only) {
  if (index >= motion.size()) throw DomainError("motion index out of range");
  if (central_only && (index < 2 || index + 2 >= motion.size())) {
    throw DomainError("velocity_field: index lacks the neighbours of the central stencil");
  }
}

/// gamma(t_j)(z_k) for every sample j and node k.
std::vector<std::vector<Complex>> trajectories(const SampledMotion& motion,
                                               const QuadratureRule& quad) {
  std::vector<std::vector<Complex>> out(motion.size());
  for (std::size_t j = 0; j < motion.size(); ++j) {
    out[j].reserve(quad.nodes().size());
    for (const auto node : quad.nodes()) out[j].push_back(motion.map(j)(node.value()));
  }
  return out;
}

double energy_from_positions(const std::vector<std::vector<Complex>>& pos, std::size_t index,
                             double h, const QuadratureRule& quad) {
  const Stencil st = stencil_at(index, pos.size());
  double sum = 0.0;
  const std::size_t nodes = quad.nodes().size();
  for (std::size_t k = 0; k < nodes; ++k) {
    Complex v{};
    for (std::size_t j = 0; j < 5; ++j) v += st.weights[j] * pos[st.first + j][k];
    sum += std::norm(v / h);
  }
  return 0.5 * quad.weight() * sum;
}

double trapezoid(const std::vector<double>& values, double h) {
  double sum = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) sum += values[i];
  return sum * h;
}

double action_of_maps(const SampledMotion& motion, const QuadratureRule& quad) {
  const auto pos = trajectories(motion, quad);
  std::vector<double> trace(motion.size());
  for (std::size_t i = 0; i < motion.size(); ++i) {
    trace[i] = energy_from_positions(pos, i, motion.step(), quad);
  }
  return trapezoid(trace, motion.step());
}

/// Product coordinates of every sample with t and theta lifted to be
/// continuous in time.
std::vector<std::array<double, 3>> lifted_coordinates(const SampledMotion& motion) {
  std::vector<std::array<double, 3>> out(motion.size());
  for (std::size_t j = 0; j < motion.size(); ++j) {
    const ProductPoint p = to_product(motion.map(j));
    out[j] = {p.t(), p.rho(), p.theta()};
    if (j > 0) {
      for (std::size_t c : {std::size_t{0}, std::size_t{2}}) {
        out[j][c] = out[j - 1][c] + std::remainder(out[j][c] - out[j - 1][c], 2.0 * pi);
      }
    }
  }
  return out;
}

MoebiusMap map_from_coordinates(const std::array<double, 3>& c) {
  // rho may go slightly negative under a variation; the chart extends by
  // rho e^{i theta} as a complex number.
  return {UnitComplex::from_angle(c[0]),
          DiscPoint{Complex{c[1] * std::cos(c[2]), c[1] * std::sin(c[2])}}};
}

}  // namespace

SampledMotion::SampledMotion(std::vector<double> times, std::vector<MoebiusMap> maps)
    : times_(std::move(times)), maps_(std::move(maps)), step_(0.0) {
  if (times_.size() != maps_.size()) throw DomainError("SampledMotion: one map per time required");
  if (times_.size() < min_samples) throw DomainError("SampledMotion: at least 5 samples required");
  step_ = (times_.back() - times_.front()) / static_cast<double>(times_.size() - 1);
  if (!(step_ > 0.0)) throw DomainError("SampledMotion: times must be strictly increasing");
  for (std::size_t i = 1; i < times_.size(); ++i) {
    const double dt = times_[i] - times_[i - 1];
    if (!(dt > 0.0)) throw DomainError("SampledMotion: times must be strictly increasing");
    if (std::abs(dt - step_) > 1e-9 * std::max(1.0, std::abs(step_))) {
      throw DomainError("SampledMotion: time grid must be uniform");
    }
  }
}

InducedField velocity_field(const SampledMotion& motion, std::size_t index, const QuadratureRule& quad) {
  require_index(motion, index, true);
  const Stencil st = stencil_at(index, motion.size());
  std::vector<Complex> out;
  out.reserve(quad.nodes().size());
  for (const auto node : quad.nodes()) {
    Complex v{};
    for (std::size_t j = 0; j < 5; ++j) v += st.weights[j] * motion.map(st.first + j)(node.value());
    out.push_back(v / motion.step());
  }
  return InducedField{std::move(out)};
}

double kinetic_energy(const SampledMotion& motion, std::size_t index, const QuadratureRule& quad) {
  const InducedField v = velocity_field(motion, index, quad);
  return 0.5 * quad.weight() * static_cast<double>(v.size()) * norm_squared(v);
}

double kinetic_energy_lagrangian(const SampledMotion& motion, std::size_t index,
                                 const QuadratureRule& quad) {
  require_index(motion, index, true);
  const Stencil st = stencil_at(index, motion.size());
  const MoebiusMap back = inverse(motion.map(index));
  double sum = 0.0;
  for (const auto q : quad.nodes()) {
    const Complex p = back(q.value());
    Complex v{};
    for (std::size_t j = 0; j < 5; ++j) v += st.weights[j] * motion.map(st.first + j)(p);
    v /= motion.step();
    const double density = circle_derivative(back, q);
    sum += std::norm(v) * density;
  }
  return 0.5 * quad.weight() * sum;
}

double total_mass(const MoebiusMap& g, const QuadratureRule& quad) {
  const MoebiusMap back = inverse(g);
  double sum = 0.0;
  for (const auto q : quad.nodes()) sum += circle_derivative(back, q);
  return quad.weight() * sum;
}

ProductTangent coordinate_velocity(const SampledMotion& motion, std::size_t index) {
  require_index(motion, index, false);
  const Stencil st = stencil_at(index, motion.size());
  std::array<std::array<double, 3>, 5> c{};
  for (std::size_t j = 0; j < 5; ++j) {
    const ProductPoint p = to_product(motion.map(st.first + j));
    c[j] = {p.t(), p.rho(), p.theta()};
  }
  // Lift the angles relative to the first stencil sample.
  for (std::size_t j = 1; j < 5; ++j) {
    for (std::size_t a : {std::size_t{0}, std::size_t{2}}) {
      c[j][a] = c[j - 1][a] + std::remainder(c[j][a] - c[j - 1][a], 2.0 * pi);
    }
  }
  std::array<double, 3> d{};
  for (std::size_t j = 0; j < 5; ++j) {
    for (std::size_t a = 0; a < 3; ++a) d[a] += st.weights[j] * c[j][a];
  }
  return {d[0] / motion.step(), d[1] / motion.step(), d[2] / motion.step()};
}

GroupTangent group_velocity(const SampledMotion& motion, std::size_t index) {
  require_index(motion, index, false);
  const Stencil st = stencil_at(index, motion.size());
  double t_prev = motion.map(st.first).u().angle();
  double dt = 0.0;
  Complex dalpha{0.0, 0.0};
  for (std::size_t j = 0; j < 5; ++j) {
    const MoebiusMap& g = motion.map(st.first + j);
    const double t = t_prev + std::remainder(g.u().angle() - t_prev, 2.0 * pi);
    dt += st.weights[j] * t;
    dalpha += st.weights[j] * g.alpha().value();
    t_prev = t;
  }
  return {dt / motion.step(), dalpha / motion.step()};
}

double metric_speed_squared(const SampledMotion& motion, std::size_t index,
                            const QuadratureRule& quad) {
  return norm_squared(induced_field_cartesian(motion.map(index), group_velocity(motion, index), quad));
}

std::vector<double> energy_trace(const SampledMotion& motion, const QuadratureRule& quad) {
  const auto pos = trajectories(motion, quad);
  std::vector<double> trace(motion.size());
  for (std::size_t i = 0; i < motion.size(); ++i) {
    trace[i] = energy_from_positions(pos, i, motion.step(), quad);
  }
  return trace;
}

double action(const SampledMotion& motion, const QuadratureRule& quad) {
  return action_of_maps(motion, quad);
}

std::vector<double> variation_derivatives(const SampledMotion& motion, int variation_count,
                                          const QuadratureRule& quad, std::uint64_t seed) {
  if (motion.size() < 9) {
    throw DomainError("force_free_residual: motion too short for bump support");
  }
  if (variation_count < 0) throw DomainError("force_free_residual: negative variation count");
  const auto coords = lifted_coordinates(motion);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> magnitude(0.02, 0.2);
  std::bernoulli_distribution flip(0.5);

  const double t0 = motion.times().front();
  const double span = motion.duration();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(variation_count));
  for (int i = 0; i < variation_count; ++i) {
    const auto k = static_cast<std::size_t>(i % 3);
    const double amplitude = (flip(rng) ? -1.0 : 1.0) * magnitude(rng);
    const auto varied = [&](double s) {
      std::vector<MoebiusMap> maps;
      maps.reserve(motion.size());
      for (std::size_t j = 0; j < motion.size(); ++j) {
        const double tau = (motion.time(j) - t0) / span;
        auto c = coords[j];
        c[k] += s * amplitude * std::sin(pi * tau);
        maps.push_back(map_from_coordinates(c));
      }
      // Endpoints are fixed exactly.
      maps.front() = motion.maps().front();
      maps.back() = motion.maps().back();
      return SampledMotion{motion.times(), std::move(maps)};
    };
    const double plus = action_of_maps(varied(variation_step), quad);
    const double minus = action_of_maps(varied(-variation_step), quad);
    out.push_back((plus - minus) / (2.0 * variation_step));
  }
  return out;
}

double force_free_residual(const SampledMotion& motion, int variation_count,
                           const QuadratureRule& quad, std::uint64_t seed) {
  double worst = 0.0;
  for (const double d : variation_derivatives(motion, variation_count, quad, seed)) {
    worst = std::max(worst, std::abs(d));
  }
  return worst;
}

SampledMotion torus_translate(const SampledMotion& motion, UnitComplex u, UnitComplex v) {
  const MoebiusMap left = MoebiusMap::rotation(u);
  const MoebiusMap right = MoebiusMap::rotation(v.conj());
  std::vector<MoebiusMap> maps;
  maps.reserve(motion.size());
  for (const auto& g : motion.maps()) maps.push_back(compose(left, compose(g, right)));
  return {motion.times(), std::move(maps)};
}

SampledMotion geodesic_motion(const GeodesicPath& path, std::size_t stride) {
  if (stride == 0) throw DomainError("geodesic_motion: stride must be positive");
  std::vector<double> times;
  std::vector<MoebiusMap> maps;
  const auto& smp = path.samples;
  const double s0 = smp.empty() ? 0.0 : smp.front().s;
  for (std::size_t j = 0; j < smp.size(); j += stride) {
    // Keep only samples on the uniform grid.
    const double expected = s0 + static_cast<double>(j) * path.step;
    if (std::abs(smp[j].s - expected) > 1e-9 * path.step) break;
    times.push_back(smp[j].s);
    maps.push_back(to_moebius(smp[j].state.point));
  }
  return {std::move(times), std::move(maps)};
}

SampledMotion bump_perturbed(const SampledMotion& motion, Coordinate coordinate, double amplitude) {
  const auto coords = lifted_coordinates(motion);
  const auto k = static_cast<std::size_t>(coordinate);
  const double t0 = motion.times().front();
  std::vector<MoebiusMap> maps;
  maps.reserve(motion.size());
  for (std::size_t j = 0; j < motion.size(); ++j) {
    const double tau = (motion.time(j) - t0) / motion.duration();
    auto c = coords[j];
    const double bump = std::sin(pi * tau);
    c[k] += amplitude * bump * bump;
    maps.push_back(map_from_coordinates(c));
  }
  return {motion.times(), std::move(maps)};
}

}  // namespace moebius

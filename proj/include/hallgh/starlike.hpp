#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hallgh/quadrature.hpp"
#include "hallgh/specfun.hpp"

namespace hallgh {

using cplx = std::complex<double>;

/// Wraps an angle into (-pi, pi].
double wrap_angle(double t);

struct Atom {
  double node = 0.0;    ///< t_j in (-pi, pi]
  double weight = 0.0;  ///< lambda_j > 0
};

/// Atomic probability measure on the circle; the Herglotz measure dV/2pi of
/// a starlike map. Nodes are wrapped into (-pi, pi], sorted, and atoms whose
/// nodes agree within 1e-14 are merged by adding weights.
class HerglotzMeasure {
 public:
  /// Requires positive weights summing to 1 within 1e-12.
  static HerglotzMeasure create(std::vector<Atom> atoms);
  /// Requires positive weights; rescales them to sum to 1.
  static HerglotzMeasure normalized(std::vector<Atom> atoms);
  static HerglotzMeasure point_mass(double node);

  std::span<const Atom> atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }

  /// Every node shifted by theta0.
  HerglotzMeasure rotated(double theta0) const;

 private:
  explicit HerglotzMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {}
  std::vector<Atom> atoms_;
};

/// f(z) = z prod_j (1 - z e^{-i t_j})^{-(2 - 2 alpha) lambda_j}, the starlike
/// map of order alpha whose transfer function zf'/f has Herglotz measure
/// `measure`. Immutable.
class StarlikeMap {
 public:
  StarlikeMap(HerglotzMeasure measure, OrderAlpha order);

  /// k_alpha(z) = z / (1 - z)^(2 - 2 alpha).
  static StarlikeMap extremal(OrderAlpha order);

  const HerglotzMeasure& measure() const noexcept { return measure_; }
  OrderAlpha order() const noexcept { return order_; }

  /// H(z) = z f'(z) / f(z) = sum_j lambda_j (1 + gamma z e^{-i t_j}) / (1 - z e^{-i t_j}).
  cplx transfer_H(cplx z) const;
  cplx eval_map(cplx z) const;
  /// f'(z) = f(z) H(z) / z; z must be nonzero.
  cplx eval_map_prime(cplx z) const;

  /// |f'(rho e^{i theta})| for every rho, through the dispatched SIMD kernel.
  void ray_speed(double theta, std::span<const double> rho, std::span<double> out) const;
  double ray_speed(double theta, double rho) const;

 private:
  HerglotzMeasure measure_;
  OrderAlpha order_;
  std::vector<double> weights_;
};

/// Arc length of the image of the segment [0, r e^{i theta}].
double ray_length(const StarlikeMap& map, double r, double theta,
                  const QuadOptions& opts = QuadOptions::with_tol(1e-12, 1e-11));

/// ray_length / |f(r e^{i theta})|.
double gh_ratio(const StarlikeMap& map, double r, double theta,
                const QuadOptions& opts = QuadOptions::with_tol(1e-12, 1e-11));

/// Deterministic random measure: nodes uniform on (-pi, pi], weights a
/// normalized exponential draw (uniform on the simplex).
HerglotzMeasure sample_measure(std::uint64_t seed, std::size_t n_atoms);

}  // namespace hallgh

#include "hallgh/starlike.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "hallgh/kernels/ray_speed.hpp"

namespace hallgh {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMergeTol = 1e-14;
constexpr double kMassTol = 1e-12;

void check_weights(const std::vector<Atom>& atoms) {
  if (atoms.empty()) throw std::invalid_argument("measure needs at least one atom");
  for (const Atom& a : atoms) {
    if (!std::isfinite(a.node)) throw std::invalid_argument("atom node must be finite");
    if (!(a.weight > 0.0) || !std::isfinite(a.weight)) {
      throw std::invalid_argument("atom weights must be positive and finite");
    }
  }
}

std::vector<Atom> canonical(std::vector<Atom> atoms) {
  for (Atom& a : atoms) a.node = wrap_angle(a.node);
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& l, const Atom& r) { return l.node < r.node; });
  std::vector<Atom> merged;
  for (const Atom& a : atoms) {
    if (!merged.empty() && std::abs(a.node - merged.back().node) <= kMergeTol) {
      merged.back().weight += a.weight;
    } else {
      merged.push_back(a);
    }
  }
  return merged;
}

double total(const std::vector<Atom>& atoms) {
  double sum = 0.0;
  for (const Atom& a : atoms) sum += a.weight;
  return sum;
}

void check_disk(cplx z) {
  if (!(std::abs(z) < 1.0)) throw std::domain_error("point must lie in the open unit disk");
}

// Per-atom geometry of w = z e^{-i t}, z = rho e^{i phi}, in a form that stays
// accurate as rho -> 1 and phi -> t.
struct AtomGeometry {
  double omc;    // 1 - cos(phi - t)
  double sin_d;  // sin(phi - t)
};

AtomGeometry geometry(double phi, double node) {
  const double delta = phi - node;
  const double half_sin = std::sin(0.5 * delta);
  return {2.0 * half_sin * half_sin, std::sin(delta)};
}

}  // namespace

double wrap_angle(double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("angle must be finite");
  double r = std::remainder(t, 2.0 * kPi);  // [-pi, pi]
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

HerglotzMeasure HerglotzMeasure::create(std::vector<Atom> atoms) {
  check_weights(atoms);
  const double mass = total(atoms);
  if (std::abs(mass - 1.0) > kMassTol) {
    throw std::invalid_argument("measure weights must sum to 1 within 1e-12");
  }
  return HerglotzMeasure(canonical(std::move(atoms)));
}

HerglotzMeasure HerglotzMeasure::normalized(std::vector<Atom> atoms) {
  check_weights(atoms);
  const double mass = total(atoms);
  for (Atom& a : atoms) a.weight /= mass;
  return HerglotzMeasure(canonical(std::move(atoms)));
}

HerglotzMeasure HerglotzMeasure::point_mass(double node) {
  return HerglotzMeasure({Atom{wrap_angle(node), 1.0}});
}

HerglotzMeasure HerglotzMeasure::rotated(double theta0) const {
  std::vector<Atom> shifted(atoms_.begin(), atoms_.end());
  for (Atom& a : shifted) a.node += theta0;
  return HerglotzMeasure(canonical(std::move(shifted)));
}

StarlikeMap::StarlikeMap(HerglotzMeasure measure, OrderAlpha order)
    : measure_(std::move(measure)), order_(order) {
  weights_.reserve(measure_.size());
  for (const Atom& a : measure_.atoms()) weights_.push_back(a.weight);
}

StarlikeMap StarlikeMap::extremal(OrderAlpha order) {
  return StarlikeMap(HerglotzMeasure::point_mass(0.0), order);
}

cplx StarlikeMap::transfer_H(cplx z) const {
  check_disk(z);
  const double rho = std::abs(z);
  const double phi = std::arg(z);
  const double gamma = order_.gamma();
  const double s = 1.0 - rho;
  double re = 0.0, im = 0.0;
  for (const Atom& a : measure_.atoms()) {
    const auto g = geometry(phi, a.node);
    const double d = s * s + 2.0 * rho * g.omc;
    re += a.weight * (s * (1.0 + gamma * rho) + (1.0 - gamma) * rho * g.omc) / d;
    im += a.weight * (1.0 + gamma) * rho * g.sin_d / d;
  }
  return {re, im};
}

cplx StarlikeMap::eval_map(cplx z) const {
  check_disk(z);
  if (z == cplx(0.0, 0.0)) return z;
  const double rho = std::abs(z);
  const double phi = std::arg(z);
  const double s = 1.0 - rho;
  // sum_j lambda_j Log(1 - z e^{-i t_j}); Re(1 - z e^{-i t}) > 0 on the disk.
  double log_mod = 0.0, arg = 0.0;
  for (const Atom& a : measure_.atoms()) {
    const auto g = geometry(phi, a.node);
    const double re = s + rho * g.omc;
    const double im = -rho * g.sin_d;
    log_mod += a.weight * 0.5 * std::log(s * s + 2.0 * rho * g.omc);
    arg += a.weight * std::atan2(im, re);
  }
  const double power = -(2.0 - 2.0 * order_.alpha());
  return z * std::exp(cplx(power * log_mod, power * arg));
}

cplx StarlikeMap::eval_map_prime(cplx z) const {
  if (z == cplx(0.0, 0.0)) {
    throw std::domain_error("eval_map_prime is undefined at z = 0 (f'(0) = 1)");
  }
  return eval_map(z) * transfer_H(z) / z;
}

void StarlikeMap::ray_speed(double theta, std::span<const double> rho,
                            std::span<double> out) const {
  std::vector<double> omc, sin_d;
  omc.reserve(weights_.size());
  sin_d.reserve(weights_.size());
  for (const Atom& a : measure_.atoms()) {
    const auto g = geometry(theta, a.node);
    omc.push_back(g.omc);
    sin_d.push_back(g.sin_d);
  }
  kernels::RaySpeedAtoms atoms{omc, sin_d, weights_, order_.alpha()};
  kernels::ray_speed(atoms, rho, out);
}

double StarlikeMap::ray_speed(double theta, double rho) const {
  double out = 0.0;
  ray_speed(theta, std::span<const double>(&rho, 1), std::span<double>(&out, 1));
  return out;
}

double ray_length(const StarlikeMap& map, double r, double theta,
                  const QuadOptions& opts) {
  if (!(r > 0.0 && r < 1.0)) throw std::domain_error("ray_length requires 0 < r < 1");

  std::vector<double> omc, sin_d, weights;
  for (const Atom& a : map.measure().atoms()) {
    const auto g = geometry(theta, a.node);
    omc.push_back(g.omc);
    sin_d.push_back(g.sin_d);
    weights.push_back(a.weight);
  }
  const kernels::RaySpeedAtoms atoms{omc, sin_d, weights, map.order().alpha()};
  const kernels::Isa isa = kernels::active_isa();
  auto speed = [&](std::span<const double> rho, std::span<double> out) {
    kernels::ray_speed(isa, atoms, rho, out);
  };

  // Graded mesh toward rho = r on the scale 1 - r, where the speed can peak.
  std::vector<double> cuts;
  for (double gap = 1.0 - r; r - gap > 0.5 * r; gap *= 2.0) cuts.push_back(r - gap);
  return integrate_finite_batch(speed, 0.0, r, {}, opts, cuts).value;
}

double gh_ratio(const StarlikeMap& map, double r, double theta, const QuadOptions& opts) {
  const double length = ray_length(map, r, theta, opts);
  const double modulus = std::abs(map.eval_map(std::polar(r, theta)));
  if (!(modulus >= 1e-300)) throw std::domain_error("gh_ratio: |f(r e^{i theta})| vanishes");
  return length / modulus;
}

HerglotzMeasure sample_measure(std::uint64_t seed, std::size_t n_atoms) {
  if (n_atoms == 0) throw std::invalid_argument("sample_measure needs n_atoms >= 1");
  std::mt19937_64 engine(seed);
  constexpr double kUnit = 0x1.0p-53;
  std::vector<Atom> atoms(n_atoms);
  for (Atom& a : atoms) {
    const double u = static_cast<double>(engine() >> 11) * kUnit;               // [0, 1)
    const double v = static_cast<double>((engine() >> 11) + 1) * kUnit;         // (0, 1]
    a.node = kPi - 2.0 * kPi * u;
    a.weight = -std::log(v);
    if (!(a.weight > 0.0)) a.weight = kUnit;  // v == 1
  }
  return HerglotzMeasure::normalized(std::move(atoms));
}

}  // namespace hallgh

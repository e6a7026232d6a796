#include <cmath>
#include <cstddef>

#include "hallgh/kernels/ray_speed.hpp"

namespace hallgh::kernels {

void ray_speed_scalar(const RaySpeedAtoms& atoms, std::span<const double> rho,
                      std::span<double> out) {
  const double gamma = 1.0 - 2.0 * atoms.alpha;
  const double one_plus_gamma = 1.0 + gamma;
  const double one_minus_gamma = 1.0 - gamma;
  const std::size_t n_atoms = atoms.weights.size();
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const double r = rho[i];
    const double s = 1.0 - r;
    const double radial = s * s;
    const double re_base = s * (1.0 + gamma * r);
    double log_sum = 0.0, re = 0.0, im = 0.0;
    for (std::size_t j = 0; j < n_atoms; ++j) {
      const double lambda = atoms.weights[j];
      const double omc = atoms.one_minus_cos[j];
      // |1 - w|^2 = (1 - rho)^2 + 2 rho (1 - cos delta)
      const double d = radial + 2.0 * r * omc;
      const double inv_d = lambda / d;
      log_sum += lambda * std::log(d);
      // (1 + gamma w)(1 - conj w) = (1 - rho)(1 + gamma rho) + (1 - gamma) rho (1 - cos)
      //                             + i (1 + gamma) rho sin
      re += (re_base + one_minus_gamma * r * omc) * inv_d;
      im += one_plus_gamma * r * atoms.sin_delta[j] * inv_d;
    }
    out[i] = std::exp(-(1.0 - atoms.alpha) * log_sum) * std::sqrt(re * re + im * im);
  }
}

}  // namespace hallgh::kernels

#pragma once

// Batched evaluation of the ray speed |f'(rho e^{i theta})| for a starlike
// map given by an atomic Herglotz measure. Per atom j the caller supplies
// the direction offset delta_j = theta - t_j through
//
//   one_minus_cos[j] = 1 - cos(delta_j)   (computed as 2 sin^2(delta_j / 2))
//   sin_delta[j]     = sin(delta_j)
//
// and with w_j = rho e^{i delta_j}, d_j = |1 - w_j|^2 the kernel returns
//
//   |f'| = exp(-(1 - alpha) sum_j lambda_j ln d_j) * |sum_j lambda_j (1 + gamma w_j) / (1 - w_j)|.
//
// The scalar kernel is the reference; the AVX2 kernel must agree with it to
// a few ulp (see tests/test_kernels.cpp).

#include <span>
#include <string_view>

namespace hallgh::kernels {

struct RaySpeedAtoms {
  std::span<const double> one_minus_cos;
  std::span<const double> sin_delta;
  std::span<const double> weights;
  double alpha = 0.0;
};

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

/// True if this build has the variant and the running CPU can execute it.
bool isa_available(Isa isa);

/// Variant used by ray_speed(): the best available one, unless the
/// environment variable HALLGH_SIMD=scalar forces the reference kernel.
Isa active_isa();

void ray_speed_scalar(const RaySpeedAtoms& atoms, std::span<const double> rho,
                      std::span<double> out);

/// Throws std::runtime_error if AVX2 is not available.
void ray_speed_avx2(const RaySpeedAtoms& atoms, std::span<const double> rho,
                    std::span<double> out);

void ray_speed(Isa isa, const RaySpeedAtoms& atoms, std::span<const double> rho,
               std::span<double> out);

inline void ray_speed(const RaySpeedAtoms& atoms, std::span<const double> rho,
                      std::span<double> out) {
  ray_speed(active_isa(), atoms, rho, out);
}

/// Natural log of four doubles at once, exposed for testing the AVX2 path.
/// Inputs must be positive normal numbers. Throws if AVX2 is not available.
void log4_avx2(const double* in, double* out);

}  // namespace hallgh::kernels

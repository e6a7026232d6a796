#include <cstdlib>
#include <stdexcept>
#include <string_view>

#include "hallgh/kernels/ray_speed.hpp"

namespace hallgh::kernels {

#if defined(HALLGH_HAVE_AVX2)
namespace detail {
void ray_speed(const RaySpeedAtoms& atoms, std::span<const double> rho,
               std::span<double> out);
void log4(const double* in, double* out);
}  // namespace detail
#endif

namespace {

bool cpu_has_avx2() {
#if defined(HALLGH_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa pick_isa() {
  if (const char* forced = std::getenv("HALLGH_SIMD")) {
    if (std::string_view(forced) == "scalar") return Isa::scalar;
  }
  return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

void require_avx2() {
  if (!isa_available(Isa::avx2)) {
    throw std::runtime_error("AVX2 kernel requested but not available");
  }
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  if (isa == Isa::scalar) return true;
  static const bool avx2 = cpu_has_avx2();
  return avx2;
}

Isa active_isa() {
  static const Isa isa = pick_isa();
  return isa;
}

void ray_speed_avx2(const RaySpeedAtoms& atoms, std::span<const double> rho,
                    std::span<double> out) {
  require_avx2();
#if defined(HALLGH_HAVE_AVX2)
  detail::ray_speed(atoms, rho, out);
#else
  (void)atoms;
  (void)rho;
  (void)out;
#endif
}

void log4_avx2(const double* in, double* out) {
  require_avx2();
#if defined(HALLGH_HAVE_AVX2)
  detail::log4(in, out);
#else
  (void)in;
  (void)out;
#endif
}

void ray_speed(Isa isa, const RaySpeedAtoms& atoms, std::span<const double> rho,
               std::span<double> out) {
  if (rho.size() != out.size()) {
    throw std::invalid_argument("ray_speed: rho and out sizes differ");
  }
  if (isa == Isa::avx2) {
    ray_speed_avx2(atoms, rho, out);
  } else {
    ray_speed_scalar(atoms, rho, out);
  }
}

}  // namespace hallgh::kernels

// Compiled with -mavx2 -mfma; only entered after a runtime CPU check.
#include "hallgh/kernels/ray_speed.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>

namespace hallgh::kernels {
namespace detail {

namespace {

// log x = e ln 2 + log m with m in [sqrt(1/2), sqrt(2)), and
// log m = 2 atanh(s), s = (m - 1) / (m + 1), |s| <= 0.1716.
inline __m256d log_pd(__m256d x) {
  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i biased = _mm256_srli_epi64(bits, 52);
  // Exact int64 -> double for values below 2^52.
  const __m256i magic_bits = _mm256_set1_epi64x(0x4330000000000000LL);
  const __m256d two52 = _mm256_set1_pd(4503599627370496.0);
  __m256d e = _mm256_sub_pd(
      _mm256_castsi256_pd(_mm256_or_si256(biased, magic_bits)), two52);
  e = _mm256_sub_pd(e, _mm256_set1_pd(1023.0));

  const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
  const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000LL);
  __m256d m = _mm256_castsi256_pd(
      _mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));
  const __m256d sqrt2 = _mm256_set1_pd(1.41421356237309504880);
  const __m256d big = _mm256_cmp_pd(m, sqrt2, _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
  e = _mm256_add_pd(e, _mm256_and_pd(big, _mm256_set1_pd(1.0)));

  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d f = _mm256_sub_pd(m, one);
  const __m256d s = _mm256_div_pd(f, _mm256_add_pd(m, one));
  const __m256d z = _mm256_mul_pd(s, s);

  // sum_{k=0}^{10} z^k / (2k + 3)
  __m256d p = _mm256_set1_pd(1.0 / 23.0);
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 21.0));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 19.0));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 17.0));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 15.0));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 13.0));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 11.0));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 9.0));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 7.0));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 5.0));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 3.0));
  const __m256d r = _mm256_mul_pd(z, p);

  const __m256d two_s = _mm256_add_pd(s, s);
  const __m256d log_m = _mm256_fmadd_pd(two_s, r, two_s);

  const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
  return _mm256_fmadd_pd(e, ln2_hi, _mm256_fmadd_pd(e, ln2_lo, log_m));
}

}  // namespace

void log4(const double* in, double* out) {
  _mm256_storeu_pd(out, log_pd(_mm256_loadu_pd(in)));
}

void ray_speed(const RaySpeedAtoms& atoms, std::span<const double> rho,
               std::span<double> out) {
  const double gamma = 1.0 - 2.0 * atoms.alpha;
  const __m256d v_gamma = _mm256_set1_pd(gamma);
  const __m256d v_one_plus_gamma = _mm256_set1_pd(1.0 + gamma);
  const __m256d v_one_minus_gamma = _mm256_set1_pd(1.0 - gamma);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  const std::size_t n_atoms = atoms.weights.size();
  const double scale = -(1.0 - atoms.alpha);

  alignas(32) std::array<double, 4> lane_rho{};
  alignas(32) std::array<double, 4> lane_log{};
  alignas(32) std::array<double, 4> lane_mod{};

  for (std::size_t i = 0; i < rho.size(); i += 4) {
    const std::size_t width = rho.size() - i < 4 ? rho.size() - i : 4;
    for (std::size_t l = 0; l < 4; ++l) lane_rho[l] = l < width ? rho[i + l] : 0.0;

    const __m256d r = _mm256_load_pd(lane_rho.data());
    const __m256d s = _mm256_sub_pd(one, r);
    const __m256d radial = _mm256_mul_pd(s, s);
    const __m256d re_base = _mm256_mul_pd(s, _mm256_add_pd(one, _mm256_mul_pd(v_gamma, r)));
    const __m256d two_r = _mm256_mul_pd(two, r);
    const __m256d r_sin_scale = _mm256_mul_pd(v_one_plus_gamma, r);
    const __m256d r_omc_scale = _mm256_mul_pd(v_one_minus_gamma, r);

    __m256d log_sum = _mm256_setzero_pd();
    __m256d re = _mm256_setzero_pd();
    __m256d im = _mm256_setzero_pd();
    for (std::size_t j = 0; j < n_atoms; ++j) {
      const __m256d lambda = _mm256_set1_pd(atoms.weights[j]);
      const __m256d omc = _mm256_set1_pd(atoms.one_minus_cos[j]);
      const __m256d sin_d = _mm256_set1_pd(atoms.sin_delta[j]);
      const __m256d d = _mm256_add_pd(radial, _mm256_mul_pd(two_r, omc));
      const __m256d inv_d = _mm256_div_pd(lambda, d);
      log_sum = _mm256_add_pd(log_sum, _mm256_mul_pd(lambda, log_pd(d)));
      const __m256d re_num = _mm256_add_pd(re_base, _mm256_mul_pd(r_omc_scale, omc));
      re = _mm256_add_pd(re, _mm256_mul_pd(re_num, inv_d));
      im = _mm256_add_pd(im, _mm256_mul_pd(_mm256_mul_pd(r_sin_scale, sin_d), inv_d));
    }
    const __m256d mod = _mm256_sqrt_pd(
        _mm256_add_pd(_mm256_mul_pd(re, re), _mm256_mul_pd(im, im)));
    _mm256_store_pd(lane_log.data(), log_sum);
    _mm256_store_pd(lane_mod.data(), mod);
    for (std::size_t l = 0; l < width; ++l) {
      out[i + l] = std::exp(scale * lane_log[l]) * lane_mod[l];
    }
  }
}

}  // namespace detail
}  // namespace hallgh::kernels

#endif

// AVX2/FMA variants of the link-budget kernels. Compiled with -mavx2 -mfma;
// only reached through dispatch after a CPU feature check.

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "mbnsim/kernels.hpp"

namespace mbnsim::kernels::avx2 {
namespace {

constexpr std::size_t kLanes = 4;

inline __m256d poly(__m256d x, __m256d c0, __m256d c1) { return _mm256_fmadd_pd(c0, x, c1); }

// Cephes-style exp: x = n ln2 + r with a Pade form for e^r on |r| <= ln2/2.
inline __m256d exp4(__m256d x) {
  const __m256d hi = _mm256_set1_pd(709.0);
  const __m256d lo = _mm256_set1_pd(-708.0);
  x = _mm256_max_pd(_mm256_min_pd(x, hi), lo);

  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(1.4426950408889634073599)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, _mm256_set1_pd(6.93145751953125E-1), x);
  r = _mm256_fnmadd_pd(n, _mm256_set1_pd(1.42860682030941723212E-6), r);

  const __m256d rr = _mm256_mul_pd(r, r);
  __m256d p = poly(rr, _mm256_set1_pd(1.26177193074810590878E-4),
                   _mm256_set1_pd(3.02994407707441961300E-2));
  p = poly(rr, p, _mm256_set1_pd(9.99999999999999999910E-1));
  p = _mm256_mul_pd(p, r);
  __m256d q = poly(rr, _mm256_set1_pd(3.00198505138664455042E-6),
                   _mm256_set1_pd(2.52448340349684104192E-3));
  q = poly(rr, q, _mm256_set1_pd(2.27265548208155028766E-1));
  q = poly(rr, q, _mm256_set1_pd(2.00000000000000000009E0));
  __m256d e = _mm256_div_pd(p, _mm256_sub_pd(q, p));
  e = _mm256_fmadd_pd(_mm256_set1_pd(2.0), e, _mm256_set1_pd(1.0));

  // 2^n by building the exponent field directly; |n| <= 1023 after clamping.
  const __m256d magic = _mm256_set1_pd(6755399441055744.0);  // 2^52 + 2^51
  __m256i ni = _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(n, magic)),
                                _mm256_castpd_si256(magic));
  ni = _mm256_slli_epi64(_mm256_add_epi64(ni, _mm256_set1_epi64x(1023)), 52);
  return _mm256_mul_pd(e, _mm256_castsi256_pd(ni));
}

// fdlibm-style log for positive normal inputs: frexp, fold the mantissa into
// [sqrt(1/2), sqrt(2)), then log(1+f) = f - f^2/2 + s (f^2/2 + R(s^2)), s = f/(2+f).
inline __m256d log4(__m256d x) {
  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i exp_bits = _mm256_and_si256(_mm256_srli_epi64(bits, 52), _mm256_set1_epi64x(0x7ff));
  // biased exponent as a double via the 2^52 trick, then rebased so m lands in [0.5, 1)
  const __m256d two52 = _mm256_set1_pd(4503599627370496.0);
  __m256d e = _mm256_sub_pd(
      _mm256_castsi256_pd(_mm256_or_si256(exp_bits, _mm256_castpd_si256(two52))), two52);
  e = _mm256_sub_pd(e, _mm256_set1_pd(1022.0));

  __m256d m = _mm256_castsi256_pd(
      _mm256_or_si256(_mm256_and_si256(bits, _mm256_set1_epi64x(0x800FFFFFFFFFFFFFLL)),
                      _mm256_set1_epi64x(0x3FE0000000000000LL)));

  const __m256d small = _mm256_cmp_pd(m, _mm256_set1_pd(0.70710678118654752440), _CMP_LT_OQ);
  e = _mm256_sub_pd(e, _mm256_and_pd(small, _mm256_set1_pd(1.0)));
  m = _mm256_add_pd(m, _mm256_and_pd(small, m));

  const __m256d f = _mm256_sub_pd(m, _mm256_set1_pd(1.0));
  const __m256d s = _mm256_div_pd(f, _mm256_add_pd(f, _mm256_set1_pd(2.0)));
  const __m256d z = _mm256_mul_pd(s, s);
  __m256d r = poly(z, _mm256_set1_pd(1.479819860511658591e-01), _mm256_set1_pd(1.531383769920937332e-01));
  r = poly(z, r, _mm256_set1_pd(1.818357216161805012e-01));
  r = poly(z, r, _mm256_set1_pd(2.222219843214978396e-01));
  r = poly(z, r, _mm256_set1_pd(2.857142874366239149e-01));
  r = poly(z, r, _mm256_set1_pd(3.999999999940941908e-01));
  r = poly(z, r, _mm256_set1_pd(6.666666666666735130e-01));
  r = _mm256_mul_pd(r, z);

  const __m256d hfsq = _mm256_mul_pd(_mm256_set1_pd(0.5), _mm256_mul_pd(f, f));
  // hfsq - (s (hfsq + R) + e ln2_lo), then subtract f
  __m256d t = _mm256_fmadd_pd(s, _mm256_add_pd(hfsq, r),
                              _mm256_mul_pd(e, _mm256_set1_pd(1.90821492927058770002e-10)));
  t = _mm256_sub_pd(_mm256_sub_pd(hfsq, t), f);
  return _mm256_fmsub_pd(e, _mm256_set1_pd(6.93147180369123816490e-01), t);
}

}  // namespace

void distances(const double* xs, const double* ys, std::size_t n, double ux, double uy,
               double min_distance, double* out) noexcept {
  const __m256d vx = _mm256_set1_pd(ux);
  const __m256d vy = _mm256_set1_pd(uy);
  const __m256d vmin = _mm256_set1_pd(min_distance);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), vy);
    const __m256d d2 = _mm256_fmadd_pd(dx, dx, _mm256_mul_pd(dy, dy));
    _mm256_storeu_pd(out + i, _mm256_max_pd(_mm256_sqrt_pd(d2), vmin));
  }
  scalar::distances(xs + i, ys + i, n - i, ux, uy, min_distance, out + i);
}

void power_law_rx(const double* dist, const double* fading, std::size_t n, double gain,
                  double exponent, double* out) noexcept {
  const __m256d vg = _mm256_set1_pd(gain);
  const __m256d vneg = _mm256_set1_pd(-exponent);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d pl = exp4(_mm256_mul_pd(vneg, log4(_mm256_loadu_pd(dist + i))));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_mul_pd(vg, pl), _mm256_loadu_pd(fading + i)));
  }
  scalar::power_law_rx(dist + i, fading + i, n - i, gain, exponent, out + i);
}

void absorbed_spreading_rx(const double* dist, std::size_t n, double gain, double absorption,
                           double* out) noexcept {
  const __m256d vg = _mm256_set1_pd(gain);
  const __m256d vk = _mm256_set1_pd(-absorption);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d d = _mm256_loadu_pd(dist + i);
    const __m256d spread = _mm256_div_pd(vg, _mm256_mul_pd(d, d));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(spread, exp4(_mm256_mul_pd(vk, d))));
  }
  scalar::absorbed_spreading_rx(dist + i, n - i, gain, absorption, out + i);
}

void exp(const double* in, std::size_t n, double* out) noexcept {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) _mm256_storeu_pd(out + i, exp4(_mm256_loadu_pd(in + i)));
  scalar::exp(in + i, n - i, out + i);
}

void log(const double* in, std::size_t n, double* out) noexcept {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) _mm256_storeu_pd(out + i, log4(_mm256_loadu_pd(in + i)));
  scalar::log(in + i, n - i, out + i);
}

}  // namespace mbnsim::kernels::avx2

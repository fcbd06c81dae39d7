#include <immintrin.h>

#include "bogomps/kernels.hpp"

namespace bogomps::kernels::avx2 {

namespace {

// (c_r, c_i) lane-wise times x, for two packed complexes.
inline __m256d cmul(__m256d cr, __m256d ci, __m256d x) {
  const __m256d xs = _mm256_permute_pd(x, 0b0101);
  return _mm256_fmaddsub_pd(cr, x, _mm256_mul_pd(ci, xs));
}

}  // namespace

void axpy(cplx* y, const cplx* x, cplx a, std::size_t n) {
  auto* yd = reinterpret_cast<double*>(y);
  const auto* xd = reinterpret_cast<const double*>(x);
  const __m256d ar = _mm256_set1_pd(a.real()), ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x0 = _mm256_loadu_pd(xd + 2 * i), x1 = _mm256_loadu_pd(xd + 2 * i + 4);
    const __m256d y0 = _mm256_loadu_pd(yd + 2 * i), y1 = _mm256_loadu_pd(yd + 2 * i + 4);
    _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(y0, cmul(ar, ai, x0)));
    _mm256_storeu_pd(yd + 2 * i + 4, _mm256_add_pd(y1, cmul(ar, ai, x1)));
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d x0 = _mm256_loadu_pd(xd + 2 * i), y0 = _mm256_loadu_pd(yd + 2 * i);
    _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(y0, cmul(ar, ai, x0)));
  }
  if (i < n) scalar::axpy(y + i, x + i, a, n - i);
}

void indexed_axpy(cplx* y, const cplx* x, const std::uint32_t* out, const std::uint32_t* in, const double* w, cplx a,
                  std::size_t n) {
  auto* yd = reinterpret_cast<double*>(y);
  const auto* xd = reinterpret_cast<const double*>(x);
  const __m256d ar = _mm256_set1_pd(a.real()), ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_set_m128d(_mm_loadu_pd(xd + 2 * in[i + 1]), _mm_loadu_pd(xd + 2 * in[i]));
    const __m256d wv = _mm256_set_pd(w[i + 1], w[i + 1], w[i], w[i]);
    const __m256d prod = cmul(_mm256_mul_pd(ar, wv), _mm256_mul_pd(ai, wv), xv);
    double* y0 = yd + 2 * out[i];
    double* y1 = yd + 2 * out[i + 1];
    _mm_storeu_pd(y0, _mm_add_pd(_mm_loadu_pd(y0), _mm256_castpd256_pd128(prod)));
    _mm_storeu_pd(y1, _mm_add_pd(_mm_loadu_pd(y1), _mm256_extractf128_pd(prod, 1)));
  }
  if (i < n) scalar::indexed_axpy(y, x, out + i, in + i, w + i, a, n - i);
}

}  // namespace bogomps::kernels::avx2

#include <arm_neon.h>

#include "bogomps/kernels.hpp"

namespace bogomps::kernels::neon {

namespace {

inline float64x2_t cmul(float64x2_t cr, float64x2_t ci_signed, float64x2_t x) {
  // (cr·xr - ci·xi, cr·xi + ci·xr) with ci_signed = (-ci, ci)
  const float64x2_t xs = vextq_f64(x, x, 1);
  return vfmaq_f64(vmulq_f64(cr, x), ci_signed, xs);
}

}  // namespace

void axpy(cplx* y, const cplx* x, cplx a, std::size_t n) {
  auto* yd = reinterpret_cast<double*>(y);
  const auto* xd = reinterpret_cast<const double*>(x);
  const float64x2_t cr = vdupq_n_f64(a.real());
  const double cis[2] = {-a.imag(), a.imag()};
  const float64x2_t ci = vld1q_f64(cis);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t xv = vld1q_f64(xd + 2 * i);
    vst1q_f64(yd + 2 * i, vaddq_f64(vld1q_f64(yd + 2 * i), cmul(cr, ci, xv)));
  }
}

void indexed_axpy(cplx* y, const cplx* x, const std::uint32_t* out, const std::uint32_t* in, const double* w, cplx a,
                  std::size_t n) {
  auto* yd = reinterpret_cast<double*>(y);
  const auto* xd = reinterpret_cast<const double*>(x);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t cr = vdupq_n_f64(a.real() * w[i]);
    const double cis[2] = {-a.imag() * w[i], a.imag() * w[i]};
    const float64x2_t xv = vld1q_f64(xd + 2 * in[i]);
    double* yo = yd + 2 * out[i];
    vst1q_f64(yo, vaddq_f64(vld1q_f64(yo), cmul(cr, vld1q_f64(cis), xv)));
  }
}

}  // namespace bogomps::kernels::neon

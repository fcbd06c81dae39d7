#include "bogomps/kernels.hpp"

namespace bogomps::kernels::scalar {

// Explicit real arithmetic.
void axpy(cplx* y, const cplx* x, cplx a, std::size_t n) {
  const double ar = a.real(), ai = a.imag();
  auto* yd = reinterpret_cast<double*>(y);
  const auto* xd = reinterpret_cast<const double*>(x);
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = xd[2 * i], xi = xd[2 * i + 1];
    yd[2 * i] += ar * xr - ai * xi;
    yd[2 * i + 1] += ar * xi + ai * xr;
  }
}

void indexed_axpy(cplx* y, const cplx* x, const std::uint32_t* out, const std::uint32_t* in, const double* w, cplx a,
                  std::size_t n) {
  const double ar = a.real(), ai = a.imag();
  auto* yd = reinterpret_cast<double*>(y);
  const auto* xd = reinterpret_cast<const double*>(x);
  for (std::size_t i = 0; i < n; ++i) {
    const double cr = ar * w[i], ci = ai * w[i];
    const double xr = xd[2 * in[i]], xi = xd[2 * in[i] + 1];
    yd[2 * out[i]] += cr * xr - ci * xi;
    yd[2 * out[i] + 1] += cr * xi + ci * xr;
  }
}

}  // namespace bogomps::kernels::scalar

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

namespace bogomps::kernels {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2, Neon };

// y[i] += a·x[i]
using AxpyFn = void (*)(cplx* y, const cplx* x, cplx a, std::size_t n);
// y[out[i]] += a·w[i]·x[in[i]]; out indices must be distinct within one call, and
// no in[i] may equal an out[j] with j < i when y aliases x.
using IndexedAxpyFn = void (*)(cplx* y, const cplx* x, const std::uint32_t* out, const std::uint32_t* in,
                               const double* w, cplx a, std::size_t n);

struct Table {
  Isa isa;
  AxpyFn axpy;
  IndexedAxpyFn indexed_axpy;
};

const char* isa_name(Isa isa);
bool available(Isa isa);
// Best ISA of this CPU, unless BOGOMPS_KERNELS names another available one.
Isa detect();
const Table& table(Isa isa);
const Table& active();
// Overrides the dispatch; throws if the ISA is unavailable.
void select(Isa isa);

namespace scalar {
void axpy(cplx* y, const cplx* x, cplx a, std::size_t n);
void indexed_axpy(cplx* y, const cplx* x, const std::uint32_t* out, const std::uint32_t* in, const double* w, cplx a,
                  std::size_t n);
}  // namespace scalar

namespace avx2 {
void axpy(cplx* y, const cplx* x, cplx a, std::size_t n);
void indexed_axpy(cplx* y, const cplx* x, const std::uint32_t* out, const std::uint32_t* in, const double* w, cplx a,
                  std::size_t n);
}  // namespace avx2

namespace neon {
void axpy(cplx* y, const cplx* x, cplx a, std::size_t n);
void indexed_axpy(cplx* y, const cplx* x, const std::uint32_t* out, const std::uint32_t* in, const double* w, cplx a,
                  std::size_t n);
}  // namespace neon

}  // namespace bogomps::kernels

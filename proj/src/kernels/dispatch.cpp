#include <atomic>
#include <cstdlib>
#include <cstring>

#include "bogomps/error.hpp"
#include "bogomps/kernels.hpp"

namespace bogomps::kernels {

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

bool available(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(BOGOMPS_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(BOGOMPS_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa detect() {
  if (const char* env = std::getenv("BOGOMPS_KERNELS")) {
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon})
      if (std::strcmp(env, isa_name(isa)) == 0 && available(isa)) return isa;
  }
  if (available(Isa::Avx2)) return Isa::Avx2;
  if (available(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

const Table& table(Isa isa) {
  static const Table scalar_table{Isa::Scalar, scalar::axpy, scalar::indexed_axpy};
#if defined(BOGOMPS_HAVE_AVX2)
  static const Table avx2_table{Isa::Avx2, avx2::axpy, avx2::indexed_axpy};
#endif
#if defined(BOGOMPS_HAVE_NEON)
  static const Table neon_table{Isa::Neon, neon::axpy, neon::indexed_axpy};
#endif
  if (!available(isa)) throw Error(ErrorCode::InvalidArgument, std::string("kernel ISA unavailable: ") + isa_name(isa));
  switch (isa) {
#if defined(BOGOMPS_HAVE_AVX2)
    case Isa::Avx2: return avx2_table;
#endif
#if defined(BOGOMPS_HAVE_NEON)
    case Isa::Neon: return neon_table;
#endif
    default: return scalar_table;
  }
}

namespace {

std::atomic<const Table*>& current() {
  static std::atomic<const Table*> ptr{&table(detect())};
  return ptr;
}

}  // namespace

const Table& active() { return *current().load(std::memory_order_acquire); }

void select(Isa isa) { current().store(&table(isa), std::memory_order_release); }

}  // namespace bogomps::kernels

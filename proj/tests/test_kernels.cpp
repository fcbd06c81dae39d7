#include <doctest.h>

#include <numeric>
#include <random>

#include "bogomps/kernels.hpp"

using namespace bogomps::kernels;

namespace {

std::vector<cplx> random_vec(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  std::vector<cplx> v(n);
  for (auto& x : v) x = cplx(nd(rng), nd(rng));
  return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::vector<Isa> simd_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Avx2, Isa::Neon})
    if (available(isa)) out.push_back(isa);
  return out;
}

}  // namespace

TEST_CASE("scalar kernels compute the definition") {
  std::mt19937_64 rng(1);
  auto y = random_vec(7, rng);
  const auto x = random_vec(7, rng);
  const auto y0 = y;
  const cplx a(0.3, -1.2);
  scalar::axpy(y.data(), x.data(), a, 7);
  for (int i = 0; i < 7; ++i) CHECK(std::abs(y[i] - (y0[i] + a * x[i])) < 1e-15);
}

TEST_CASE("SIMD kernels agree with scalar kernels") {
  std::mt19937_64 rng(2);
  const auto isas = simd_isas();
  if (isas.empty()) MESSAGE("no SIMD kernel available on this CPU; only scalar tested");
  for (Isa isa : isas) {
    const Table& t = table(isa);
    for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 8u, 17u, 64u, 1001u}) {
      const auto x = random_vec(n, rng);
      auto ys = random_vec(n, rng);
      auto yv = ys;
      const cplx a(0.7, 0.2);
      scalar::axpy(ys.data(), x.data(), a, n);
      t.axpy(yv.data(), x.data(), a, n);
      CHECK(max_diff(ys, yv) <= 1e-14);

      // in-place gather with descending distinct out indices
      std::vector<std::uint32_t> out(n), in(n);
      std::vector<double> w(n);
      std::iota(out.begin(), out.end(), 0u);
      std::reverse(out.begin(), out.end());
      std::uniform_real_distribution<double> uni(0.5, 3.0);
      for (std::size_t i = 0; i < n; ++i) {
        in[i] = out[i] / 2;
        w[i] = uni(rng);
      }
      auto zs = random_vec(n, rng);
      auto zv = zs;
      const auto src = random_vec(n, rng);
      scalar::indexed_axpy(zs.data(), src.data(), out.data(), in.data(), w.data(), a, n);
      t.indexed_axpy(zv.data(), src.data(), out.data(), in.data(), w.data(), a, n);
      CHECK(max_diff(zs, zv) <= 1e-14);
    }
  }
}

TEST_CASE("dispatch selection") {
  CHECK(available(Isa::Scalar));
  const Isa before = active().isa;
  select(Isa::Scalar);
  CHECK(active().isa == Isa::Scalar);
  CHECK(std::string(isa_name(Isa::Scalar)) == "scalar");
  select(before);
  CHECK(active().isa == before);
  if (!available(Isa::Neon)) CHECK_THROWS(select(Isa::Neon));
}

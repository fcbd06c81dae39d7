#include <doctest.h>

#include "bogomps/convert.hpp"
#include "bogomps/error.hpp"
#include "bogomps/mps.hpp"
#include "helpers.hpp"

using namespace bogomps;

namespace {

Mps product(const std::vector<std::vector<cplx>>& sites) {
  Mps psi;
  for (const auto& s : sites) {
    CoefficientBlock c(1, s.size(), 1);
    for (std::size_t p = 0; p < s.size(); ++p) c.at(0, p, 0) = s[p];
    psi.tensors.push_back(c);
  }
  psi.eps_per_bond.assign(sites.size() - 1, 0.0);
  return psi;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

ConvertOptions fixed(int bond, int d) {
  ConvertOptions o;
  o.bond_dim = bond;
  o.local_dim = d;
  return o;
}

}  // namespace

TEST_CASE("vacuum conversion is the product vacuum") {
  const auto conv = convert(CovarianceMatrix::unchecked(0.5 * RealMatrix::Identity(8, 8)), fixed(5, 3));
  CHECK(conv.mps.n_sites() == 4);
  CHECK(std::abs(amplitude(conv.mps, {0, 0, 0, 0}) - 1.0) < 1e-14);
  CHECK(std::abs(amplitude(conv.mps, {1, 0, 0, 0})) == 0.0);
  CHECK(norm_squared(conv.mps) == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& s : sample(conv.mps, 3, 50)) CHECK(s == std::vector<int>{0, 0, 0, 0});
}

TEST_CASE("two-mode squeezed amplitudes") {
  const double r = 0.5;
  const auto conv = convert(two_mode_squeezed(r), fixed(8, 8));
  CHECK(std::abs(norm_squared(conv.mps) - 1.0) < 1e-8);
  const cplx a0 = amplitude(conv.mps, {0, 0});
  for (int n = 1; n < 8; ++n) {
    CHECK(std::abs(amplitude(conv.mps, {n, n}) / a0 - std::pow(std::tanh(r), n)) < 1e-10);
    CHECK(std::abs(amplitude(conv.mps, {n, n - 1})) < 1e-14);
  }
  CHECK(conv.mps.max_eps() == doctest::Approx(std::pow(std::tanh(r), 16)).epsilon(1e-9));
}

TEST_CASE("shape errors") {
  Mps bad = product({{1.0, 0.0}, {1.0, 0.0}});
  bad.tensors[1] = CoefficientBlock(2, 2, 1);
  CHECK(code_of([&] { bad.check_shapes(); }) == ErrorCode::DimensionMismatch);
  Mps ok = product({{1.0, 0.0}, {1.0, 0.0}});
  CHECK(code_of([&] { amplitude(ok, {2, 0}); }) == ErrorCode::OccupationOutOfRange);
  CHECK(code_of([&] { amplitude(ok, {0}); }) == ErrorCode::ShapeMismatch);
  CHECK(code_of([&] { fidelity(ok, product({{1.0, 0.0}})); }) == ErrorCode::ShapeMismatch);
  const auto dc = decompose_chain(two_mode_squeezed(0.3));
  CHECK(code_of([&] { assemble_mps(dc, {CoefficientBlock(1, 2, 1)}, {}); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("fidelity basics") {
  const auto g = synthetic_gbs(4, {0.5, 0.4}, 3, 1.0);
  const auto psi = convert(g, fixed(16, 5)).mps;
  CHECK(fidelity(psi, psi) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(fidelity(product({{1.0, 0.0}, {0.0, 1.0}}), product({{0.0, 1.0}, {1.0, 0.0}})) == 0.0);
  Mps a = product({{1.0, 1.0}, {2.0, 0.0}});
  normalize(a);
  CHECK(norm_squared(a) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("fidelity across bond dimensions tracks the truncation error") {
  const auto g = synthetic_gbs(6, {0.8, 0.7, 0.6}, 5, 1.0);
  const auto small = convert(g, fixed(64, 4));
  const auto large = convert(g, fixed(256, 4));
  const double eps = small.mps.max_eps();
  CHECK(eps > 0.0);
  CHECK(fidelity(small.mps, large.mps) >= 1.0 - 5.0 * eps);
}

TEST_CASE("converted states have even photon parity and unit norm") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto g = synthetic_gbs(4, {0.6, 0.5}, seed, 1.0);
    const auto psi = convert(g, fixed(40, 5)).mps;
    CHECK(std::abs(norm_squared(psi) - 1.0) < 1e-8);
    std::vector<int> occ(4, 0);
    double odd = 0.0, even = 0.0;
    for (int idx = 0; idx < 625; ++idx) {
      int rem = idx, tot = 0;
      for (int j = 3; j >= 0; --j) {
        occ[j] = rem % 5;
        rem /= 5;
        tot += occ[j];
      }
      const double a = std::abs(amplitude(psi, occ));
      (tot % 2 ? odd : even) = std::max(tot % 2 ? odd : even, a);
    }
    CHECK(odd < 1e-8);
    CHECK(even > 0.1);
  }
}

TEST_CASE("sampling is deterministic and matches mean photon numbers") {
  const auto g = synthetic_gbs(3, {0.4, 0.3}, 9, 1.0);
  const auto psi = convert(g, fixed(60, 10)).mps;
  CHECK(sample(psi, 42, 200) == sample(psi, 42, 200));
  CHECK(sample(psi, 42, 200) != sample(psi, 43, 200));
  const std::size_t n = 100000;
  const auto s = sample(psi, 7, n);
  const auto expect = mode_photon_numbers(g.matrix());
  for (int j = 0; j < 3; ++j) {
    double m = 0.0, m2 = 0.0;
    for (const auto& x : s) {
      m += x[j];
      m2 += static_cast<double>(x[j]) * x[j];
    }
    m /= n;
    const double se = std::sqrt((m2 / n - m * m) / n);
    CHECK(std::abs(m - expect[j]) <= 3.0 * se);
  }
}

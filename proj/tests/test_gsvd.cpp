#include <doctest.h>

#include "bogomps/error.hpp"
#include "bogomps/gsvd.hpp"
#include "helpers.hpp"

using namespace bogomps;

TEST_CASE("gsvd_step on vacuum") {
  const auto vac = CovarianceMatrix::unchecked(0.5 * RealMatrix::Identity(6, 6));
  const auto st = gsvd_step(vac, 1);
  CHECK(st.bond.n_e() == 0);
  CHECK(st.spec.n_modes() == 1);
  CHECK(std::abs(st.spec.q_matrix.q_matrix(0, 0)) < 1e-15);
  CHECK(st.next.n_modes() == 2);
  CHECK(max_abs(RealMatrix(st.next.matrix() - 0.5 * RealMatrix::Identity(4, 4))) < 1e-12);
}

TEST_CASE("gsvd_step on a two-mode squeezed state") {
  const double r = 0.5;
  const auto st = gsvd_step(two_mode_squeezed(r), 1);
  REQUIRE(st.bond.n_e() == 1);
  CHECK(st.bond.lambdas[0] == doctest::Approx(std::tanh(r)).epsilon(1e-10));
  CHECK(st.next.n_modes() == 2);
  CHECK(is_pure(st.next, 1e-8));
  CHECK(reduced_entropy(st.next, 1) == doctest::Approx(entanglement_entropy(st.bond)).epsilon(1e-9));
}

TEST_CASE("gsvd_step on a product of squeezers has no bond") {
  const auto g = synthetic_gbs(2, {0.5, 0.3}, std::nullopt, 1.0);
  CHECK(gsvd_step(g, 1).bond.n_e() == 0);
}

TEST_CASE("gsvd_step rejects mixed input and bond overflow") {
  std::mt19937_64 rng(2);
  try {
    gsvd_step(testutil::random_mixed(3, rng), 1);
    FAIL("expected ImpureResidual");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ImpureResidual);
  }
  GsvdOptions opts;
  opts.max_bond_modes = 0;
  try {
    gsvd_step(two_mode_squeezed(0.4), 1, opts);
    FAIL("expected BondOverflow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BondOverflow);
  }
}

TEST_CASE("decompose_chain on vacuum") {
  const auto dc = decompose_chain(CovarianceMatrix::unchecked(0.5 * RealMatrix::Identity(10, 10)));
  CHECK(dc.specs.size() == 5);
  CHECK(dc.bonds.size() == 4);
  for (const auto& b : dc.bonds) CHECK(b.n_e() == 0);
}

TEST_CASE("decompose_chain on nearest-neighbour pairs alternates bonds") {
  const auto dc = decompose_chain(paired_chain(3, 0.6));
  REQUIRE(dc.bonds.size() == 5);
  const std::vector<int> expect{1, 0, 1, 0, 1};
  for (int m = 0; m < 5; ++m) CHECK(dc.bonds[m].n_e() == expect[m]);
  CHECK(dc.bonds[0].lambdas[0] == doctest::Approx(std::tanh(0.6)).epsilon(1e-9));
}

TEST_CASE("decompose_chain bond entropies match reduced-covariance entropies") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 4 + trial % 3;
    const auto g = synthetic_gbs(n, {0.7, 0.5, 0.3}, 100 + trial, 1.0);
    const auto dc = decompose_chain(g);
    REQUIRE(dc.specs.size() == static_cast<std::size_t>(n));
    CHECK(dc.specs.front().n_in == 0);
    CHECK(dc.specs.back().n_out == 0);
    for (int m = 0; m + 1 < n; ++m) {
      CHECK(dc.bonds[m].n_e() == dc.specs[m].n_out);
      CHECK(dc.bonds[m].n_e() == dc.specs[m + 1].n_in);
      CHECK(std::abs(dc.entropies[m] - reduced_entropy(g, m + 1)) < 1e-7);
      for (std::size_t q = 0; q < dc.bonds[m].lambdas.size(); ++q) {
        CHECK(dc.bonds[m].lambdas[q] > 0.0);
        CHECK(dc.bonds[m].lambdas[q] < 1.0);
        if (q > 0) CHECK(dc.bonds[m].lambdas[q] <= dc.bonds[m].lambdas[q - 1]);
      }
    }
  }
}

TEST_CASE("residuals stay pure along the chain") {
  std::mt19937_64 rng(41);
  CovarianceMatrix g = testutil::random_pure(6, rng, 0.5);
  int n_in = 0;
  for (int m = 0; m < 5; ++m) {
    const auto st = gsvd_step(g, n_in + 1);
    const auto w = williamson(st.next);
    for (double d : w.D) CHECK(std::abs(d - 1.0) <= 1e-6);
    const auto& q = st.spec.q_matrix.q_matrix;
    CHECK(max_abs(ComplexMatrix(q - q.transpose())) < 1e-10);
    n_in = st.bond.n_e();
    g = st.next;
  }
}

TEST_CASE("decompose_chain attaches the site index to errors") {
  GsvdOptions opts;
  opts.max_bond_modes = 0;
  try {
    decompose_chain(paired_chain(1, 0.4), opts);
    FAIL("expected BondOverflow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BondOverflow);
    CHECK(std::string(e.what()).find("site 0") != std::string::npos);
  }
}

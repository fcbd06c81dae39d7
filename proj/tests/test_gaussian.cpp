#include <doctest.h>

#include "bogomps/error.hpp"
#include "bogomps/gaussian.hpp"
#include "helpers.hpp"

using namespace bogomps;
using testutil::max_rel;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

RealMatrix reconstruct(const WilliamsonResult& w) {
  const int n = static_cast<int>(w.D.size());
  RealVector d(2 * n);
  for (int q = 0; q < n; ++q) d(q) = d(n + q) = w.D[q];
  return 0.5 * w.M * d.asDiagonal() * w.M.transpose();
}

}  // namespace

TEST_CASE("validate_covariance accepts vacuum and thermal states") {
  const auto vac = validate_covariance(0.5 * RealMatrix::Identity(6, 6));
  CHECK(vac.n_modes() == 3);
  const auto th = validate_covariance(RealMatrix::Identity(2, 2));
  CHECK(symplectic_spectrum(th.matrix())[0] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("validate_covariance rejects bad input") {
  CHECK(code_of([] { validate_covariance(0.4 * RealMatrix::Identity(2, 2)); }) == ErrorCode::Unphysical);
  RealMatrix asym = 0.5 * RealMatrix::Identity(2, 2);
  asym(0, 1) = 1e-3;
  CHECK(code_of([&] { validate_covariance(asym); }) == ErrorCode::NotSymmetric);
  CHECK(code_of([] { validate_covariance(-RealMatrix::Identity(2, 2)); }) == ErrorCode::NotPositiveDefinite);
  CHECK(code_of([] { validate_covariance(RealMatrix::Identity(3, 3)); }) == ErrorCode::ShapeMismatch);
}

TEST_CASE("validate_covariance symmetrizes tiny asymmetry") {
  RealMatrix g = 0.5 * RealMatrix::Identity(2, 2);
  g(0, 1) = 1e-13;
  const auto v = validate_covariance(g);
  CHECK(v.matrix()(0, 1) == v.matrix()(1, 0));
}

TEST_CASE("williamson of vacuum and isotropic thermal is the identity") {
  const auto w0 = williamson(CovarianceMatrix::unchecked(0.5 * RealMatrix::Identity(8, 8)));
  for (double d : w0.D) CHECK(d == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(max_abs(RealMatrix(w0.M - RealMatrix::Identity(8, 8))) < 1e-12);
  const auto w1 = williamson(CovarianceMatrix::unchecked(1.5 * RealMatrix::Identity(2, 2)));
  CHECK(w1.D[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(max_abs(RealMatrix(w1.M - RealMatrix::Identity(2, 2))) < 1e-12);
}

TEST_CASE("williamson reconstructs random pure and mixed states") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 6;
    const auto gp = testutil::random_pure(n, rng);
    const auto wp = williamson(gp);
    for (double d : wp.D) CHECK(std::abs(d - 1.0) < 1e-8);
    CHECK(max_rel(reconstruct(wp), gp.matrix()) < 1e-9);
    CHECK(symplectic_defect(wp.M) < 1e-9);
    const auto gm = testutil::random_mixed(n, rng);
    const auto wm = williamson(gm);
    CHECK(max_rel(reconstruct(wm), gm.matrix()) < 1e-9);
    CHECK(symplectic_defect(wm.M) < 1e-9);
    CHECK(std::is_sorted(wm.D.rbegin(), wm.D.rend()));
  }
}

TEST_CASE("gauge_fix leaves product states alone") {
  const auto g = synthetic_gbs(2, {0.4, 0.2}, std::nullopt, 1.0);
  auto wl = williamson(CovarianceMatrix::unchecked(quadrature_block(g.matrix(), {0}, {0})));
  auto wr = williamson(CovarianceMatrix::unchecked(quadrature_block(g.matrix(), {1}, {1})));
  const RealMatrix ml = wl.M, mr = wr.M;
  gauge_fix(wl, wr, quadrature_block(g.matrix(), {0}, {1}));
  CHECK(max_abs(RealMatrix(wl.M - ml)) == 0.0);
  CHECK(max_abs(RealMatrix(wr.M - mr)) == 0.0);
}

TEST_CASE("gauge_fix on a two-mode squeezed state") {
  const double r = 0.5;
  const auto g = two_mode_squeezed(r);
  auto wl = williamson(CovarianceMatrix::unchecked(quadrature_block(g.matrix(), {0}, {0})));
  auto wr = williamson(CovarianceMatrix::unchecked(quadrature_block(g.matrix(), {1}, {1})));
  CHECK(wl.D[0] == doctest::Approx(std::cosh(2 * r)).epsilon(1e-12));
  const RealMatrix glr = quadrature_block(g.matrix(), {0}, {1});
  gauge_fix(wl, wr, glr);
  CHECK(gauge_defect(wl, wr, glr) < 1e-8);
}

TEST_CASE("gauge_fix resolves a degenerate pair of entangled modes") {
  std::mt19937_64 rng(3);
  const auto pairs = paired_chain(2, 0.4);
  // Modes (0,2) on the left, (1,3) on the right, then scrambled by local passive unitaries.
  const std::vector<int> order{0, 2, 1, 3};
  RealMatrix g = quadrature_block(pairs.matrix(), order, order);
  ComplexMatrix w = ComplexMatrix::Zero(4, 4);
  w.topLeftCorner(2, 2) = random_unitary(2, rng);
  w.bottomRightCorner(2, 2) = random_unitary(2, rng);
  const RealMatrix k = orthosymplectic(w);
  g = k * g * k.transpose();
  auto wl = williamson(CovarianceMatrix::unchecked(quadrature_block(g, {0, 1}, {0, 1})));
  auto wr = williamson(CovarianceMatrix::unchecked(quadrature_block(g, {2, 3}, {2, 3})));
  CHECK(wl.D[0] == doctest::Approx(wl.D[1]).epsilon(1e-10));
  const RealMatrix glr = quadrature_block(g, {0, 1}, {2, 3});
  gauge_fix(wl, wr, glr);
  CHECK(gauge_defect(wl, wr, glr) < 1e-8);
  CHECK(symplectic_defect(wl.M) < 1e-9);
}

TEST_CASE("gauge_fix reports a rank-deficient cross block") {
  const auto g = two_mode_squeezed(0.5);
  auto wl = williamson(CovarianceMatrix::unchecked(quadrature_block(g.matrix(), {0}, {0})));
  auto wr = williamson(CovarianceMatrix::unchecked(quadrature_block(g.matrix(), {1}, {1})));
  CHECK(code_of([&] { gauge_fix(wl, wr, RealMatrix::Zero(2, 2)); }) == ErrorCode::DegeneracyUnresolved);
}

TEST_CASE("bogoliubov_from_symplectic follows the quadrature relation literally") {
  const auto id = bogoliubov_from_symplectic(RealMatrix::Identity(4, 4));
  CHECK(max_abs(ComplexMatrix(id.U + cplx(0, 1) * ComplexMatrix::Identity(2, 2))) < 1e-15);
  CHECK(max_abs(id.V) < 1e-15);
  const double r = 0.3;
  RealMatrix sq = RealMatrix::Zero(2, 2);
  sq(0, 0) = std::exp(r);
  sq(1, 1) = std::exp(-r);
  const auto b = bogoliubov_from_symplectic(sq);
  CHECK(std::abs(b.U(0, 0) - cplx(0, -std::cosh(r))) < 1e-14);
  CHECK(std::abs(b.V(0, 0) - cplx(0, -std::sinh(r))) < 1e-14);
  CHECK(max_abs(RealMatrix(symplectic_from_bogoliubov(b) - sq)) < 1e-14);
  CHECK(code_of([] { bogoliubov_from_symplectic(2.0 * RealMatrix::Identity(2, 2)); }) == ErrorCode::NotSymplectic);
}

TEST_CASE("bogoliubov round trip and constraints on random symplectics") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    const RealMatrix s = random_symplectic(1 + t % 5, rng, 0.8);
    const auto b = bogoliubov_from_symplectic(s);
    CHECK(bogoliubov_defect(b) < 1e-9);
    CHECK(max_abs(RealMatrix(symplectic_from_bogoliubov(b) - s)) < 1e-10);
  }
}

TEST_CASE("paired_form examples") {
  const auto q0 = paired_form({ComplexMatrix::Identity(2, 2), ComplexMatrix::Zero(2, 2)});
  CHECK(max_abs(q0.q_matrix) == 0.0);
  const double r = 0.7;
  ComplexMatrix u(1, 1), v(1, 1);
  u(0, 0) = std::cosh(r);
  v(0, 0) = -std::sinh(r);
  CHECK(std::abs(paired_form({u, v}).q_matrix(0, 0) + std::tanh(r)) < 1e-14);
  std::mt19937_64 rng(5);
  const auto b = bogoliubov_from_symplectic(random_symplectic(2, rng, 0.6));
  const ComplexMatrix raw = b.U.adjoint().inverse() * b.V.adjoint();
  CHECK(max_abs(ComplexMatrix(raw - raw.transpose())) < 1e-12);
  CHECK(code_of([] { paired_form({ComplexMatrix::Zero(1, 1), ComplexMatrix::Zero(1, 1)}); }) ==
        ErrorCode::UNotInvertible);
}

TEST_CASE("gsvd_left_paired_form examples") {
  ComplexMatrix one = ComplexMatrix::Identity(1, 1), zero = ComplexMatrix::Zero(1, 1);
  const auto q = gsvd_left_paired_form(one, zero, 1);
  CHECK(std::abs(q.q_matrix(0, 0)) < 1e-15);
  CHECK(std::abs(q.q_matrix(0, 1) - 1.0) < 1e-15);
  CHECK(std::abs(q.q_matrix(1, 0) - 1.0) < 1e-15);
  CHECK(std::abs(q.q_matrix(1, 1)) < 1e-15);
  CHECK(q.mode_labels[1] == ModeKind::OutgoingVirtual);

  std::mt19937_64 rng(19);
  const auto b = bogoliubov_from_symplectic(random_symplectic(3, rng, 0.5));
  const auto q_plain = gsvd_left_paired_form(b.U, b.V, 0);
  CHECK(max_abs(ComplexMatrix(q_plain.q_matrix - paired_form(b).q_matrix)) < 1e-12);
}

TEST_CASE("gsvd_left_paired_form is the beta -> 1 limit of the regularized construction") {
  const double r = 0.45, beta = 1.0 - 1e-6;
  RealMatrix sq = RealMatrix::Zero(2, 2);
  sq(0, 0) = std::exp(r);
  sq(1, 1) = std::exp(-r);
  const auto b = bogoliubov_from_symplectic(sq);
  const int m = 1;
  ComplexMatrix a(2 * m, 2 * m), bb(2 * m, 2 * m);
  a << beta * b.V.transpose(), ComplexMatrix::Identity(m, m), b.U.adjoint(), ComplexMatrix::Zero(m, m);
  bb << beta * b.U.transpose(), ComplexMatrix::Zero(m, m), b.V.adjoint(), beta * ComplexMatrix::Identity(m, m);
  const ComplexMatrix q_beta = a.inverse() * bb;
  const auto q_lim = gsvd_left_paired_form(b.U, b.V, 1);
  CHECK(max_abs(ComplexMatrix(q_beta - q_lim.q_matrix)) < 1e-5);
}

TEST_CASE("squeezing_parameters and entanglement_entropy") {
  CHECK(squeezing_parameters({1.0}).n_e() == 0);
  const auto s3 = squeezing_parameters({3.0});
  CHECK(s3.lambdas[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(s3.energies_unit[0] == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  const auto st = squeezing_parameters({std::cosh(1.0)});
  CHECK(st.lambdas[0] == doctest::Approx(std::tanh(0.5)).epsilon(1e-14));
  CHECK(entanglement_entropy({}) == 0.0);
  BondSpectrum half;
  half.lambdas = {std::sqrt(0.5)};
  half.energies_unit = {std::log(2.0)};
  CHECK(entanglement_entropy(half) == doctest::Approx(2 * std::log(2.0)).epsilon(1e-14));
  double prev = 0.0;
  for (double lam : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99, 0.999, 0.9999}) {
    BondSpectrum s;
    s.lambdas = {lam};
    const double e = entanglement_entropy(s);
    CHECK(e > prev);
    CHECK(std::isfinite(e));
    prev = e;
  }
}

TEST_CASE("pure-state detection and photon numbers") {
  std::mt19937_64 rng(23);
  const auto g = testutil::random_pure(5, rng);
  CHECK(is_pure(g, 1e-8));
  CHECK(!is_pure(testutil::random_mixed(3, rng)));
  CHECK(mean_photon_number(0.5 * RealMatrix::Identity(6, 6)) == doctest::Approx(0.0));
  const auto sq = synthetic_gbs(1, {0.5}, std::nullopt, 1.0);
  CHECK(mean_photon_number(sq.matrix()) == doctest::Approx(std::sinh(0.5) * std::sinh(0.5)).epsilon(1e-12));
}

#include "bogomps/synth.hpp"

#include <cmath>

#include "bogomps/error.hpp"

namespace bogomps {

ComplexMatrix random_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cplx(normal(rng), normal(rng));
  Eigen::HouseholderQR<ComplexMatrix> qr(a);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

RealMatrix random_symplectic(int n, std::mt19937_64& rng, double r_max) {
  std::uniform_real_distribution<double> uni(0.0, r_max);
  RealVector z(2 * n);
  for (int q = 0; q < n; ++q) {
    const double r = uni(rng);
    z(q) = std::exp(r);
    z(n + q) = std::exp(-r);
  }
  const RealMatrix k1 = orthosymplectic(random_unitary(n, rng));
  const RealMatrix k2 = orthosymplectic(random_unitary(n, rng));
  return k1 * z.asDiagonal() * k2;
}

CovarianceMatrix synthetic_gbs(int n_modes, const std::vector<double>& squeezers,
                               std::optional<std::uint64_t> interferometer_seed, double eta) {
  if (n_modes < 1) throw Error(ErrorCode::InvalidArgument, "need at least one mode");
  if (static_cast<int>(squeezers.size()) > n_modes) throw Error(ErrorCode::InvalidArgument, "more squeezers than modes");
  if (!(eta >= 0.0 && eta <= 1.0)) throw Error(ErrorCode::InvalidArgument, "loss parameter must lie in [0,1]");
  RealMatrix g = 0.5 * RealMatrix::Identity(2 * n_modes, 2 * n_modes);
  for (std::size_t q = 0; q < squeezers.size(); ++q) {
    g(q, q) = 0.5 * std::exp(-2.0 * squeezers[q]);
    g(n_modes + q, n_modes + q) = 0.5 * std::exp(2.0 * squeezers[q]);
  }
  if (interferometer_seed) {
    std::mt19937_64 rng(*interferometer_seed);
    const RealMatrix k = orthosymplectic(random_unitary(n_modes, rng));
    g = k * g * k.transpose();
  }
  g = eta * g + (1.0 - eta) * 0.5 * RealMatrix::Identity(2 * n_modes, 2 * n_modes);
  return CovarianceMatrix::unchecked(0.5 * (g + g.transpose()));
}

CovarianceMatrix two_mode_squeezed(double r) { return paired_chain(1, r); }

CovarianceMatrix paired_chain(int n_pairs, double r) {
  const int n = 2 * n_pairs;
  const double c = 0.5 * std::cosh(2.0 * r), s = 0.5 * std::sinh(2.0 * r);
  RealMatrix g = RealMatrix::Zero(2 * n, 2 * n);
  for (int k = 0; k < n_pairs; ++k) {
    const int a = 2 * k, b = 2 * k + 1;
    g(a, a) = g(b, b) = g(n + a, n + a) = g(n + b, n + b) = c;
    g(a, b) = g(b, a) = s;
    g(n + a, n + b) = g(n + b, n + a) = -s;
  }
  return CovarianceMatrix::unchecked(g);
}

}  // namespace bogomps

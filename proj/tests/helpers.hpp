#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "bogomps/gaussian.hpp"
#include "bogomps/oracle.hpp"
#include "bogomps/synth.hpp"

namespace testutil {

using namespace bogomps;

inline CovarianceMatrix random_pure(int n, std::mt19937_64& rng, double rmax = 0.6) {
  const RealMatrix s = random_symplectic(n, rng, rmax);
  RealMatrix g = 0.5 * s * s.transpose();
  return CovarianceMatrix::unchecked(0.5 * (g + g.transpose()));
}

inline CovarianceMatrix random_mixed(int n, std::mt19937_64& rng, double rmax = 0.6) {
  const RealMatrix s = random_symplectic(n, rng, rmax);
  std::uniform_real_distribution<double> uni(1.0, 3.0);
  RealVector d(2 * n);
  for (int q = 0; q < n; ++q) d(q) = d(n + q) = uni(rng);
  RealMatrix g = 0.5 * s * d.asDiagonal() * s.transpose();
  return CovarianceMatrix::unchecked(0.5 * (g + g.transpose()));
}

// a_j ψ on the dense box.
inline std::vector<cplx> lower(const oracle::DenseFockState& s, const std::vector<cplx>& psi, int j) {
  const int n = static_cast<int>(s.cutoffs.size());
  std::size_t stride = 1;
  for (int k = n - 1; k > j; --k) stride *= s.cutoffs[k];
  std::vector<cplx> out(psi.size());
  for (std::size_t idx = 0; idx < psi.size(); ++idx) {
    const int nj = static_cast<int>((idx / stride) % s.cutoffs[j]);
    if (nj + 1 < s.cutoffs[j]) out[idx] = std::sqrt(nj + 1.0) * psi[idx + stride];
  }
  return out;
}

// a†_j ψ on the dense box (truncated at the cutoff).
inline std::vector<cplx> raise(const oracle::DenseFockState& s, const std::vector<cplx>& psi, int j) {
  const int n = static_cast<int>(s.cutoffs.size());
  std::size_t stride = 1;
  for (int k = n - 1; k > j; --k) stride *= s.cutoffs[k];
  std::vector<cplx> out(psi.size());
  for (std::size_t idx = 0; idx < psi.size(); ++idx) {
    const int nj = static_cast<int>((idx / stride) % s.cutoffs[j]);
    if (nj >= 1) out[idx] = std::sqrt(static_cast<double>(nj)) * psi[idx - stride];
  }
  return out;
}

inline cplx vdot(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

// Covariance of a dense state from <a_i a_j> and <a†_i a_j>.
inline RealMatrix covariance_of(const oracle::DenseFockState& s) {
  const int n = static_cast<int>(s.cutoffs.size());
  std::vector<cplx> psi = s.data;
  const double nrm = std::sqrt(vdot(psi, psi).real());
  for (auto& x : psi) x /= nrm;
  std::vector<std::vector<cplx>> low(n);
  for (int j = 0; j < n; ++j) low[j] = lower(s, psi, j);
  ComplexMatrix a(n, n), nn(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      nn(i, j) = vdot(low[i], low[j]);
      a(i, j) = vdot(psi, lower(s, low[j], i));
    }
  RealMatrix g(2 * n, 2 * n);
  g.topLeftCorner(n, n) = (a + nn).real() + 0.5 * RealMatrix::Identity(n, n);
  g.bottomRightCorner(n, n) = (nn - a).real() + 0.5 * RealMatrix::Identity(n, n);
  g.topRightCorner(n, n) = (a + nn).imag();
  g.bottomLeftCorner(n, n) = g.topRightCorner(n, n).transpose();
  return 0.5 * (g + g.transpose());
}

inline double max_rel(const RealMatrix& a, const RealMatrix& b) {
  return max_abs(RealMatrix(a - b)) / std::max(1e-300, max_abs(b));
}

}  // namespace testutil

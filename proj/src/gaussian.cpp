#include "bogomps/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bogomps/error.hpp"

namespace bogomps {

namespace {

constexpr cplx kI(0.0, 1.0);

// Contiguous runs of (nearly) equal values in a descending list.
std::vector<std::pair<int, int>> clusters(const std::vector<double>& d, int count, double rel) {
  std::vector<std::pair<int, int>> out;
  int s = 0;
  for (int i = 1; i <= count; ++i) {
    if (i == count || std::abs(d[i] - d[s]) > rel * std::max(d[s] - 1.0, 1e-300) + 1e-13) {
      out.emplace_back(s, i);
      s = i;
    }
  }
  return out;
}

// Procrustes alignment of each degenerate cluster of M with the identity columns.
void canonical_gauge(RealMatrix& m, const std::vector<double>& d) {
  const int n = static_cast<int>(d.size());
  int s = 0;
  for (int i = 1; i <= n; ++i) {
    if (i < n && std::abs(d[i] - d[s]) <= 1e-10 * d[s]) continue;
    const int k = i - s;
    // Y = M_x - i M_p on the cluster columns; A = T^† Y with T the identity columns.
    ComplexMatrix a(k, k);
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) {
        const int qr = s + r, qc = s + c;
        const cplx y_x = cplx(m(qr, qc), -m(qr, n + qc));
        const cplx y_p = cplx(m(n + qr, qc), -m(n + qr, n + qc));
        a(r, c) = y_x + kI * y_p;
      }
    Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const ComplexMatrix wb = svd.matrixV() * svd.matrixU().adjoint();
    ComplexMatrix w = ComplexMatrix::Identity(n, n);
    w.block(s, s, k, k) = wb;
    m = m * orthosymplectic(w);
    s = i;
  }
}

}  // namespace

CovarianceMatrix validate_covariance(const RealMatrix& raw) {
  if (raw.rows() != raw.cols() || raw.rows() % 2 != 0 || raw.rows() == 0)
    throw Error(ErrorCode::ShapeMismatch, "covariance must be square with even dimension");
  if (!raw.allFinite()) throw Error(ErrorCode::NotSymmetric, "non-finite entries");
  const double scale = max_abs(raw);
  const double asym = max_abs(RealMatrix(raw - raw.transpose()));
  if (asym > 1e-10 * scale) throw Error(ErrorCode::NotSymmetric, "asymmetry " + std::to_string(asym));
  RealMatrix g = 0.5 * (raw + raw.transpose());
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(g, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NumericalFailure, "eigensolver failed");
  if (es.eigenvalues()(0) <= 0.0)
    throw Error(ErrorCode::NotPositiveDefinite, "smallest eigenvalue " + std::to_string(es.eigenvalues()(0)));
  const auto d = symplectic_spectrum(g);
  if (d.back() < 1.0 - 1e-9)
    throw Error(ErrorCode::Unphysical, "symplectic eigenvalue " + std::to_string(d.back()) + " < 1");
  return CovarianceMatrix::unchecked(std::move(g));
}

WilliamsonResult williamson(const CovarianceMatrix& gamma) {
  const RealMatrix& g = gamma.matrix();
  const int n = gamma.n_modes();
  const RealMatrix gh = sym_sqrt(g);
  const RealMatrix b = gh * symplectic_form(n) * gh;
  const ComplexMatrix ib = kI * b.cast<cplx>();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(ib);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NumericalFailure, "Williamson eigensolver did not converge");

  WilliamsonResult out;
  out.D.resize(n);
  RealMatrix o(2 * n, 2 * n);
  for (int q = 0; q < n; ++q) {
    const int col = 2 * n - 1 - q;
    const double nu = es.eigenvalues()(col);
    if (!(nu > 0.0)) throw Error(ErrorCode::NumericalFailure, "non-positive symplectic eigenvalue");
    const Eigen::VectorXcd u = es.eigenvectors().col(col);
    const double s = std::sqrt(2.0 / nu);
    o.col(q) = s * u.imag();
    o.col(n + q) = s * u.real();
    out.D[q] = 2.0 * nu;
  }
  out.M = gh * o;
  canonical_gauge(out.M, out.D);
  if (!out.M.allFinite()) throw Error(ErrorCode::NumericalFailure, "non-finite Williamson transform");
  return out;
}

namespace {

RealMatrix aligned_cross(const WilliamsonResult& left, const WilliamsonResult& right, const RealMatrix& gamma_lr) {
  return symplectic_inverse(left.M) * gamma_lr * symplectic_inverse(right.M).transpose();
}

int active_count(const std::vector<double>& d, double d_star) {
  return static_cast<int>(std::count_if(d.begin(), d.end(), [&](double x) { return x >= d_star; }));
}

}  // namespace

void gauge_fix(WilliamsonResult& left, WilliamsonResult& right, const RealMatrix& gamma_lr, double d_star) {
  const int m = static_cast<int>(left.D.size());
  const int mb = static_cast<int>(right.D.size());
  const int ne = std::min(active_count(left.D, d_star), active_count(right.D, d_star));
  if (ne == 0) return;
  const RealMatrix x = aligned_cross(left, right, gamma_lr);
  const RealMatrix r11 = x.topLeftCorner(m, mb), r12 = x.topRightCorner(m, mb);
  const RealMatrix r21 = x.bottomLeftCorner(m, mb), r22 = x.bottomRightCorner(m, mb);
  ComplexMatrix bm(m, mb);
  bm.real() = r11 - r22;
  bm.imag() = r21 + r12;  // 2B

  ComplexMatrix wl = ComplexMatrix::Identity(m, m);
  ComplexMatrix wr = ComplexMatrix::Identity(mb, mb);
  for (auto [s, e] : clusters(left.D, ne, 1e-6)) {
    const int k = e - s;
    Eigen::JacobiSVD<ComplexMatrix> svd(bm.block(s, s, k, k), Eigen::ComputeFullU | Eigen::ComputeFullV);
    double expect = 1e300;
    for (int q = s; q < e; ++q) expect = std::min(expect, std::sqrt(left.D[q] * left.D[q] - 1.0));
    if (svd.singularValues()(k - 1) < 0.5 * expect)
      throw Error(ErrorCode::DegeneracyUnresolved,
                  "cross block rank-deficient in degenerate cluster at mode " + std::to_string(s));
    wl.block(s, s, k, k) = svd.matrixU();
    wr.block(s, s, k, k) = svd.matrixV().conjugate();
  }
  left.M = left.M * orthosymplectic(wl);
  right.M = right.M * orthosymplectic(wr);
}

double gauge_defect(const WilliamsonResult& left, const WilliamsonResult& right, const RealMatrix& gamma_lr,
                    double d_star) {
  const int m = static_cast<int>(left.D.size());
  const int mb = static_cast<int>(right.D.size());
  const int ne = std::min(active_count(left.D, d_star), active_count(right.D, d_star));
  RealMatrix target = RealMatrix::Zero(2 * m, 2 * mb);
  for (int q = 0; q < ne; ++q) {
    const double p = 0.5 * std::sqrt(left.D[q] * left.D[q] - 1.0);
    target(q, q) = p;
    target(m + q, mb + q) = -p;
  }
  return max_abs(RealMatrix(aligned_cross(left, right, gamma_lr) - target));
}

BogoliubovTransform bogoliubov_from_symplectic(const RealMatrix& m) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0) throw Error(ErrorCode::ShapeMismatch, "symplectic matrix shape");
  const double tol = 1e-9 * std::max(1.0, max_abs(m) * max_abs(m));
  if (symplectic_defect(m) > tol) throw Error(ErrorCode::NotSymplectic, "M J Mᵀ != J");
  const Eigen::Index n = m.rows() / 2;
  const ComplexMatrix upv = -m.topRightCorner(n, n).cast<cplx>() - kI * m.topLeftCorner(n, n).cast<cplx>();
  const ComplexMatrix umv = m.bottomLeftCorner(n, n).cast<cplx>() - kI * m.bottomRightCorner(n, n).cast<cplx>();
  return {0.5 * (upv + umv), 0.5 * (upv - umv)};
}

RealMatrix symplectic_from_bogoliubov(const BogoliubovTransform& b) {
  const Eigen::Index n = b.U.rows();
  const ComplexMatrix s = b.U + b.V, t = b.U - b.V;
  RealMatrix m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = -s.imag();
  m.topRightCorner(n, n) = -s.real();
  m.bottomLeftCorner(n, n) = t.real();
  m.bottomRightCorner(n, n) = -t.imag();
  return m;
}

double bogoliubov_defect(const BogoliubovTransform& b) {
  const Eigen::Index n = b.U.rows();
  const double c1 = max_abs(ComplexMatrix(b.U.adjoint() * b.U - b.V.adjoint() * b.V - ComplexMatrix::Identity(n, n)));
  const double c2 = max_abs(ComplexMatrix(b.U.transpose() * b.V - b.V.transpose() * b.U));
  return std::max(c1, c2);
}

namespace {

ComplexMatrix inverse_adjoint(const ComplexMatrix& u) {
  Eigen::JacobiSVD<ComplexMatrix> svd(u);
  const auto& s = svd.singularValues();
  if (s.size() > 0 && (s(s.size() - 1) <= 0.0 || s(0) / s(s.size() - 1) > 1e12))
    throw Error(ErrorCode::UNotInvertible, "condition number of U above 1e12");
  return u.adjoint().partialPivLu().inverse();
}

}  // namespace

PairedForm paired_form(const BogoliubovTransform& b) {
  PairedForm out;
  const Eigen::Index n = b.U.rows();
  if (n == 0) return out;
  const ComplexMatrix q = inverse_adjoint(b.U) * b.V.adjoint();
  out.q_matrix = 0.5 * (q + q.transpose());
  out.mode_labels.assign(n, ModeKind::Physical);
  return out;
}

PairedForm gsvd_left_paired_form(const ComplexMatrix& u_l, const ComplexMatrix& v_l, int n_e) {
  const int m = static_cast<int>(u_l.rows());
  if (n_e < 0 || n_e > m) throw Error(ErrorCode::InvalidArgument, "n_e must lie in [0, m]");
  const ComplexMatrix ui = inverse_adjoint(u_l);
  ComplexMatrix full(2 * m, 2 * m);
  full.topLeftCorner(m, m) = ui * v_l.adjoint();
  full.topRightCorner(m, m) = ui;
  full.bottomLeftCorner(m, m) = ui.transpose();
  full.bottomRightCorner(m, m) = -v_l.transpose() * ui;
  PairedForm out;
  const ComplexMatrix q = full.topLeftCorner(m + n_e, m + n_e);
  out.q_matrix = 0.5 * (q + q.transpose());
  out.mode_labels.assign(m, ModeKind::Physical);
  out.mode_labels.resize(m + n_e, ModeKind::OutgoingVirtual);
  return out;
}

BondSpectrum squeezing_parameters(const std::vector<double>& d, double d_star) {
  std::vector<double> sorted = d;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  BondSpectrum out;
  for (double x : sorted) {
    if (x < d_star) break;
    const double lam = std::sqrt((x - 1.0) / (x + 1.0));
    out.lambdas.push_back(lam);
    out.energies_unit.push_back(-2.0 * std::log(lam));
  }
  return out;
}

double entanglement_entropy(const BondSpectrum& spec) {
  double s = 0.0;
  for (double lam : spec.lambdas) {
    const double l2 = lam * lam;
    if (l2 <= 0.0) continue;
    s += -std::log1p(-l2) - l2 / (1.0 - l2) * std::log(l2);
  }
  return s;
}

double reduced_entropy(const CovarianceMatrix& gamma, int k) {
  std::vector<int> modes(k);
  std::iota(modes.begin(), modes.end(), 0);
  const RealMatrix sub = quadrature_block(gamma.matrix(), modes, modes);
  return entanglement_entropy(squeezing_parameters(symplectic_spectrum(sub)));
}

bool is_pure(const CovarianceMatrix& gamma, double tol) {
  for (double x : symplectic_spectrum(gamma.matrix()))
    if (std::abs(x - 1.0) > tol) return false;
  return true;
}

double mean_photon_number(const RealMatrix& gamma) {
  return 0.5 * gamma.trace() - 0.5 * static_cast<double>(gamma.rows() / 2);
}

std::vector<double> mode_photon_numbers(const RealMatrix& gamma) {
  const Eigen::Index n = gamma.rows() / 2;
  std::vector<double> out(n);
  for (Eigen::Index j = 0; j < n; ++j) out[j] = 0.5 * (gamma(j, j) + gamma(n + j, n + j) - 1.0);
  return out;
}

}  // namespace bogomps

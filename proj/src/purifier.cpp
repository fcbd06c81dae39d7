#include "bogomps/purifier.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "bogomps/error.hpp"

namespace bogomps {

namespace {

double scale_of(const CovarianceMatrix& g) { return g.matrix().trace() / g.n_modes(); }

}  // namespace

double loss(const RealMatrix& s, const CovarianceMatrix& gamma_th) {
  if (s.rows() != gamma_th.matrix().rows() || s.cols() != s.rows())
    throw Error(ErrorCode::ShapeMismatch, "S and Γ_th sizes differ");
  const RealMatrix w = gamma_th.matrix() - 0.5 * s * s.transpose();
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(w, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NumericalFailure, "eigensolver failed");
  return -es.eigenvalues()(0);
}

Gradient riemannian_gradient(const RealMatrix& s, const CovarianceMatrix& gamma_th, double gap_rel) {
  const int n = gamma_th.n_modes();
  const RealMatrix w = gamma_th.matrix() - 0.5 * s * s.transpose();
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(w);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NumericalFailure, "eigensolver failed");
  const double window = gap_rel * scale_of(gamma_th);
  int k = 1;
  while (k < w.rows() && es.eigenvalues()(k) <= es.eigenvalues()(0) + window) ++k;
  const RealMatrix v = es.eigenvectors().leftCols(k);
  const RealMatrix sv = s.transpose() * v;
  const RealMatrix e = sv * sv.transpose() / static_cast<double>(k);
  const RealMatrix j = symplectic_form(n);
  Gradient out;
  out.G = 0.5 * (e + j * e.transpose() * j);
  out.degenerate = k > 1;
  out.multiplicity = k;
  return out;
}

bool in_symplectic_algebra(const RealMatrix& x, double tol) {
  const RealMatrix jx = symplectic_form(static_cast<int>(x.rows() / 2)) * x;
  return max_abs(RealMatrix(jx - jx.transpose())) <= tol * std::max(1.0, max_abs(x));
}

RealMatrix retract(const RealMatrix& s, const RealMatrix& g, double alpha) {
  if (!in_symplectic_algebra(g, 1e-8)) throw Error(ErrorCode::InvalidArgument, "step direction not in sp(2N)");
  if (alpha == 0.0) return s;
  RealMatrix out = s * RealMatrix(-alpha * g).exp();
  const int n = static_cast<int>(s.rows() / 2);
  const RealMatrix j = symplectic_form(n);
  const RealMatrix id = RealMatrix::Identity(2 * n, 2 * n);
  for (int it = 0; it < 8 && symplectic_defect(out) > 1e-11; ++it) {
    const RealMatrix a = -j * out.transpose() * j * out;
    out = out * (id - 0.5 * (a - id));
  }
  return out;
}

PurificationResult purify(const CovarianceMatrix& gamma_th, const PurifyOptions& opts) {
  const int n = gamma_th.n_modes();
  const double tol = opts.tol_loss >= 0.0 ? opts.tol_loss : 1e-9 * scale_of(gamma_th);
  PurificationResult res;

  auto finish = [&](const RealMatrix& s, bool converged) {
    res.S = s;
    RealMatrix gp = 0.5 * s * s.transpose();
    gp = 0.5 * (gp + gp.transpose());
    res.W = gamma_th.matrix() - gp;
    res.n_eff = mean_photon_number(gp);
    res.gamma_p = CovarianceMatrix::unchecked(std::move(gp));
    res.converged = converged;
    return res;
  };

  if (is_pure(gamma_th, 1e-9)) {
    const RealMatrix m = williamson(gamma_th).M;
    res.loss_trace.push_back({0, loss(m, gamma_th), mean_photon_number(0.5 * m * m.transpose())});
    return finish(m, true);
  }

  RealMatrix s = RealMatrix::Identity(2 * n, 2 * n);
  double alpha = opts.alpha0;
  for (int it = 0;; ++it) {
    const double l = loss(s, gamma_th);
    res.loss_trace.push_back({it, l, mean_photon_number(0.5 * s * s.transpose())});
    if (l <= tol) return finish(s, true);
    if (it >= opts.max_iters) return finish(s, false);
    const Gradient grad = riemannian_gradient(s, gamma_th);
    if (grad.degenerate) ++res.degenerate_steps;
    const double g2 = grad.G.squaredNorm();
    RealMatrix next;
    for (;;) {
      next = retract(s, grad.G, alpha);
      if (loss(next, gamma_th) <= l - opts.armijo * alpha * g2) break;
      alpha *= opts.shrink;
      if (alpha < opts.min_alpha) return finish(s, false);
    }
    s = std::move(next);
    alpha *= opts.grow;
  }
}

}  // namespace bogomps

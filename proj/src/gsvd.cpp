#include "bogomps/gsvd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "bogomps/error.hpp"

namespace bogomps {

namespace {

std::vector<int> range(int a, int b) {
  std::vector<int> v(b - a);
  std::iota(v.begin(), v.end(), a);
  return v;
}

void check_pure(const CovarianceMatrix& g, double tol) {
  for (double x : symplectic_spectrum(g.matrix()))
    if (std::abs(x - 1.0) > tol)
      throw Error(ErrorCode::ImpureResidual, "symplectic eigenvalue " + std::to_string(x) + " deviates from 1");
}

}  // namespace

GsvdStep gsvd_step(const CovarianceMatrix& gamma_res, int split_after, const GsvdOptions& opts) {
  const int n = gamma_res.n_modes();
  if (split_after < 1 || split_after >= n) throw Error(ErrorCode::InvalidArgument, "split index out of range");
  check_pure(gamma_res, opts.purity_tol);

  const auto left_modes = range(0, split_after);
  const auto right_modes = range(split_after, n);
  const RealMatrix& g = gamma_res.matrix();
  auto wl = williamson(CovarianceMatrix::unchecked(quadrature_block(g, left_modes, left_modes)));
  auto wr = williamson(CovarianceMatrix::unchecked(quadrature_block(g, right_modes, right_modes)));
  const RealMatrix g_lr = quadrature_block(g, left_modes, right_modes);
  gauge_fix(wl, wr, g_lr, opts.d_star);

  GsvdStep out{{}, {}, CovarianceMatrix::unchecked(RealMatrix())};
  const int m = split_after;
  const int nr = n - m;
  std::vector<double> d_active(wl.D.begin(), wl.D.end());
  int ne = 0;
  while (ne < std::min(m, nr) && wl.D[ne] >= opts.d_star && wr.D[ne] >= opts.d_star) ++ne;
  d_active.resize(ne);
  out.bond = squeezing_parameters(d_active, 1.0);
  if (ne > opts.max_bond_modes)
    throw Error(ErrorCode::BondOverflow, std::to_string(ne) + " entangled pairs exceed max_bond_modes");

  const auto bl = bogoliubov_from_symplectic(wl.M);
  const auto br = bogoliubov_from_symplectic(wr.M);
  out.spec.q_matrix = gsvd_left_paired_form(bl.U, bl.V, ne);
  out.spec.n_out = ne;

  // Residual exp(-Σ Λ_q b†_{R,q} r†_q)|0> on (r_1..r_ne, a_R...): build its annihilators.
  const int tot = ne + nr;
  ComplexMatrix uc = ComplexMatrix::Zero(tot, tot), vc = ComplexMatrix::Zero(tot, tot);
  int col = 0;
  for (int q = 0; q < ne; ++q, ++col) {
    const double t = -out.bond.lambdas[q];
    const double s = std::sqrt(1.0 - t * t);
    uc(q, col) = 1.0 / s;
    uc.block(ne, col, nr, 1) = t * br.V.col(q) / s;
    vc.block(ne, col, nr, 1) = t * br.U.col(q) / s;
  }
  for (int q = 0; q < nr; ++q, ++col) {
    if (q < ne) {
      const double t = -out.bond.lambdas[q];
      const double s = std::sqrt(1.0 - t * t);
      uc.block(ne, col, nr, 1) = br.U.col(q).conjugate() / s;
      vc.block(ne, col, nr, 1) = br.V.col(q).conjugate() / s;
      vc(q, col) = t / s;
    } else {
      uc.block(ne, col, nr, 1) = br.U.col(q).conjugate();
      vc.block(ne, col, nr, 1) = br.V.col(q).conjugate();
    }
  }
  const RealMatrix mp = symplectic_from_bogoliubov({uc.conjugate(), vc.conjugate()});
  RealMatrix next = 0.5 * mp * mp.transpose();
  out.next = CovarianceMatrix::unchecked(0.5 * (next + next.transpose()));
  return out;
}

LocalGaussianSpec terminal_spec(const CovarianceMatrix& gamma_res, int n_in) {
  LocalGaussianSpec spec;
  spec.n_in = n_in;
  spec.n_out = 0;
  const auto w = williamson(gamma_res);
  spec.q_matrix = paired_form(bogoliubov_from_symplectic(w.M));
  for (int i = 0; i < n_in; ++i) spec.q_matrix.mode_labels[i] = ModeKind::IncomingVirtual;
  return spec;
}

ChainDecomposition decompose_chain(const CovarianceMatrix& gamma, const GsvdOptions& opts) {
  const int n = gamma.n_modes();
  ChainDecomposition out;
  CovarianceMatrix res = gamma;
  int n_in = 0;
  for (int m = 0; m + 1 < n; ++m) {
    GsvdStep step = [&] {
      try {
        return gsvd_step(res, n_in + 1, opts);
      } catch (const Error& e) {
        throw Error(e.code(), "site " + std::to_string(m) + ": " + e.detail());
      }
    }();
    step.spec.site_index = m;
    step.spec.n_in = n_in;
    for (int i = 0; i < n_in; ++i) step.spec.q_matrix.mode_labels[i] = ModeKind::IncomingVirtual;
    out.entropies.push_back(entanglement_entropy(step.bond));
    n_in = step.bond.n_e();
    out.specs.push_back(std::move(step.spec));
    out.bonds.push_back(std::move(step.bond));
    res = std::move(step.next);
  }
  try {
    check_pure(res, opts.purity_tol);
    out.specs.push_back(terminal_spec(res, n_in));
  } catch (const Error& e) {
    throw Error(e.code(), "site " + std::to_string(n - 1) + ": " + e.detail());
  }
  out.specs.back().site_index = n - 1;

  for (std::size_t m = 0; m + 1 < out.specs.size(); ++m)
    if (out.specs[m].n_out != out.bonds[m].n_e() || out.specs[m + 1].n_in != out.bonds[m].n_e())
      throw Error(ErrorCode::DimensionMismatch, "chain bookkeeping broken at bond " + std::to_string(m));
  return out;
}

}  // namespace bogomps

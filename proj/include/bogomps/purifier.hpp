#pragma once

#include <vector>

#include "bogomps/gaussian.hpp"

namespace bogomps {

struct TraceRow {
  int iteration;
  double loss;
  double n_eff;
};

struct PurifyOptions {
  int max_iters = 5000;
  double tol_loss = -1.0;  // negative: 1e-9·tr(Γ_th)/N
  double alpha0 = 0.1;
  double shrink = 0.5;
  double grow = 1.5;
  double armijo = 1e-4;
  double min_alpha = 1e-16;
};

struct PurificationResult {
  RealMatrix S;
  CovarianceMatrix gamma_p = CovarianceMatrix::unchecked(RealMatrix());
  RealMatrix W;
  double n_eff = 0.0;
  std::vector<TraceRow> loss_trace;
  bool converged = false;
  int degenerate_steps = 0;
};

struct Gradient {
  RealMatrix G;
  bool degenerate = false;  // averaged over a degenerate lowest eigenspace
  int multiplicity = 1;
};

// L = -λ_min(Γ_th - ½SSᵀ)
double loss(const RealMatrix& s, const CovarianceMatrix& gamma_th);

Gradient riemannian_gradient(const RealMatrix& s, const CovarianceMatrix& gamma_th, double gap_rel = 1e-8);

// JX symmetric to tol (relative to max|X|).
bool in_symplectic_algebra(const RealMatrix& x, double tol = 1e-10);

// S·exp(-αG), re-symplectified when the drift exceeds 1e-11.
RealMatrix retract(const RealMatrix& s, const RealMatrix& g, double alpha);

PurificationResult purify(const CovarianceMatrix& gamma_th, const PurifyOptions& opts = {});

}  // namespace bogomps

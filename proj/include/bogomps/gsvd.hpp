#pragma once

#include <vector>

#include "bogomps/gaussian.hpp"

namespace bogomps {

// Local three-leg Gaussian map; q_matrix modes ordered (incoming..., physical, outgoing...).
struct LocalGaussianSpec {
  int site_index = 0;
  int n_in = 0;
  int n_out = 0;
  PairedForm q_matrix;
  int n_modes() const { return n_in + 1 + n_out; }
};

struct ChainDecomposition {
  std::vector<LocalGaussianSpec> specs;
  std::vector<BondSpectrum> bonds;
  std::vector<double> entropies;
};

struct GsvdOptions {
  double d_star = kDefaultDStar;
  int max_bond_modes = 64;
  double purity_tol = 1e-7;
};

struct GsvdStep {
  LocalGaussianSpec spec;
  BondSpectrum bond;
  CovarianceMatrix next;
};

// Cuts Γ_res after its first split_after modes.  The residual lives on
// (outgoing virtuals of the cut, remaining physical modes).
GsvdStep gsvd_step(const CovarianceMatrix& gamma_res, int split_after, const GsvdOptions& opts = {});

// Terminal map of a pure residual, with n_in incoming virtuals in front of one physical mode.
LocalGaussianSpec terminal_spec(const CovarianceMatrix& gamma_res, int n_in);

ChainDecomposition decompose_chain(const CovarianceMatrix& gamma, const GsvdOptions& opts = {});

}  // namespace bogomps

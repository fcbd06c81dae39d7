#pragma once

#include <cstdint>
#include <vector>

#include "bogomps/fock_subspace.hpp"
#include "bogomps/gsvd.hpp"
#include "bogomps/mps.hpp"
#include "bogomps/pco.hpp"

namespace bogomps {

struct ConvertOptions {
  int bond_dim = 64;      // fixed-D policy
  double eps = -1.0;      // fixed-ε policy when >= 0; bond_dim becomes the cap
  int local_dim = 4;
  double d_star = kDefaultDStar;
  int max_bond_modes = 64;
  int threads = 1;
};

struct SiteStats {
  int site;
  int n_e;
  double eps;
  double build_seconds;
  std::uint64_t update_ops;
};

struct Conversion {
  Mps mps;
  ChainDecomposition decomp;
  std::vector<KeptBasis> bases;  // N+1 entries, trivial at both ends
  std::vector<SiteStats> stats;
};

std::vector<KeptBasis> kept_bases(const ChainDecomposition& decomp, const ConvertOptions& opts);

// Input must be pure.
Conversion convert(const CovarianceMatrix& gamma, const ConvertOptions& opts = {});

}  // namespace bogomps

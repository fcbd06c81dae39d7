#pragma once

#include <cstdint>
#include <vector>

#include "bogomps/fock_subspace.hpp"
#include "bogomps/gsvd.hpp"
#include "bogomps/pco.hpp"

namespace bogomps::oracle {

inline constexpr std::size_t kDenseGuard = 10'000'000;

// Coefficients on the box Π [0, cutoff_j), last mode fastest.
struct DenseFockState {
  std::vector<int> cutoffs;
  std::vector<cplx> data;

  std::size_t index(const std::vector<int>& occ) const;
  cplx amplitude(const std::vector<int>& occ) const { return data[index(occ)]; }
};

// exp(½ Σ Q_ij a†_i a†_j)|0> on the box; exact there since the box is closed under lowering.
DenseFockState fock_expand(const ComplexMatrix& q, const std::vector<int>& cutoffs);

CoefficientBlock dense_projected_tensor(const LocalGaussianSpec& spec, const KeptBasis& left, const KeptBasis& right,
                                        int d);

}  // namespace bogomps::oracle

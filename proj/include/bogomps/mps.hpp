#pragma once

#include <cstdint>
#include <vector>

#include "bogomps/gsvd.hpp"
#include "bogomps/pco.hpp"

namespace bogomps {

struct Mps {
  std::vector<CoefficientBlock> tensors;
  std::vector<double> eps_per_bond;   // N-1 entries
  double global_log_norm = 0.0;       // log of the norm divided out during assembly

  int n_sites() const { return static_cast<int>(tensors.size()); }
  int phys_dim() const { return tensors.empty() ? 0 : static_cast<int>(tensors.front().d()); }
  // N+1 entries including the two boundary bonds of size 1.
  std::vector<std::size_t> bond_dims() const;
  double max_eps() const;
  // Throws DimensionMismatch on inconsistent shapes.
  void check_shapes() const;
};

// Identity bond contraction, then left-to-right normalization with the log-norm kept aside.
Mps assemble_mps(const ChainDecomposition& decomp, std::vector<CoefficientBlock> tensors,
                 std::vector<double> eps_per_bond);

// Rescales the tensors in place so that <ψ|ψ> = 1; returns log of the removed norm.
double normalize(Mps& psi);

cplx amplitude(const Mps& psi, const std::vector<int>& occ);
cplx overlap(const Mps& psi, const Mps& phi);
double norm_squared(const Mps& psi);
double fidelity(const Mps& psi, const Mps& phi);
std::vector<std::vector<int>> sample(const Mps& psi, std::uint64_t seed, std::size_t n);

}  // namespace bogomps

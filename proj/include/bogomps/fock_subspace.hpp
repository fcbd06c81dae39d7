#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "bogomps/gaussian.hpp"

namespace bogomps {

struct OccupationHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept;
};

// The D lowest-energy virtual Fock states of one bond, ascending in E.
class KeptBasis {
 public:
  KeptBasis(int n_e, std::vector<std::uint32_t> occupations, std::vector<double> energies);

  int n_e() const { return n_e_; }
  int dim() const { return static_cast<int>(energies_.size()); }
  std::span<const std::uint32_t> occupation(int beta) const {
    return {occ_.data() + static_cast<std::size_t>(beta) * n_e_, static_cast<std::size_t>(n_e_)};
  }
  const std::vector<double>& energies() const { return energies_; }
  // Highest kept occupation of mode q.
  std::uint32_t max_occupation(int q) const { return max_occ_[q]; }
  // Index of an occupation vector, or -1.
  int find(const std::vector<std::uint32_t>& occ) const;

 private:
  int n_e_;
  std::vector<std::uint32_t> occ_;
  std::vector<double> energies_;
  std::vector<std::uint32_t> max_occ_;
  std::unordered_map<std::vector<std::uint32_t>, int, OccupationHash> index_;
};

// E(n) = Σ_q n_q ε_q, summed in mode order.
double occupation_energy(const BondSpectrum& spec, std::span<const std::uint32_t> occ);

// Strict total order used for the kept basis: energy, then descending lexicographic occupation.
bool basis_order_less(double e_a, std::span<const std::uint32_t> a, double e_b, std::span<const std::uint32_t> b);

KeptBasis kept_basis(const BondSpectrum& spec, int d);

// Smallest prefix reaching truncation error <= eps_target, capped at d_max states.
KeptBasis kept_basis_for_error(const BondSpectrum& spec, double eps_target, int d_max);

double truncation_error(const KeptBasis& basis, const BondSpectrum& spec);

// Triples (in, out, κ) with occ[out] = occ[in] + κ·(e_q [+ e_q2]); log_weight = log √(n_out!/n_in!) over the touched modes.
struct VectorSet {
  int mode = 0;
  int mode2 = -1;
  std::vector<std::uint32_t> v_in;
  std::vector<std::uint32_t> v_out;
  std::vector<std::uint32_t> v_ord;
  std::vector<double> log_weight;
  std::size_t size() const { return v_in.size(); }
};

VectorSet build_vector_set(const KeptBasis& basis, int q);

VectorSet compose_vector_sets(const VectorSet& a, const VectorSet& b);

// Σ_q |VectorSet(q)|.
std::size_t vector_set_total_length(const KeptBasis& basis);

}  // namespace bogomps

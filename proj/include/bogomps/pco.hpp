#pragma once

#include <cstdint>
#include <vector>

#include "bogomps/fock_subspace.hpp"
#include "bogomps/gsvd.hpp"

namespace bogomps {

// Dense (D_left, d, D_right) coefficients, stored sector-major: [p][α][β].
class CoefficientBlock {
 public:
  CoefficientBlock() = default;
  CoefficientBlock(std::size_t dl, std::size_t d, std::size_t dr) : dl_(dl), d_(d), dr_(dr), data_(dl * d * dr) {}

  std::size_t dl() const { return dl_; }
  std::size_t d() const { return d_; }
  std::size_t dr() const { return dr_; }
  std::size_t sector_size() const { return dl_ * dr_; }

  cplx& at(std::size_t a, std::size_t p, std::size_t b) { return data_[(p * dl_ + a) * dr_ + b]; }
  const cplx& at(std::size_t a, std::size_t p, std::size_t b) const { return data_[(p * dl_ + a) * dr_ + b]; }
  cplx* sector(std::size_t p) { return data_.data() + p * sector_size(); }
  const cplx* sector(std::size_t p) const { return data_.data() + p * sector_size(); }
  std::vector<cplx>& data() { return data_; }
  const std::vector<cplx>& data() const { return data_; }

  static CoefficientBlock vacuum(std::size_t dl, std::size_t d, std::size_t dr) {
    CoefficientBlock c(dl, d, dr);
    c.at(0, 0, 0) = 1.0;
    return c;
  }

 private:
  std::size_t dl_ = 0, d_ = 0, dr_ = 0;
  std::vector<cplx> data_;
};

enum class PcoKind {
  Cross,
  IntraLeft,
  IntraRight,
  DuplicateLeft,
  DuplicateRight,
  PhysicalCrossLeft,
  PhysicalCrossRight,
  PhysicalDuplicate,
};

const char* pco_kind_name(PcoKind kind);

struct PcoDescriptor {
  PcoKind kind;
  int zeta;
  int zeta2;
  cplx g;
  int max_order;
};

inline constexpr double kPcoStrengthThreshold = 1e-14;

std::vector<PcoDescriptor> classify_pcos(const LocalGaussianSpec& spec, const KeptBasis& left, const KeptBasis& right,
                                         int d);

// Each apply_* acts on every p-sector and returns the number of complex multiply-adds.
std::uint64_t apply_cross_pco(CoefficientBlock& c, const PcoDescriptor& desc, const VectorSet& vs_left,
                              const VectorSet& vs_right);
std::uint64_t apply_intra_pco(CoefficientBlock& c, const PcoDescriptor& desc, const VectorSet& composed);
std::uint64_t apply_duplicate_pco(CoefficientBlock& c, const PcoDescriptor& desc, const VectorSet& vs);
// Physical-kind descriptors only; left_sets[q] / right_sets[q] are the single-mode sets of each basis.
std::uint64_t apply_physical_pcos(CoefficientBlock& c, const std::vector<PcoDescriptor>& descs,
                                  const std::vector<VectorSet>& left_sets, const std::vector<VectorSet>& right_sets,
                                  int d);

struct BuildOptions {
  int threads = 1;
};

struct BuildStats {
  std::uint64_t update_ops = 0;
  std::size_t n_pcos = 0;
  double seconds = 0.0;
};

CoefficientBlock build_local_tensor(const LocalGaussianSpec& spec, const KeptBasis& left, const KeptBasis& right,
                                    int d, const BuildOptions& opts = {}, BuildStats* stats = nullptr);

}  // namespace bogomps

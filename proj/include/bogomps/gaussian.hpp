#pragma once

#include <vector>

#include "bogomps/linalg.hpp"

namespace bogomps {

// Validated 2N×2N covariance in (x..., p...) order, vacuum = ½·I.
class CovarianceMatrix {
 public:
  static CovarianceMatrix unchecked(RealMatrix m) { return CovarianceMatrix(std::move(m)); }
  int n_modes() const { return static_cast<int>(m_.rows() / 2); }
  const RealMatrix& matrix() const { return m_; }

 private:
  explicit CovarianceMatrix(RealMatrix m) : m_(std::move(m)) {}
  RealMatrix m_;
};

struct BogoliubovTransform {
  ComplexMatrix U;
  ComplexMatrix V;
};

enum class ModeKind { Physical, IncomingVirtual, OutgoingVirtual };

struct PairedForm {
  ComplexMatrix q_matrix;
  std::vector<ModeKind> mode_labels;
};

struct BondSpectrum {
  std::vector<double> lambdas;         // descending, each in (0,1)
  std::vector<double> energies_unit;   // -2 log Λ_q
  int n_e() const { return static_cast<int>(lambdas.size()); }
};

struct WilliamsonResult {
  RealMatrix M;               // symplectic
  std::vector<double> D;      // descending
};

inline constexpr double kDefaultDStar = 1.0 + 1e-10;

CovarianceMatrix validate_covariance(const RealMatrix& raw);

WilliamsonResult williamson(const CovarianceMatrix& gamma);

// Rotates M_L, M_R inside their degenerate clusters so that
// M_L^{-1} Γ_LR M_R^{-T} = ½ blockdiag(P, -P).  Modes with D < d_star count as frozen.
void gauge_fix(WilliamsonResult& left, WilliamsonResult& right, const RealMatrix& gamma_lr,
               double d_star = kDefaultDStar);

// Residual max |M_L^{-1} Γ_LR M_R^{-T} - ½ blockdiag(P, -P)|.
double gauge_defect(const WilliamsonResult& left, const WilliamsonResult& right,
                    const RealMatrix& gamma_lr, double d_star = kDefaultDStar);

BogoliubovTransform bogoliubov_from_symplectic(const RealMatrix& m);
RealMatrix symplectic_from_bogoliubov(const BogoliubovTransform& b);

// Max deviation from U†U - V†V = I and UᵀV = VᵀU.
double bogoliubov_defect(const BogoliubovTransform& b);

PairedForm paired_form(const BogoliubovTransform& b);

PairedForm gsvd_left_paired_form(const ComplexMatrix& u_l, const ComplexMatrix& v_l, int n_e);

BondSpectrum squeezing_parameters(const std::vector<double>& d, double d_star = kDefaultDStar);

double entanglement_entropy(const BondSpectrum& spec);

// Entropy of the reduced state on the first k modes, from its symplectic spectrum.
double reduced_entropy(const CovarianceMatrix& gamma, int k);

bool is_pure(const CovarianceMatrix& gamma, double tol = 1e-7);

// Σ <a†a> = ½ tr Γ - N/2.
double mean_photon_number(const RealMatrix& gamma);

// Per-mode <a†a>.
std::vector<double> mode_photon_numbers(const RealMatrix& gamma);

}  // namespace bogomps

#include "bogomps/mps.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "bogomps/error.hpp"

namespace bogomps {

namespace {

using RowMajor = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using SectorMap = Eigen::Map<const RowMajor>;

SectorMap sector(const CoefficientBlock& c, std::size_t p) {
  return SectorMap(c.sector(p), static_cast<Eigen::Index>(c.dl()), static_cast<Eigen::Index>(c.dr()));
}

}  // namespace

std::vector<std::size_t> Mps::bond_dims() const {
  std::vector<std::size_t> out;
  if (tensors.empty()) return out;
  out.push_back(tensors.front().dl());
  for (const auto& t : tensors) out.push_back(t.dr());
  return out;
}

double Mps::max_eps() const {
  double e = 0.0;
  for (double x : eps_per_bond) e = std::max(e, x);
  return e;
}

void Mps::check_shapes() const {
  if (tensors.empty()) throw Error(ErrorCode::DimensionMismatch, "empty MPS");
  if (tensors.front().dl() != 1 || tensors.back().dr() != 1)
    throw Error(ErrorCode::DimensionMismatch, "boundary bonds must have size 1");
  const std::size_t d = tensors.front().d();
  for (std::size_t m = 0; m < tensors.size(); ++m) {
    if (tensors[m].d() != d) throw Error(ErrorCode::DimensionMismatch, "physical dimension differs at site " + std::to_string(m));
    if (m + 1 < tensors.size() && tensors[m].dr() != tensors[m + 1].dl())
      throw Error(ErrorCode::DimensionMismatch, "bond " + std::to_string(m) + " dims differ");
  }
  if (eps_per_bond.size() + 1 != tensors.size()) throw Error(ErrorCode::DimensionMismatch, "eps per bond count");
}

double normalize(Mps& psi) {
  psi.check_shapes();
  RowMajor x = RowMajor::Ones(1, 1);
  double log_norm = 0.0;
  for (auto& t : psi.tensors) {
    const auto d = static_cast<Eigen::Index>(t.d());
    const auto k = x.rows();
    RowMajor y(k * d, static_cast<Eigen::Index>(t.dr()));
    for (Eigen::Index p = 0; p < d; ++p) y.middleRows(p * k, k).noalias() = x * sector(t, p);
    if (y.rows() > y.cols()) {
      Eigen::HouseholderQR<RowMajor> qr(y);
      y = qr.matrixQR().topRows(y.cols()).triangularView<Eigen::Upper>();
    }
    const double n2 = y.squaredNorm();
    if (!(n2 > 0.0) || !std::isfinite(n2)) throw Error(ErrorCode::NumericalFailure, "MPS norm vanished or overflowed");
    const double s = 1.0 / std::sqrt(n2);
    for (auto& v : t.data()) v *= s;
    y *= s;
    x = std::move(y);
    log_norm += 0.5 * std::log(n2);
  }
  psi.global_log_norm += log_norm;
  return log_norm;
}

Mps assemble_mps(const ChainDecomposition& decomp, std::vector<CoefficientBlock> tensors,
                 std::vector<double> eps_per_bond) {
  if (tensors.size() != decomp.specs.size())
    throw Error(ErrorCode::DimensionMismatch, "one tensor per site required");
  Mps psi{std::move(tensors), std::move(eps_per_bond), 0.0};
  psi.check_shapes();
  normalize(psi);
  return psi;
}

cplx amplitude(const Mps& psi, const std::vector<int>& occ) {
  if (static_cast<int>(occ.size()) != psi.n_sites())
    throw Error(ErrorCode::ShapeMismatch, "occupation vector length differs from site count");
  const int d = psi.phys_dim();
  Eigen::RowVectorXcd v = Eigen::RowVectorXcd::Ones(1);
  for (int m = 0; m < psi.n_sites(); ++m) {
    if (occ[m] < 0 || occ[m] >= d)
      throw Error(ErrorCode::OccupationOutOfRange, "occupation " + std::to_string(occ[m]) + " at site " + std::to_string(m));
    v = v * sector(psi.tensors[m], occ[m]);
  }
  return v(0);
}

cplx overlap(const Mps& psi, const Mps& phi) {
  if (psi.n_sites() != phi.n_sites() || psi.phys_dim() != phi.phys_dim())
    throw Error(ErrorCode::ShapeMismatch, "MPS differ in site count or local dimension");
  ComplexMatrix e = ComplexMatrix::Ones(1, 1);
  for (int m = 0; m < psi.n_sites(); ++m) {
    const auto& a = psi.tensors[m];
    const auto& b = phi.tensors[m];
    ComplexMatrix next = ComplexMatrix::Zero(static_cast<Eigen::Index>(a.dr()), static_cast<Eigen::Index>(b.dr()));
    for (std::size_t p = 0; p < a.d(); ++p) {
      const ComplexMatrix eb = e * sector(b, p);
      next.noalias() += sector(a, p).adjoint() * eb;
    }
    e = std::move(next);
  }
  return e(0, 0);
}

double norm_squared(const Mps& psi) { return overlap(psi, psi).real(); }

double fidelity(const Mps& psi, const Mps& phi) {
  const cplx o = overlap(psi, phi);
  const double f = std::norm(o) / (norm_squared(psi) * norm_squared(phi));
  return std::clamp(f, 0.0, 1.0);
}

std::vector<std::vector<int>> sample(const Mps& psi, std::uint64_t seed, std::size_t n) {
  psi.check_shapes();
  const int sites = psi.n_sites();
  const int d = psi.phys_dim();
  std::vector<ComplexMatrix> env(sites + 1);
  env[sites] = ComplexMatrix::Ones(1, 1);
  for (int m = sites - 1; m >= 0; --m) {
    const auto& a = psi.tensors[m];
    ComplexMatrix r = ComplexMatrix::Zero(static_cast<Eigen::Index>(a.dl()), static_cast<Eigen::Index>(a.dl()));
    for (int p = 0; p < d; ++p) {
      const ComplexMatrix ar = sector(a, p) * env[m + 1];
      r.noalias() += ar * sector(a, p).adjoint();
    }
    env[m] = 0.5 * (r + r.adjoint());
  }

  std::mt19937_64 rng(seed);
  auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<std::vector<int>> out(n, std::vector<int>(sites));
  std::vector<double> prob(d);
  std::vector<Eigen::RowVectorXcd> cand(d);
  for (std::size_t s = 0; s < n; ++s) {
    Eigen::RowVectorXcd v = Eigen::RowVectorXcd::Ones(1);
    for (int m = 0; m < sites; ++m) {
      double total = 0.0;
      for (int p = 0; p < d; ++p) {
        cand[p] = v * sector(psi.tensors[m], p);
        prob[p] = std::max(0.0, (cand[p] * env[m + 1] * cand[p].adjoint())(0, 0).real());
        total += prob[p];
      }
      if (!(total > 0.0)) throw Error(ErrorCode::NumericalFailure, "conditional marginal vanished");
      double u = uniform() * total;
      int pick = d - 1;
      for (int p = 0; p < d; ++p) {
        if (u < prob[p]) {
          pick = p;
          break;
        }
        u -= prob[p];
      }
      while (prob[pick] == 0.0 && pick > 0) --pick;
      out[s][m] = pick;
      v = cand[pick] / std::sqrt(prob[pick]);
    }
  }
  return out;
}

}  // namespace bogomps

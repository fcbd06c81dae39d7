#include "bogomps/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "bogomps/error.hpp"

namespace bogomps {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::Unphysical: return "Unphysical";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::DegeneracyUnresolved: return "DegeneracyUnresolved";
    case ErrorCode::NotSymplectic: return "NotSymplectic";
    case ErrorCode::UNotInvertible: return "UNotInvertible";
    case ErrorCode::ImpureResidual: return "ImpureResidual";
    case ErrorCode::BondOverflow: return "BondOverflow";
    case ErrorCode::ModeCollision: return "ModeCollision";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::OccupationOutOfRange: return "OccupationOutOfRange";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::GuardExceeded: return "GuardExceeded";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

RealMatrix symplectic_form(int n) {
  RealMatrix j = RealMatrix::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n).setIdentity();
  j.bottomLeftCorner(n, n) = -RealMatrix::Identity(n, n);
  return j;
}

double max_abs(const RealMatrix& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }
double max_abs(const ComplexMatrix& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

RealMatrix symplectic_inverse(const RealMatrix& m) {
  const RealMatrix j = symplectic_form(static_cast<int>(m.rows() / 2));
  return -j * m.transpose() * j;
}

double symplectic_defect(const RealMatrix& m) {
  const RealMatrix j = symplectic_form(static_cast<int>(m.rows() / 2));
  return max_abs(RealMatrix(m * j * m.transpose() - j));
}

RealMatrix sym_sqrt(const RealMatrix& a) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(a);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NumericalFailure, "eigensolver failed");
  RealVector s = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * s.asDiagonal() * es.eigenvectors().transpose();
}

std::vector<double> symplectic_spectrum(const RealMatrix& gamma) {
  const int n = static_cast<int>(gamma.rows() / 2);
  const RealMatrix g = sym_sqrt(gamma);
  const RealMatrix b = g * symplectic_form(n) * g;
  // i·B is Hermitian with eigenvalues ±D/2.
  const ComplexMatrix ib = cplx(0.0, 1.0) * b.cast<cplx>();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(ib, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NumericalFailure, "eigensolver failed");
  std::vector<double> d(n);
  for (int q = 0; q < n; ++q) d[q] = 2.0 * es.eigenvalues()(2 * n - 1 - q);
  return d;
}

RealMatrix orthosymplectic(const ComplexMatrix& w) {
  const Eigen::Index n = w.rows();
  RealMatrix k(2 * n, 2 * n);
  k.topLeftCorner(n, n) = w.real();
  k.topRightCorner(n, n) = -w.imag();
  k.bottomLeftCorner(n, n) = w.imag();
  k.bottomRightCorner(n, n) = w.real();
  return k;
}

RealMatrix quadrature_block(const RealMatrix& gamma, const std::vector<int>& rows,
                            const std::vector<int>& cols) {
  const int n = static_cast<int>(gamma.rows() / 2);
  const int r = static_cast<int>(rows.size()), c = static_cast<int>(cols.size());
  RealMatrix out(2 * r, 2 * c);
  for (int i = 0; i < 2 * r; ++i) {
    const int gi = (i < r) ? rows[i] : n + rows[i - r];
    for (int j = 0; j < 2 * c; ++j) {
      const int gj = (j < c) ? cols[j] : n + cols[j - c];
      out(i, j) = gamma(gi, gj);
    }
  }
  return out;
}

}  // namespace bogomps

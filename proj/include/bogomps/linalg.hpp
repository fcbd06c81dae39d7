#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace bogomps {

using cplx = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

// J = [[0, I], [-I, 0]] for n modes.
RealMatrix symplectic_form(int n);

double max_abs(const RealMatrix& a);
double max_abs(const ComplexMatrix& a);

// M^{-1} = -J M^T J for symplectic M.
RealMatrix symplectic_inverse(const RealMatrix& m);

// max |M J M^T - J|
double symplectic_defect(const RealMatrix& m);

// Symmetric positive square root.
RealMatrix sym_sqrt(const RealMatrix& a);

// Doubled symplectic eigenvalues, descending.  Γ must be positive definite.
std::vector<double> symplectic_spectrum(const RealMatrix& gamma);

// K(W) = [[Re W, -Im W], [Im W, Re W]], orthosymplectic for unitary W.
RealMatrix orthosymplectic(const ComplexMatrix& w);

// Rows/cols of the x and p quadratures of the listed modes, in (x..., p...) order.
RealMatrix quadrature_block(const RealMatrix& gamma, const std::vector<int>& rows,
                            const std::vector<int>& cols);

}  // namespace bogomps

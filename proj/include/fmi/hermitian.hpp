#pragma once

#include <complex>

#include <Eigen/Dense>

namespace fmi {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Throws std::invalid_argument if the matrix is empty or has a non-finite
/// entry.
void ValidateMatrix(const CMatrix& m, const char* what);

/// (M + M*)/2.
CMatrix HermitianPart(const CMatrix& m);

/// max |M - M*| over entries.
double HermitianDefect(const CMatrix& m);

/// Smallest eigenvalue of the Hermitian part of `h`, computed in long double.
double MinEigenvalue(const CMatrix& h);

/// Default absolute eigenvalue tolerance: 1e-9 scaled by max(1, max row sum).
double DefaultPsdTolerance(const CMatrix& h);

struct PsdReport {
  double min_eigenvalue = 0.0;
  double tolerance = 0.0;
  bool verdict = false;
  double hermitian_defect = 0.0;
};

/// Eigenvalue-based positivity verdict. A Hermitian defect above `tol`
/// fails the verdict even when the symmetrized spectrum is nonnegative.
PsdReport CheckPsd(const CMatrix& h, double tol);
PsdReport CheckPsd(const CMatrix& h);

/// max |M_ij - N_ij|.
double ResidualNorm(const CMatrix& m, const CMatrix& n);

/// ResidualNorm divided by max(1, max|M|, max|N|).
double ScaledResidual(const CMatrix& m, const CMatrix& n);

/// Largest absolute entry (0 for an empty matrix).
double MaxAbs(const CMatrix& m);

}  // namespace fmi

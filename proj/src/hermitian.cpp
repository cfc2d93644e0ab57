#include "fmi/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fmi {

namespace {

void RequireSquare(const CMatrix& m, const char* fn) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument(std::string(fn) + ": matrix must be square, got " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

}  // namespace

void ValidateMatrix(const CMatrix& m, const char* what) {
  if (m.rows() < 1 || m.cols() < 1) {
    throw std::invalid_argument(std::string(what) + ": empty matrix");
  }
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex x = m.data()[i];
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
      throw std::invalid_argument(std::string(what) + ": non-finite entry");
    }
  }
}

CMatrix HermitianPart(const CMatrix& m) {
  RequireSquare(m, "HermitianPart");
  return (m + m.adjoint()) / 2.0;
}

double HermitianDefect(const CMatrix& m) {
  RequireSquare(m, "HermitianDefect");
  return MaxAbs(m - m.adjoint());
}

double MinEigenvalue(const CMatrix& h) {
  RequireSquare(h, "MinEigenvalue");
  // Extended precision keeps the absolute error well below eps * |h| for
  // large-entry Hankel blocks.
  using WideMatrix = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;
  const WideMatrix wide = h.cast<std::complex<long double>>();
  Eigen::SelfAdjointEigenSolver<WideMatrix> solver((wide + wide.adjoint()) / 2.0L,
                                                   Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("MinEigenvalue: eigen-decomposition failed");
  }
  return static_cast<double>(solver.eigenvalues().minCoeff());
}

double DefaultPsdTolerance(const CMatrix& h) {
  // Max row sum bounds the spectral radius.
  const double row_sum = h.size() == 0 ? 0.0 : h.cwiseAbs().rowwise().sum().maxCoeff();
  return 1e-9 * std::max(1.0, row_sum);
}

PsdReport CheckPsd(const CMatrix& h, double tol) {
  RequireSquare(h, "CheckPsd");
  if (!(tol >= 0.0)) throw std::invalid_argument("CheckPsd: tolerance must be >= 0");
  PsdReport report;
  report.tolerance = tol;
  report.hermitian_defect = HermitianDefect(h);
  report.min_eigenvalue = MinEigenvalue(h);
  report.verdict = report.min_eigenvalue >= -tol && report.hermitian_defect <= tol;
  return report;
}

PsdReport CheckPsd(const CMatrix& h) { return CheckPsd(h, DefaultPsdTolerance(h)); }

double ResidualNorm(const CMatrix& m, const CMatrix& n) {
  if (m.rows() != n.rows() || m.cols() != n.cols()) {
    throw std::invalid_argument("ResidualNorm: shape mismatch " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()) + " vs " + std::to_string(n.rows()) +
                                "x" + std::to_string(n.cols()));
  }
  return MaxAbs(m - n);
}

double ScaledResidual(const CMatrix& m, const CMatrix& n) {
  const double r = ResidualNorm(m, n);
  return r / std::max({1.0, MaxAbs(m), MaxAbs(n)});
}

double MaxAbs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace fmi

#include "fmi/realization.hpp"

#include <stdexcept>

namespace fmi {

void ValidateRealization(const Realization& r) {
  ValidateMatrix(r.A, "Realization.A");
  ValidateMatrix(r.T, "Realization.T");
  const Eigen::Index n = r.A.rows();
  if (r.A.cols() != n || r.T.rows() != n || r.T.cols() != n || r.u.size() != n ||
      r.v.size() != n) {
    throw std::invalid_argument("Realization: inconsistent dimensions");
  }
  ValidateMatrix(r.u, "Realization.u");
  ValidateMatrix(r.v, "Realization.v");
  if (HermitianDefect(r.A) > 1e-12 * (1.0 + MaxAbs(r.A))) {
    throw std::invalid_argument("Realization: A is not Hermitian");
  }
}

CMatrix FundamentalIdentityDefect(const Realization& r) {
  const CMatrix uv = r.u * r.v.adjoint();
  const CMatrix vu = r.v * r.u.adjoint();
  if (r.kind == RealizationKind::kDisk) {
    return r.A - r.T * r.A * r.T.adjoint() - (uv + vu);
  }
  return r.T * r.A - r.A * r.T.adjoint() - (uv - vu);
}

double FundamentalIdentityResidual(const Realization& r) {
  return MaxAbs(FundamentalIdentityDefect(r));
}

double FundamentalIdentityScale(const Realization& r) { return 1.0 + MaxAbs(r.A); }

Realization PerturbPickMatrix(const Realization& r, double delta) {
  Realization out = r;
  out.A(0, 0) += delta;
  return out;
}

}  // namespace fmi

#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "fmi/hermitian.hpp"

namespace fmi {

/// Which Fundamental Identity binds the realization:
///   disk:      A - T A T* = u v* + v u*
///   halfplane: T A - A T* = u v* - v u*
enum class RealizationKind { kDisk, kHalfPlane };

/// Interpolation data in operator form: Pick matrix A, node matrix T and the
/// value vectors u, v.
struct Realization {
  CMatrix A;
  CMatrix T;
  CVector u;
  CVector v;
  RealizationKind kind = RealizationKind::kDisk;

  Eigen::Index dim() const { return A.rows(); }
};

/// Shapes agree, entries finite, A Hermitian within 1e-12 (1 + max|A|).
void ValidateRealization(const Realization& r);

/// Left side minus right side of the Fundamental Identity.
CMatrix FundamentalIdentityDefect(const Realization& r);

/// max-entry norm of FundamentalIdentityDefect.
double FundamentalIdentityResidual(const Realization& r);

/// 1 + max|A|, the scale the identity residual is measured against.
double FundamentalIdentityScale(const Realization& r);

/// A copy of `r` with A(0,0) shifted by `delta`; breaks the identity.
Realization PerturbPickMatrix(const Realization& r, double delta);

/// Outcome of one named check. A false verdict carries the offending
/// eigenvalue or residual and, where a point is involved, the point.
struct CheckReport {
  std::string check_name;
  bool verdict = false;
  std::optional<double> min_eigenvalue;
  std::optional<double> residual;
  std::optional<Complex> witness_point;
  nlohmann::json details = nlohmann::json::object();
};

/// The assembled block matrix [[A, B],[B*, C]] at a point.
struct FmiMatrix {
  Complex z;
  CMatrix matrix;
};

/// A transformed inequality computed by its defining formula and by framing
/// the original one, with the scaled residual between the two.
struct TfmiResult {
  CMatrix direct;
  CMatrix framed;
  double residual = 0.0;
};

enum class TfmiKind { kI, kII, kTruncated };

}  // namespace fmi

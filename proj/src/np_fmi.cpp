#include "fmi/np_fmi.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fmi {

namespace {

constexpr double kSingularDistance = 1e-9;
constexpr double kBoundaryTol = 1e-12;

CMatrix Identity(Eigen::Index n) { return CMatrix::Identity(n, n); }

std::vector<Complex> NodesOf(const Realization& r) {
  // Realizations built from data carry T = diag(nodes); for anything else
  // the spectrum plays the role of the nodes.
  const CMatrix off = r.T - CMatrix(r.T.diagonal().asDiagonal());
  if (MaxAbs(off) == 0.0) {
    std::vector<Complex> nodes(static_cast<std::size_t>(r.T.rows()));
    for (Eigen::Index k = 0; k < r.T.rows(); ++k) nodes[static_cast<std::size_t>(k)] = r.T(k, k);
    return nodes;
  }
  Eigen::ComplexEigenSolver<CMatrix> solver(r.T, false);
  const CVector ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

bool OnCircle(Complex z) { return std::abs(std::abs(z) - 1.0) <= kBoundaryTol; }

// z avoids the nodes, their reflections and the circle; z = 0 is allowed.
void RequireRegular(Complex z, std::span<const Complex> nodes, const char* fn) {
  if (OnCircle(z)) throw std::domain_error(std::string(fn) + ": z lies on the unit circle");
  for (Complex zk : nodes) {
    if (std::abs(z - zk) <= kSingularDistance) {
      throw std::domain_error(std::string(fn) + ": z coincides with a node");
    }
    if (zk != Complex(0.0) && std::abs(z - 1.0 / std::conj(zk)) <= kSingularDistance) {
      throw std::domain_error(std::string(fn) + ": z coincides with a reflected node");
    }
  }
}

void RequireNonsingular(Complex z, const Realization& r, const char* fn) {
  if (!NpNonsingular(z, r)) {
    throw std::domain_error(std::string(fn) + ": z is a singular point");
  }
}

CMatrix ZMinusTInverse(const Realization& r, Complex z) {
  return (z * Identity(r.dim()) - r.T).partialPivLu().inverse();
}

// 1/2 (T + zI)(T - zI)^{-1}
CMatrix HalfCayley(const Realization& r, Complex z) {
  const CMatrix I = Identity(r.dim());
  return 0.5 * (r.T + z * I) * (r.T - z * I).partialPivLu().inverse();
}

// (z^{-1} I - T*)^{-1} written as z (I - z T*)^{-1} so that z = 0 is admissible.
CMatrix ReflectedResolvent(const Realization& r, Complex z) {
  const CMatrix I = Identity(r.dim());
  return z * (I - z * r.T.adjoint()).partialPivLu().inverse();
}

}  // namespace

void ValidateNpData(const NpData& data) {
  if (data.nodes.empty()) throw std::invalid_argument("NpData: at least one node required");
  if (data.nodes.size() != data.values.size()) {
    throw std::invalid_argument("NpData: " + std::to_string(data.nodes.size()) + " nodes but " +
                                std::to_string(data.values.size()) + " values");
  }
  for (std::size_t k = 0; k < data.nodes.size(); ++k) {
    const Complex zk = data.nodes[k];
    const Complex wk = data.values[k];
    if (!std::isfinite(zk.real()) || !std::isfinite(zk.imag()) || !std::isfinite(wk.real()) ||
        !std::isfinite(wk.imag())) {
      throw std::invalid_argument("NpData: non-finite entry at index " + std::to_string(k));
    }
    if (std::abs(zk) >= 1.0 - 1e-12) {
      throw std::invalid_argument("NpData: node " + std::to_string(k) +
                                  " is not inside the unit disk");
    }
    for (std::size_t l = 0; l < k; ++l) {
      if (std::abs(zk - data.nodes[l]) <= kSingularDistance) {
        throw std::invalid_argument("NpData: duplicate nodes " + std::to_string(l) + " and " +
                                    std::to_string(k));
      }
    }
  }
}

Realization NpRealization(const NpData& data) {
  ValidateNpData(data);
  const auto n = static_cast<Eigen::Index>(data.size());
  Realization r;
  r.kind = RealizationKind::kDisk;
  r.u = CVector::Ones(n);
  r.v = CVector(n);
  r.T = CMatrix::Zero(n, n);
  r.A = CMatrix(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    r.v(k) = data.values[k];
    r.T(k, k) = data.nodes[k];
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index l = 0; l < n; ++l) {
      r.A(k, l) = (data.values[k] + std::conj(data.values[l])) /
                  (1.0 - data.nodes[k] * std::conj(data.nodes[l]));
    }
  }
  return r;
}

bool NpNonsingular(Complex z, std::span<const Complex> nodes) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  if (std::abs(z) <= kSingularDistance || OnCircle(z)) return false;
  for (Complex zk : nodes) {
    if (std::abs(z - zk) <= kSingularDistance) return false;
    if (zk != Complex(0.0) && std::abs(z - 1.0 / std::conj(zk)) <= kSingularDistance) {
      return false;
    }
  }
  return true;
}

bool NpNonsingular(Complex z, const NpData& data) { return NpNonsingular(z, data.nodes); }

bool NpNonsingular(Complex z, const Realization& r) { return NpNonsingular(z, NodesOf(r)); }

CVector NpB(const Evaluator& w, const Realization& r, Complex z) {
  RequireRegular(z, NodesOf(r), "NpB");
  return ZMinusTInverse(r, z) * (r.u * w(z) - r.v);
}

CVector NpBEntrywise(const Evaluator& w, const NpData& data, Complex z) {
  RequireRegular(z, data.nodes, "NpBEntrywise");
  const Complex wz = w(z);
  CVector b(static_cast<Eigen::Index>(data.size()));
  for (std::size_t k = 0; k < data.size(); ++k) {
    b(static_cast<Eigen::Index>(k)) = (wz - data.values[k]) / (z - data.nodes[k]);
  }
  return b;
}

double NpC(const Evaluator& w, Complex z) {
  if (OnCircle(z)) throw std::domain_error("NpC: z lies on the unit circle");
  return 2.0 * w(z).real() / (1.0 - std::norm(z));
}

FmiMatrix NpFmi(const Evaluator& w, const Realization& r, Complex z) {
  const Eigen::Index n = r.dim();
  FmiMatrix out{z, CMatrix(n + 1, n + 1)};
  const CVector b = NpB(w, r, z);
  out.matrix.topLeftCorner(n, n) = r.A;
  out.matrix.topRightCorner(n, 1) = b;
  out.matrix.bottomLeftCorner(1, n) = b.adjoint();
  out.matrix(n, n) = NpC(w, z);
  return out;
}

FmiMatrix NpFmi(const Evaluator& w, const NpData& data, Complex z) {
  return NpFmi(w, NpRealization(data), z);
}

CMatrix NpSubinequality(const FmiMatrix& fmi, int k) {
  const Eigen::Index n = fmi.matrix.rows() - 1;
  if (k < 1 || k > n) {
    throw std::out_of_range("NpSubinequality: index " + std::to_string(k) + " outside 1.." +
                            std::to_string(n));
  }
  const std::array<Eigen::Index, 2> idx{k - 1, n};
  CMatrix out(2, 2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out(i, j) = fmi.matrix(idx[i], idx[j]);
  }
  return out;
}

CMatrix NpSubinequalityFraming(int n, int k) {
  if (k < 1 || k > n) {
    throw std::out_of_range("NpSubinequalityFraming: index " + std::to_string(k) +
                            " outside 1.." + std::to_string(n));
  }
  CMatrix m = CMatrix::Zero(2, n + 1);
  m(0, k - 1) = 1.0;
  m(1, n) = 1.0;
  return m;
}

NpMeasureBlocks NpMeasureSide(const DiskHerglotz& w, std::span<const Complex> nodes,
                              Complex z) {
  if (OnCircle(z)) throw std::domain_error("NpMeasureSide: z lies on the unit circle");
  const auto n = static_cast<Eigen::Index>(nodes.size());
  NpMeasureBlocks out{CMatrix::Zero(n, n), CVector::Zero(n), CVector::Constant(n, Complex(0.0, w.c)),
                      0.0};
  const auto& atoms = w.measure.atoms();
  const auto& weights = w.measure.weights();
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    const Complex t = atoms[j];
    const double rho = weights[j];
    CVector x(n);
    for (Eigen::Index k = 0; k < n; ++k) x(k) = 1.0 / (t - nodes[static_cast<std::size_t>(k)]);
    out.A += rho * x * x.adjoint();
    out.B += rho * t / (t - z) * x;
    for (Eigen::Index k = 0; k < n; ++k) {
      const Complex zk = nodes[static_cast<std::size_t>(k)];
      out.v(k) += 0.5 * rho * (t + zk) / (t - zk);
    }
    out.C += rho / std::norm(t - z);
  }
  return out;
}

CMatrix NpW(const Evaluator& w, const Realization& r, Complex z, NpWForm form) {
  const auto nodes = NodesOf(r);
  RequireRegular(z, nodes, "NpW");
  const Complex wz = w(z);
  const CMatrix left = ZMinusTInverse(r, z);
  const CMatrix right = ReflectedResolvent(r, z);
  if (form == NpWForm::kResolvent) {
    return HalfCayley(r, z) * r.A +
           left * r.u * (r.v.adjoint() + wz * r.u.adjoint()) * right;
  }
  const CMatrix I = Identity(r.dim());
  const CMatrix zt = z * r.T.adjoint();
  const CMatrix cayley_star = (I + zt) * (I - zt).partialPivLu().inverse();
  return 0.5 * r.A * cayley_star - left * (r.v - r.u * wz) * r.u.adjoint() * right;
}

CMatrix NpWEntrywise(const Evaluator& w, const NpData& data, Complex z) {
  RequireRegular(z, data.nodes, "NpWEntrywise");
  const auto n = static_cast<Eigen::Index>(data.size());
  const Complex wz = w(z);
  CMatrix out(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex zk = data.nodes[k];
    for (Eigen::Index l = 0; l < n; ++l) {
      const Complex zl_bar = std::conj(data.nodes[l]);
      const Complex term1 = (zk + z) / (zk - z) * (data.values[k] - wz);
      const Complex term2 =
          (1.0 + z * zl_bar) / (1.0 - z * zl_bar) * (wz + std::conj(data.values[l]));
      out(k, l) = 0.5 * (term1 + term2) / (1.0 - zk * zl_bar);
    }
  }
  return out;
}

double NpSymmetryW(const Evaluator& w, const Realization& r, Complex z) {
  RequireNonsingular(z, r, "NpSymmetryW");
  const Complex reflected = 1.0 / std::conj(z);
  return ResidualNorm(NpW(w, r, z), -NpW(w, r, reflected).adjoint());
}

CVector NpPhi(const Evaluator& w, const Realization& r, Complex z) {
  RequireRegular(z, NodesOf(r), "NpPhi");
  return HalfCayley(r, z) * (r.u * w(z) - r.v);
}

CMatrix NpFraming(Framing kind, const Realization& r, Complex z) {
  RequireRegular(z, NodesOf(r), "NpFraming");
  const Eigen::Index n = r.dim();
  const Complex zb = std::conj(z);
  const CMatrix R = (Identity(n) - zb * r.T).partialPivLu().inverse();
  const CVector Ru = zb * R * r.u;
  if (kind == Framing::kM1) {
    CMatrix m = CMatrix::Zero(n + 1, n + 1);
    m.topLeftCorner(n, n) = R;
    m.topRightCorner(n, 1) = Ru;
    m(n, n) = 1.0;
    return m;
  }
  CMatrix m = CMatrix::Zero(2 * n, n + 1);
  m.topLeftCorner(n, n) = Identity(n);
  m.bottomLeftCorner(n, n) = R;
  m.bottomRightCorner(n, 1) = Ru;
  return m;
}

TfmiResult NpTfmi(TfmiKind kind, const Evaluator& w, const Realization& r, Complex z) {
  RequireNonsingular(z, r, "NpTfmi");
  const Eigen::Index n = r.dim();
  const double d = 1.0 - std::norm(z);
  const CMatrix W = NpW(w, r, z);
  const CMatrix F = NpFmi(w, r, z).matrix;
  TfmiResult out;
  if (kind == TfmiKind::kI) {
    const CVector db = (NpB(w, r, z) - NpB(w, r, 1.0 / std::conj(z))) / d;
    out.direct = CMatrix(n + 1, n + 1);
    out.direct.topLeftCorner(n, n) = (W + W.adjoint()) / d;
    out.direct.topRightCorner(n, 1) = db;
    out.direct.bottomLeftCorner(1, n) = db.adjoint();
    out.direct(n, n) = NpC(w, z);
    const CMatrix M = NpFraming(Framing::kM1, r, z);
    out.framed = M * F * M.adjoint();
  } else if (kind == TfmiKind::kII) {
    out.direct = CMatrix(2 * n, 2 * n);
    out.direct.topLeftCorner(n, n) = r.A;
    out.direct.topRightCorner(n, n) = W + r.A / 2.0;
    out.direct.bottomLeftCorner(n, n) = W.adjoint() + r.A / 2.0;
    out.direct.bottomRightCorner(n, n) = (W + W.adjoint()) / d;
    const CMatrix M = NpFraming(Framing::kM2, r, z);
    out.framed = M * F * M.adjoint();
  } else {
    throw std::invalid_argument("NpTfmi: truncated transformation is defined for the moment problem only");
  }
  out.residual = ScaledResidual(out.direct, out.framed);
  return out;
}

std::span<const NpIdentity> AllNpIdentities() {
  static constexpr std::array kAll{
      NpIdentity::kCayleyResolvent, NpIdentity::kWDisplacement,     NpIdentity::kFramedI,
      NpIdentity::kFramedII,        NpIdentity::kResolventSandwich, NpIdentity::kSymmetricPoint,
      NpIdentity::kShiftedStein,    NpIdentity::kWSymmetry,         NpIdentity::kWForms,
  };
  return kAll;
}

std::string_view Name(NpIdentity id) {
  switch (id) {
    case NpIdentity::kCayleyResolvent: return "cayley_resolvent";
    case NpIdentity::kWDisplacement: return "w_displacement";
    case NpIdentity::kFramedI: return "framed_tfmi_I";
    case NpIdentity::kFramedII: return "framed_tfmi_II";
    case NpIdentity::kResolventSandwich: return "resolvent_sandwich";
    case NpIdentity::kSymmetricPoint: return "symmetric_point";
    case NpIdentity::kShiftedStein: return "shifted_stein";
    case NpIdentity::kWSymmetry: return "w_symmetry";
    case NpIdentity::kWForms: return "w_forms";
  }
  return "unknown";
}

SymmetricPointForms NpSymmetricPoint(const Evaluator& w, const Realization& r, Complex z) {
  RequireNonsingular(z, r, "NpSymmetricPoint");
  const Eigen::Index n = r.dim();
  const CMatrix I = Identity(n);
  const Complex zb = std::conj(z);
  const double d = 1.0 - std::norm(z);

  // FMI-equivalent form G(p) = [[(p-T) A (conj p - T*), u w(p) - v], [*, C(p)]].
  const auto g = [&](Complex p) {
    const Complex wp = w(p);
    CMatrix m(n + 1, n + 1);
    m.topLeftCorner(n, n) = (p * I - r.T) * r.A * (std::conj(p) * I - r.T.adjoint());
    const CVector col = r.u * wp - r.v;
    m.topRightCorner(n, 1) = col;
    m.bottomLeftCorner(1, n) = col.adjoint();
    m(n, n) = 2.0 * wp.real() / (1.0 - std::norm(p));
    return m;
  };

  CMatrix L = CMatrix::Identity(n + 1, n + 1);
  L.topRightCorner(n, 1) = -d * r.u;

  const Complex reflected = 1.0 / zb;
  const Complex w_reflected = w(reflected);
  SymmetricPointForms out;
  out.transformed = L * g(z) * L.adjoint();
  out.expected = CMatrix(n + 1, n + 1);
  out.expected.topLeftCorner(n, n) = (I - zb * r.T) * r.A * (I - z * r.T.adjoint());
  const CVector col = r.u * w_reflected - r.v;
  out.expected.topRightCorner(n, 1) = col;
  out.expected.bottomLeftCorner(1, n) = col.adjoint();
  out.expected(n, n) = NpC(w, z);
  out.reflected = g(reflected);
  return out;
}

double NpIdentityResidual(NpIdentity id, const Evaluator& w, const Realization& r, Complex z,
                          Complex t) {
  if (id == NpIdentity::kShiftedStein) {
    RequireRegular(z, NodesOf(r), "NpIdentityResidual");
  } else {
    RequireNonsingular(z, r, "NpIdentityResidual");
  }
  const Eigen::Index n = r.dim();
  const CMatrix I = Identity(n);
  const Complex zb = std::conj(z);
  const double d = 1.0 - std::norm(z);
  switch (id) {
    case NpIdentity::kCayleyResolvent: {
      if (std::abs(std::abs(t) - 1.0) > 1e-12) {
        throw std::invalid_argument("NpIdentityResidual: t must lie on the unit circle");
      }
      const CMatrix rt = (t * I - r.T).partialPivLu().inverse();
      const CMatrix lhs = HalfCayley(r, z) * rt;
      const CMatrix rhs = 0.5 * (t + z) / (t - z) * rt + z / (z - t) * ZMinusTInverse(r, z);
      return ScaledResidual(lhs, rhs);
    }
    case NpIdentity::kWDisplacement: {
      const CMatrix W = NpW(w, r, z);
      const CMatrix twt = r.T * W * r.T.adjoint();
      const CMatrix rhs =
          r.u * NpPhi(w, r, 1.0 / zb).adjoint() - NpPhi(w, r, z) * r.u.adjoint();
      return ResidualNorm(W - twt, rhs) / std::max({1.0, MaxAbs(W), MaxAbs(twt), MaxAbs(rhs)});
    }
    case NpIdentity::kFramedI: return NpTfmi(TfmiKind::kI, w, r, z).residual;
    case NpIdentity::kFramedII: return NpTfmi(TfmiKind::kII, w, r, z).residual;
    case NpIdentity::kResolventSandwich: {
      const CMatrix left = ZMinusTInverse(r, z);
      const CMatrix right = (zb * I - r.T.adjoint()).partialPivLu().inverse();
      const CMatrix lhs = left * r.A * right;
      const CMatrix cayley_star =
          0.5 * (r.T.adjoint() + zb * I) * (r.T.adjoint() - zb * I).partialPivLu().inverse();
      const CMatrix rhs = (HalfCayley(r, z) * r.A + r.A * cayley_star) / d +
                          left * (r.u * r.v.adjoint() + r.v * r.u.adjoint()) / d * right;
      return ScaledResidual(lhs, rhs);
    }
    case NpIdentity::kSymmetricPoint: {
      const auto forms = NpSymmetricPoint(w, r, z);
      return ScaledResidual(forms.transformed, forms.expected);
    }
    case NpIdentity::kShiftedStein: {
      const CMatrix lhs = (z * I - r.T) * r.A * (zb * I - r.T.adjoint()) +
                          d * (r.u * r.v.adjoint() + r.v * r.u.adjoint());
      const CMatrix rhs = (I - zb * r.T) * r.A * (I - z * r.T.adjoint());
      return ScaledResidual(lhs, rhs);
    }
    case NpIdentity::kWSymmetry: {
      return ScaledResidual(NpW(w, r, z), -NpW(w, r, 1.0 / zb).adjoint());
    }
    case NpIdentity::kWForms: {
      return ScaledResidual(NpW(w, r, z, NpWForm::kResolvent),
                            NpW(w, r, z, NpWForm::kAlternative));
    }
  }
  throw std::invalid_argument("NpIdentityResidual: unknown identity");
}

SchwarzPickReport NpSchwarzPickEquivalence(const Evaluator& w, const Realization& r,
                                           std::span<const Complex> grid, double tol) {
  SchwarzPickReport out;
  double best_w = std::numeric_limits<double>::infinity();
  double best_t = std::numeric_limits<double>::infinity();
  bool any = false;
  for (Complex z : grid) {
    if (!NpNonsingular(z, r) || std::abs(z) >= 1.0) {
      ++out.skipped;
      continue;
    }
    any = true;
    const CMatrix W = NpW(w, r, z);
    const CMatrix re = W + W.adjoint();
    const double ew = MinEigenvalue(re);
    const double scaled_w = ew / std::max(1.0, MaxAbs(re));
    if (scaled_w < best_w) {
      best_w = scaled_w;
      out.min_w_real_part = ew;
      out.witness_w = z;
    }
    const CMatrix t2 = NpTfmi(TfmiKind::kII, w, r, z).direct;
    const double et = MinEigenvalue(t2);
    const double scaled_t = et / std::max(1.0, MaxAbs(t2));
    if (scaled_t < best_t) {
      best_t = scaled_t;
      out.min_tfmi_ii = et;
      out.witness_tfmi = z;
    }
  }
  if (!any) throw std::invalid_argument("NpSchwarzPickEquivalence: no nonsingular grid points");
  out.w_nonnegative = best_w >= -tol;
  out.tfmi_nonnegative = best_t >= -tol;
  out.signs_agree = out.w_nonnegative == out.tfmi_nonnegative;
  return out;
}

CheckReport ToCheckReport(const SchwarzPickReport& report) {
  CheckReport out;
  out.check_name = "np.schwarz_pick";
  out.verdict = report.signs_agree && report.w_nonnegative;
  out.min_eigenvalue = std::min(report.min_w_real_part, report.min_tfmi_ii);
  out.witness_point =
      report.min_w_real_part <= report.min_tfmi_ii ? report.witness_w : report.witness_tfmi;
  out.details = {{"min_eig_w_real_part", report.min_w_real_part},
                 {"min_eig_tfmi_II", report.min_tfmi_ii},
                 {"w_nonnegative", report.w_nonnegative},
                 {"tfmi_II_nonnegative", report.tfmi_nonnegative},
                 {"signs_agree", report.signs_agree},
                 {"skipped_points", report.skipped}};
  return out;
}

}  // namespace fmi

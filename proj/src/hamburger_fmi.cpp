#include "fmi/hamburger_fmi.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fmi {

namespace {

constexpr double kRealAxisTol = 1e-12;

void RequireOffAxis(Complex z, const char* fn) {
  if (std::abs(z.imag()) <= kRealAxisTol) {
    throw std::domain_error(std::string(fn) + ": z must have nonzero imaginary part");
  }
}

CMatrix Identity(Eigen::Index n) { return CMatrix::Identity(n, n); }

CVector Column(const Realization& r, const Evaluator& w, Complex z) {
  return r.u * w(z) - r.v;
}

double AbsMoment(const LineMeasure& sigma, int k) {
  double total = 0.0;
  for (std::size_t j = 0; j < sigma.size(); ++j) {
    total += sigma.weights()[j] * std::pow(std::abs(sigma.atoms()[j]), k);
  }
  return total;
}

}  // namespace

void ValidateMomentData(const MomentData& data) {
  if (data.s.size() < 3 || data.s.size() % 2 == 0) {
    throw std::invalid_argument("MomentData: expected odd length >= 3, got " +
                                std::to_string(data.s.size()));
  }
  for (std::size_t k = 0; k < data.s.size(); ++k) {
    if (!std::isfinite(data.s[k])) {
      throw std::invalid_argument("MomentData: non-finite moment s_" + std::to_string(k));
    }
  }
}

Realization HRealization(const MomentData& data) {
  ValidateMomentData(data);
  const Eigen::Index m = data.n() + 1;
  Realization r;
  r.kind = RealizationKind::kHalfPlane;
  r.A = CMatrix(m, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    for (Eigen::Index l = 0; l < m; ++l) r.A(k, l) = data.s[static_cast<std::size_t>(k + l)];
  }
  r.T = CMatrix::Zero(m, m);
  for (Eigen::Index k = 1; k < m; ++k) r.T(k, k - 1) = 1.0;
  r.u = CVector::Zero(m);
  r.u(0) = 1.0;
  r.v = CVector::Zero(m);
  for (Eigen::Index k = 1; k < m; ++k) r.v(k) = -data.s[static_cast<std::size_t>(k - 1)];
  return r;
}

MomentData MomentsOf(const Realization& r) {
  const Eigen::Index n = r.dim() - 1;
  MomentData out;
  out.s.resize(static_cast<std::size_t>(2 * n + 1));
  for (Eigen::Index k = 0; k <= n; ++k) out.s[static_cast<std::size_t>(k)] = r.A(0, k).real();
  for (Eigen::Index k = 1; k <= n; ++k) {
    out.s[static_cast<std::size_t>(n + k)] = r.A(k, n).real();
  }
  return out;
}

CMatrix HResolvent(const Realization& r, Complex z) {
  const Eigen::Index m = r.dim();
  CMatrix sum = Identity(m);
  CMatrix power = Identity(m);
  for (Eigen::Index k = 1; k < m; ++k) {
    power = power * (z * r.T);
    sum += power;
  }
  if (MaxAbs(power * r.T) != 0.0) {
    throw std::invalid_argument("HResolvent: T is not nilpotent of order dim");
  }
  return sum;
}

CVector HB(const Evaluator& w, const Realization& r, Complex z) {
  RequireOffAxis(z, "HB");
  return HResolvent(r, z) * Column(r, w, z);
}

CVector HBShifted(const Evaluator& w, const Realization& r, Complex z) {
  return r.T * HB(w, r, z);
}

CVector HBPolynomial(const Evaluator& w, const MomentData& data, Complex z) {
  ValidateMomentData(data);
  RequireOffAxis(z, "HBPolynomial");
  const Complex wz = w(z);
  const int n = data.n();
  CVector b(n + 1);
  for (int k = 0; k <= n; ++k) {
    b(k) = BPoly(wz, z, k, std::span<const double>(data.s.data(), static_cast<std::size_t>(k)));
  }
  return b;
}

double HC(const Evaluator& w, Complex z) {
  RequireOffAxis(z, "HC");
  return w(z).imag() / z.imag();
}

FmiMatrix HFmi(const Evaluator& w, const Realization& r, Complex z) {
  const Eigen::Index m = r.dim();
  const CVector b = HB(w, r, z);
  FmiMatrix out{z, CMatrix(m + 1, m + 1)};
  out.matrix.topLeftCorner(m, m) = r.A;
  out.matrix.topRightCorner(m, 1) = b;
  out.matrix.bottomLeftCorner(1, m) = b.adjoint();
  out.matrix(m, m) = HC(w, z);
  return out;
}

FmiMatrix HFmi(const Evaluator& w, const MomentData& data, Complex z) {
  return HFmi(w, HRealization(data), z);
}

CMatrix HW(const Evaluator& w, const Realization& r, Complex z) {
  RequireOffAxis(z, "HW");
  const CMatrix R = HResolvent(r, z);
  // (I - z T*)^{-1} is the adjoint of (I - conj z T)^{-1}.
  const CMatrix Rstar = HResolvent(r, std::conj(z)).adjoint();
  return r.T * R * r.A - R * r.u * r.v.adjoint() * Rstar + R * r.u * w(z) * r.u.adjoint() * Rstar;
}

CMatrix HWHankel(const Evaluator& w, const MomentData& data, Complex z) {
  ValidateMomentData(data);
  RequireOffAxis(z, "HWHankel");
  const Complex wz = w(z);
  const int n = data.n();
  std::vector<Complex> b(static_cast<std::size_t>(2 * n + 1));
  for (int k = 0; k <= 2 * n; ++k) {
    b[static_cast<std::size_t>(k)] =
        BPoly(wz, z, k, std::span<const double>(data.s.data(), static_cast<std::size_t>(k)));
  }
  CMatrix out(n + 1, n + 1);
  for (int k = 0; k <= n; ++k) {
    for (int l = 0; l <= n; ++l) out(k, l) = b[static_cast<std::size_t>(k + l)];
  }
  return out;
}

CMatrix HWStable(const LineMeasure& sigma, const MomentData& data, Complex z) {
  ValidateMomentData(data);
  RequireOffAxis(z, "HWStable");
  const int n = data.n();
  std::vector<Complex> b(static_cast<std::size_t>(2 * n + 1));
  for (int k = 0; k <= 2 * n; ++k) {
    b[static_cast<std::size_t>(k)] = BPolyStable(
        sigma, z, k, std::span<const double>(data.s.data(), static_cast<std::size_t>(k)));
  }
  CMatrix out(n + 1, n + 1);
  for (int k = 0; k <= n; ++k) {
    for (int l = 0; l <= n; ++l) out(k, l) = b[static_cast<std::size_t>(k + l)];
  }
  return out;
}

double HSymmetryW(const Evaluator& w, const Realization& r, Complex z) {
  return ResidualNorm(HW(w, r, z), HW(w, r, std::conj(z)).adjoint());
}

CVector HPhi(const Evaluator& w, const Realization& r, Complex z) {
  RequireOffAxis(z, "HPhi");
  return -r.T * HResolvent(r, z) * Column(r, w, z);
}

CMatrix HFraming(HFramingKind kind, const Realization& r, Complex z) {
  const Eigen::Index m = r.dim();
  const Complex zb = std::conj(z);
  const CMatrix R = HResolvent(r, zb);
  switch (kind) {
    case HFramingKind::kM1: {
      CMatrix out = CMatrix::Zero(m + 1, m + 1);
      out.topLeftCorner(m, m) = r.T * R;
      out.topRightCorner(m, 1) = R * r.u;
      out(m, m) = 1.0;
      return out;
    }
    case HFramingKind::kM2: {
      CMatrix out = CMatrix::Zero(2 * m, m + 1);
      out.topLeftCorner(m, m) = Identity(m);
      out.bottomLeftCorner(m, m) = r.T * R;
      out.bottomRightCorner(m, 1) = R * r.u;
      return out;
    }
    case HFramingKind::kN: {
      CMatrix out = CMatrix::Zero(m + 1, 2 * m);
      out.topLeftCorner(m, m) = Identity(m);
      out.bottomRightCorner(1, m) = (Identity(m) - zb * r.T).row(0);
      return out;
    }
    case HFramingKind::kTruncated: {
      const Eigen::Index n = m - 1;
      CMatrix out = CMatrix::Zero(2, m + 1);
      out(0, n) = 1.0;
      for (Eigen::Index j = 0; j < n; ++j) out(1, j) = std::pow(zb, static_cast<int>(n - 1 - j));
      out(1, m) = std::pow(zb, static_cast<int>(n));
      return out;
    }
    case HFramingKind::kProjector: {
      CMatrix out = CMatrix::Zero(m + 1, m + 1);
      out.topLeftCorner(m, m) = r.T.adjoint() * (Identity(m) - zb * r.T);
      out(m, m) = 1.0;
      return out;
    }
  }
  throw std::invalid_argument("HFraming: unknown framing");
}

TfmiResult HTfmi(TfmiKind kind, const Evaluator& w, const Realization& r, Complex z) {
  RequireOffAxis(z, "HTfmi");
  const Eigen::Index m = r.dim();
  const Complex dz = z - std::conj(z);
  const CMatrix F = HFmi(w, r, z).matrix;
  TfmiResult out;
  switch (kind) {
    case TfmiKind::kI: {
      const CMatrix W = HW(w, r, z);
      const CVector db = (HB(w, r, z) - HB(w, r, std::conj(z))) / dz;
      out.direct = CMatrix(m + 1, m + 1);
      out.direct.topLeftCorner(m, m) = (W - W.adjoint()) / dz;
      out.direct.topRightCorner(m, 1) = db;
      out.direct.bottomLeftCorner(1, m) = db.adjoint();
      out.direct(m, m) = HC(w, z);
      const CMatrix M = HFraming(HFramingKind::kM1, r, z);
      out.framed = M * F * M.adjoint();
      break;
    }
    case TfmiKind::kII: {
      const CMatrix W = HW(w, r, z);
      out.direct = CMatrix(2 * m, 2 * m);
      out.direct.topLeftCorner(m, m) = r.A;
      out.direct.topRightCorner(m, m) = W;
      out.direct.bottomLeftCorner(m, m) = W.adjoint();
      out.direct.bottomRightCorner(m, m) = (W - W.adjoint()) / dz;
      const CMatrix M = HFraming(HFramingKind::kM2, r, z);
      out.framed = M * F * M.adjoint();
      break;
    }
    case TfmiKind::kTruncated: {
      const MomentData data = MomentsOf(r);
      const int n = data.n();
      const Complex b = BPoly(w(z), z, 2 * n,
                              std::span<const double>(data.s.data(), static_cast<std::size_t>(2 * n)));
      out.direct = CMatrix(2, 2);
      out.direct(0, 0) = data.s.back();
      out.direct(0, 1) = b;
      out.direct(1, 0) = std::conj(b);
      out.direct(1, 1) = (b - std::conj(b)) / dz;
      const CMatrix M = HFraming(HFramingKind::kTruncated, r, z);
      out.framed = M * F * M.adjoint();
      break;
    }
  }
  out.residual = ScaledResidual(out.direct, out.framed);
  return out;
}

std::span<const HIdentity> AllHIdentities() {
  static constexpr std::array kAll{
      HIdentity::kResolventSplit, HIdentity::kResolventDifference, HIdentity::kPhiDisplacement,
      HIdentity::kFramedI,        HIdentity::kFramedII,            HIdentity::kSandwich,
      HIdentity::kProjector,      HIdentity::kLeftInverse,         HIdentity::kConjugatePoint,
      HIdentity::kShiftedFi,      HIdentity::kTruncated,           HIdentity::kHankel,
      HIdentity::kWSymmetry,      HIdentity::kColumnRecovery,
  };
  return kAll;
}

std::string_view Name(HIdentity id) {
  switch (id) {
    case HIdentity::kResolventSplit: return "resolvent_split";
    case HIdentity::kResolventDifference: return "resolvent_difference";
    case HIdentity::kPhiDisplacement: return "phi_displacement";
    case HIdentity::kFramedI: return "framed_tfmi_I";
    case HIdentity::kFramedII: return "framed_tfmi_II";
    case HIdentity::kSandwich: return "resolvent_sandwich";
    case HIdentity::kProjector: return "projector_framing";
    case HIdentity::kLeftInverse: return "left_inverse";
    case HIdentity::kConjugatePoint: return "conjugate_point";
    case HIdentity::kShiftedFi: return "shifted_fi";
    case HIdentity::kTruncated: return "truncated_framing";
    case HIdentity::kHankel: return "w_hankel";
    case HIdentity::kWSymmetry: return "w_symmetry";
    case HIdentity::kColumnRecovery: return "column_recovery";
  }
  return "unknown";
}

ConjugatePointForms HConjugatePoint(const Evaluator& w, const Realization& r, Complex z) {
  RequireOffAxis(z, "HConjugatePoint");
  const Eigen::Index m = r.dim();
  const CMatrix I = Identity(m);
  const auto f = [&](Complex p) {
    CMatrix out(m + 1, m + 1);
    out.topLeftCorner(m, m) = (I - p * r.T) * r.A * (I - std::conj(p) * r.T.adjoint());
    const CVector col = Column(r, w, p);
    out.topRightCorner(m, 1) = col;
    out.bottomLeftCorner(1, m) = col.adjoint();
    out(m, m) = HC(w, p);
    return out;
  };
  const Complex zb = std::conj(z);
  CMatrix left = CMatrix::Identity(m + 1, m + 1);
  left.topRightCorner(m, 1) = (zb - z) * r.u;
  CMatrix right = CMatrix::Identity(m + 1, m + 1);
  right.bottomLeftCorner(1, m) = (z - zb) * r.u.adjoint();
  return {left * f(z) * right, f(zb)};
}

double HIdentityResidual(HIdentity id, const Evaluator& w, const Realization& r, Complex z,
                         double lambda) {
  RequireOffAxis(z, "HIdentityResidual");
  const Eigen::Index m = r.dim();
  const CMatrix I = Identity(m);
  const Complex zb = std::conj(z);
  const Complex dz = z - zb;
  switch (id) {
    case HIdentity::kResolventSplit: {
      const CMatrix Rl = HResolvent(r, lambda);
      const CMatrix lhs = Rl / (lambda - z);
      const CMatrix rhs = HResolvent(r, z) * (I / (lambda - z) + r.T * Rl);
      return ScaledResidual(lhs, rhs);
    }
    case HIdentity::kResolventDifference: {
      const CMatrix Rl = HResolvent(r, lambda);
      const CMatrix Rz = HResolvent(r, z);
      const CMatrix lhs = r.T * Rz * Rl * r.u;
      const CMatrix rhs = (Rl * r.u - Rz * r.u) / (lambda - z);
      return ScaledResidual(lhs, rhs);
    }
    case HIdentity::kPhiDisplacement: {
      const CMatrix W = HW(w, r, z);
      const CMatrix tw = r.T * W;
      const CMatrix wt = W * r.T.adjoint();
      const CMatrix rhs = r.u * HPhi(w, r, zb).adjoint() - HPhi(w, r, z) * r.u.adjoint();
      // Off the first row and column the left side cancels exactly; scale by its terms.
      return ResidualNorm(tw - wt, rhs) /
             std::max({1.0, MaxAbs(tw), MaxAbs(wt), MaxAbs(rhs)});
    }
    case HIdentity::kFramedI: return HTfmi(TfmiKind::kI, w, r, z).residual;
    case HIdentity::kFramedII: return HTfmi(TfmiKind::kII, w, r, z).residual;
    case HIdentity::kSandwich: {
      const CMatrix Rz = HResolvent(r, z);
      const CMatrix Rstar = HResolvent(r, z).adjoint();  // (I - conj z T*)^{-1}
      const CMatrix lhs = r.T * Rz * r.A * Rstar * r.T.adjoint();
      const CMatrix rhs = (r.T * Rz * r.A - r.A * Rstar * r.T.adjoint()) / dz -
                          Rz * (r.u * r.v.adjoint() - r.v * r.u.adjoint()) / dz * Rstar;
      return ScaledResidual(lhs, rhs);
    }
    case HIdentity::kProjector: {
      CMatrix expected = CMatrix::Identity(m + 1, m + 1);
      expected(m - 1, m - 1) = 0.0;
      return ScaledResidual(
          HFraming(HFramingKind::kProjector, r, z) * HFraming(HFramingKind::kM1, r, z), expected);
    }
    case HIdentity::kLeftInverse: {
      return ScaledResidual(HFraming(HFramingKind::kN, r, z) * HFraming(HFramingKind::kM2, r, z),
                            CMatrix::Identity(m + 1, m + 1));
    }
    case HIdentity::kConjugatePoint: {
      const auto forms = HConjugatePoint(w, r, z);
      return ScaledResidual(forms.transformed, forms.expected);
    }
    case HIdentity::kShiftedFi: {
      const CMatrix lhs = (I - zb * r.T) * r.A * (I - z * r.T.adjoint()) -
                          dz * (r.u * r.v.adjoint() - r.v * r.u.adjoint());
      const CMatrix rhs = (I - z * r.T) * r.A * (I - zb * r.T.adjoint());
      return ScaledResidual(lhs, rhs);
    }
    case HIdentity::kTruncated: return HTfmi(TfmiKind::kTruncated, w, r, z).residual;
    case HIdentity::kHankel: return ScaledResidual(HW(w, r, z), HWHankel(w, MomentsOf(r), z));
    case HIdentity::kWSymmetry: return ScaledResidual(HW(w, r, z), HW(w, r, zb).adjoint());
    case HIdentity::kColumnRecovery: return ScaledResidual(HB(w, r, z), HW(w, r, z).col(0));
  }
  throw std::invalid_argument("HIdentityResidual: unknown identity");
}

std::span<const double> DefaultYLadder() {
  static constexpr std::array kLadder{1e3, 1e4, 1e5, 1e6};
  return kLadder;
}

ExtractionReport ExtractMoments(const LineMeasure& sigma, const MomentData& data, double tol,
                                std::span<const double> ladder) {
  ValidateMomentData(data);
  if (ladder.empty()) throw std::invalid_argument("ExtractMoments: empty y ladder");
  const int n = data.n();
  const Eigen::Index m = n + 1;
  ExtractionReport out;

  out.recovered_moments = Moments(sigma, 2 * n + 1);
  std::vector<double> entry_tol(static_cast<std::size_t>(2 * n + 1));
  for (int k = 0; k <= 2 * n; ++k) {
    entry_tol[static_cast<std::size_t>(k)] = tol + 1e-12 * AbsMoment(sigma, k);
  }
  const double scale_tol = *std::max_element(entry_tol.begin(), entry_tol.end());

  const Realization r = HRealization(data);
  out.A_sigma = CMatrix(m, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    for (Eigen::Index l = 0; l < m; ++l) {
      out.A_sigma(k, l) = out.recovered_moments[static_cast<std::size_t>(k + l)];
    }
  }
  out.gap = r.A - out.A_sigma;
  out.rho = out.gap(n, n).real();

  out.gap_min_eigenvalue = MinEigenvalue(out.gap);
  out.gap_psd = out.gap_min_eigenvalue >= -scale_tol;

  const CMatrix annihilated = r.T * out.gap * r.T.adjoint();
  out.annihilation_residual = MaxAbs(annihilated);
  out.gap_annihilated = true;
  CMatrix rank_one_defect = out.gap;
  rank_one_defect(n, n) -= out.rho;
  out.rank_one_residual = MaxAbs(rank_one_defect);
  out.rank_one_gap = out.rho >= -entry_tol.back();
  for (Eigen::Index k = 0; k < m; ++k) {
    for (Eigen::Index l = 0; l < m; ++l) {
      const double t = entry_tol[static_cast<std::size_t>(k + l)];
      if (k >= 1 && l >= 1 &&
          std::abs(annihilated(k, l)) > entry_tol[static_cast<std::size_t>(k + l - 2)]) {
        out.gap_annihilated = false;
      }
      if (std::abs(rank_one_defect(k, l)) > t) out.rank_one_gap = false;
    }
  }

  out.moments_match = true;
  for (int k = 0; k < 2 * n; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    if (std::abs(out.recovered_moments[kk] - data.s[kk]) > entry_tol[kk]) {
      out.moments_match = false;
    }
  }
  out.top_moment_bound = out.recovered_moments.back() <= data.s.back() + entry_tol.back();

  out.ladder.assign(ladder.begin(), ladder.end());
  const std::span<const double> lower(data.s.data(), static_cast<std::size_t>(2 * n));
  for (double y : out.ladder) {
    const Complex iy(0.0, y);
    out.s2n_estimates.push_back((-iy * BPolyStable(sigma, iy, 2 * n, lower)).real());
  }
  out.asymptotic_s2n = out.s2n_estimates.back();
  const double spread = std::abs(out.s2n_estimates.front() - out.asymptotic_s2n);
  out.ladder_converged = spread <= 5e-5 * std::max(std::abs(out.asymptotic_s2n), tol);

  const double y_top = out.ladder.back();
  const Complex iy_top(0.0, y_top);
  const CMatrix limit = -iy_top * HWStable(sigma, data, iy_top);
  out.w_limit_error = MaxAbs(limit - out.A_sigma) / std::max(1.0, MaxAbs(out.A_sigma));
  out.w_limit = out.w_limit_error <= 1e-4;

  out.growth = y_top * std::abs(BPolyStable(sigma, iy_top, 2 * n, lower));
  out.growth_bound = out.growth <= data.s.back() * 1.01 + entry_tol.back();
  return out;
}

LineMeasure RepresentingMeasure(const MomentData& data) {
  ValidateMomentData(data);
  const int n = data.n();
  Eigen::MatrixXd leading(n, n);
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) leading(k, l) = data.s[static_cast<std::size_t>(k + l)];
  }
  const double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(leading, Eigen::EigenvaluesOnly)
                             .eigenvalues()
                             .minCoeff();
  if (!(min_eig > 1e-10)) {
    throw std::domain_error("RepresentingMeasure: leading Hankel block is not positive definite"
                            " (min eigenvalue " + std::to_string(min_eig) + ")");
  }

  // Modified Chebyshev algorithm on ordinary moments.
  const auto len = static_cast<std::size_t>(2 * n);
  std::vector<double> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
  std::vector<double> prev(len, 0.0);
  std::vector<double> cur(data.s.begin(), data.s.begin() + static_cast<std::ptrdiff_t>(len));
  a[0] = cur[1] / cur[0];
  b[0] = cur[0];
  for (int k = 1; k < n; ++k) {
    std::vector<double> next(len, 0.0);
    const auto ku = static_cast<std::size_t>(k);
    for (std::size_t l = ku; l < len - ku; ++l) {
      next[l] = cur[l + 1] - a[ku - 1] * cur[l] - b[ku - 1] * prev[l];
    }
    a[ku] = next[ku + 1] / next[ku] - cur[ku] / cur[ku - 1];
    b[ku] = next[ku] / cur[ku - 1];
    prev = std::move(cur);
    cur = std::move(next);
  }

  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    jacobi(k, k) = a[static_cast<std::size_t>(k)];
    if (k + 1 < n) {
      const double off = std::sqrt(b[static_cast<std::size_t>(k + 1)]);
      jacobi(k, k + 1) = off;
      jacobi(k + 1, k) = off;
    }
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  std::vector<double> atoms(static_cast<std::size_t>(n)), weights(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    atoms[static_cast<std::size_t>(k)] = solver.eigenvalues()(k);
    const double v0 = solver.eigenvectors()(0, k);
    weights[static_cast<std::size_t>(k)] = b[0] * v0 * v0;
  }
  return LineMeasure(std::move(atoms), std::move(weights));
}

}  // namespace fmi

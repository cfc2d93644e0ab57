#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "fmi/hermitian.hpp"
#include "fmi/measures.hpp"
#include "fmi/realization.hpp"

namespace fmi {

/// Moment sequence s_0..s_{2n}.
struct MomentData {
  std::vector<double> s;

  int n() const { return static_cast<int>(s.size() / 2); }
};

/// Throws std::invalid_argument unless the length is odd and at least 3 and
/// every entry is finite.
void ValidateMomentData(const MomentData& data);

/// (n+1)x(n+1) Hankel A[k][l] = s_{k+l}, u = e_0, v = (0, -s_0, ..., -s_{n-1}),
/// T = lower shift.
Realization HRealization(const MomentData& data);

/// s_0..s_{2n} read back from the first row and last column of A.
MomentData MomentsOf(const Realization& r);

/// (I - zT)^{-1} as the finite Neumann sum; T must be nilpotent of order
/// dim (checked by the final power).
CMatrix HResolvent(const Realization& r, Complex z);

/// FMI column (I - zT)^{-1}(u w(z) - v) = [b_{w,0}, ..., b_{w,n}].
CVector HB(const Evaluator& w, const Realization& r, Complex z);
/// T (I - zT)^{-1}(u w(z) - v) = [0, b_{w,0}, ..., b_{w,n-1}].
CVector HBShifted(const Evaluator& w, const Realization& r, Complex z);
/// [b_{w,0}(z), ..., b_{w,n}(z)] from the b polynomials.
CVector HBPolynomial(const Evaluator& w, const MomentData& data, Complex z);

/// (w(z) - conj w(z)) / (z - conj z). Throws std::domain_error for real z.
double HC(const Evaluator& w, Complex z);

FmiMatrix HFmi(const Evaluator& w, const Realization& r, Complex z);
FmiMatrix HFmi(const Evaluator& w, const MomentData& data, Complex z);

/// T(I-zT)^{-1} A - (I-zT)^{-1} u v* (I-zT*)^{-1} + (I-zT)^{-1} u w(z) u* (I-zT*)^{-1}.
CMatrix HW(const Evaluator& w, const Realization& r, Complex z);
/// Hankel matrix of b_{w,k+l}(z).
CMatrix HWHankel(const Evaluator& w, const MomentData& data, Complex z);
/// Hankel matrix of b_{w_sigma,k+l}(z) evaluated by BPolyStable; accurate for
/// large |z|.
CMatrix HWStable(const LineMeasure& sigma, const MomentData& data, Complex z);

/// max |W(z) - W(conj z)*|.
double HSymmetryW(const Evaluator& w, const Realization& r, Complex z);

/// -T (I - zT)^{-1}(u w(z) - v).
CVector HPhi(const Evaluator& w, const Realization& r, Complex z);

enum class HFramingKind {
  kM1,         // [[T R, R u], [0, 1]], R = (I - conj(z) T)^{-1}
  kM2,         // [[I, 0], [T R, R u]]
  kN,          // [[I, 0], [0, e_0 (I - conj(z) T)]], left inverse of M2
  kTruncated,  // 2 x (n+2): rows (e_n | 0) and (conj z^{n-1}, ..., 1, 0 | conj z^n)
  kProjector,  // [[T* (I - conj(z) T), 0], [0, 1]]; times M1 gives diag(P, 1)
};

CMatrix HFraming(HFramingKind kind, const Realization& r, Complex z);

/// kI:  [[(W-W*)/(z-conj z), (B(z)-B(conj z))/(z-conj z)], [*, C]]
/// kII: [[A, W], [W*, (W-W*)/(z-conj z)]]
/// kTruncated: [[s_2n, b_2n], [conj b_2n, (b_2n - conj b_2n)/(z-conj z)]]
TfmiResult HTfmi(TfmiKind kind, const Evaluator& w, const Realization& r, Complex z);

enum class HIdentity {
  kResolventSplit,       // (I-lT)^{-1}/(l-z) = (I-zT)^{-1}(1/(l-z) + T(I-lT)^{-1})
  kResolventDifference,  // T(I-zT)^{-1}(I-lT)^{-1}u = ((I-lT)^{-1}u - (I-zT)^{-1}u)/(l-z)
  kPhiDisplacement,      // T W - W T* = u phi(conj z)* - phi(z) u*
  kFramedI,              // M1 F M1* equals the transformed inequality I
  kFramedII,             // M2 F M2* equals the transformed inequality II
  kSandwich,             // T(I-zT)^{-1} A (I-conj z T*)^{-1} T* expansion
  kProjector,            // projector factor times M1 is diag(P, 1)
  kLeftInverse,          // N M2 = I
  kConjugatePoint,       // congruence between the FMI forms at z and conj z
  kShiftedFi,            // (I-conj z T)A(I-zT*) - (z-conj z)(uv*-vu*) = (I-zT)A(I-conj z T*)
  kTruncated,            // m F m* equals the 2x2 truncated inequality
  kHankel,               // W equals the Hankel matrix of b_{w,k+l}
  kWSymmetry,            // W(z) = W(conj z)*
  kColumnRecovery,       // B = W e_0
};

std::span<const HIdentity> AllHIdentities();
std::string_view Name(HIdentity id);

/// Scaled residual between the two sides. `lambda` (real) is used only by
/// the two resolvent identities.
double HIdentityResidual(HIdentity id, const Evaluator& w, const Realization& r, Complex z,
                         double lambda);

/// Both sides of the conjugate-point congruence applied to
/// F'(z) = [[(I-zT)A(I-conj z T*), u w(z) - v], [*, C(z)]].
struct ConjugatePointForms {
  CMatrix transformed;  // L F'(z) R
  CMatrix expected;     // F'(conj z)
};
ConjugatePointForms HConjugatePoint(const Evaluator& w, const Realization& r, Complex z);

/// Default ladder of imaginary parts for the asymptotic evaluations.
std::span<const double> DefaultYLadder();

struct ExtractionReport {
  CMatrix A_sigma;
  CMatrix gap;  // A - A_sigma
  double rho = 0.0;
  std::vector<double> recovered_moments;  // s_0(sigma)..s_{2n}(sigma)
  double asymptotic_s2n = 0.0;            // -iy b_{w,2n}(iy) at the top of the ladder
  std::vector<double> ladder;
  std::vector<double> s2n_estimates;
  bool ladder_converged = false;
  double w_limit_error = 0.0;  // relative distance of -iy W(iy) from A_sigma
  double growth = 0.0;         // y |b_{w,2n}(iy)| at the top of the ladder
  double gap_min_eigenvalue = 0.0;
  double annihilation_residual = 0.0;  // max |T gap T*|
  double rank_one_residual = 0.0;      // max |gap - rho e_n e_n*|

  bool gap_psd = false;
  bool gap_annihilated = false;
  bool rank_one_gap = false;
  bool moments_match = false;
  bool top_moment_bound = false;
  bool w_limit = false;
  bool growth_bound = false;

  bool all_verdicts() const {
    return gap_psd && gap_annihilated && rank_one_gap && moments_match && top_moment_bound &&
           w_limit && growth_bound;
  }
};

/// Moment information of w_sigma read against the data. Entry tolerances are
/// tol + 1e-12 times the absolute moment sum_j rho_j |lambda_j|^k.
ExtractionReport ExtractMoments(const LineMeasure& sigma, const MomentData& data,
                                double tol = 1e-9,
                                std::span<const double> ladder = DefaultYLadder());

/// n-point Gauss rule matching s_0..s_{2n-1}. Throws std::domain_error when
/// the leading n x n Hankel block has minimum eigenvalue <= 1e-10.
LineMeasure RepresentingMeasure(const MomentData& data);

}  // namespace fmi

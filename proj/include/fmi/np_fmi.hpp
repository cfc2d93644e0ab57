#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "fmi/hermitian.hpp"
#include "fmi/measures.hpp"
#include "fmi/realization.hpp"

namespace fmi {

/// Nevanlinna-Pick data: nodes z_k in the open unit disk with target values
/// w_k.
struct NpData {
  std::vector<Complex> nodes;
  std::vector<Complex> values;

  std::size_t size() const { return nodes.size(); }
};

/// Throws std::invalid_argument unless n >= 1, lengths match, every node is
/// inside the disk (|z_k| < 1 - 1e-12) and nodes are 1e-9 apart.
void ValidateNpData(const NpData& data);

/// u = ones, v = values, T = diag(nodes), A = Pick matrix
/// (w_k + conj w_l)/(1 - z_k conj z_l).
Realization NpRealization(const NpData& data);

/// Def. of a nonsingular point: z avoids 0, the nodes, their reflections
/// 1/conj(z_k) and the unit circle (distance threshold 1e-9).
bool NpNonsingular(Complex z, std::span<const Complex> nodes);
bool NpNonsingular(Complex z, const NpData& data);
bool NpNonsingular(Complex z, const Realization& r);

/// (zI - T)^{-1} (u w(z) - v).
CVector NpB(const Evaluator& w, const Realization& r, Complex z);
/// Entrywise (w(z) - w_k)/(z - z_k).
CVector NpBEntrywise(const Evaluator& w, const NpData& data, Complex z);
/// (w(z) + conj w(z)) / (1 - |z|^2).
double NpC(const Evaluator& w, Complex z);

FmiMatrix NpFmi(const Evaluator& w, const Realization& r, Complex z);
FmiMatrix NpFmi(const Evaluator& w, const NpData& data, Complex z);

/// The 2x2 principal block [[a_kk, b_k],[conj b_k, C]] for 1-based k.
CMatrix NpSubinequality(const FmiMatrix& fmi, int k);
/// 2 x (n+1) selector whose framing of the FMI yields NpSubinequality.
CMatrix NpSubinequalityFraming(int n, int k);

/// FMI blocks written as sums over the atoms of a disk function:
///   A = sum rho (t - T)^{-1} u u* (conj t - T*)^{-1}
///   B = sum rho (t - T)^{-1} u t/(t - z)
///   v = i c u + 1/2 sum rho (t + T)(t - T)^{-1} u
///   C = sum rho / |t - z|^2
struct NpMeasureBlocks {
  CMatrix A;
  CVector B;
  CVector v;
  double C = 0.0;
};
NpMeasureBlocks NpMeasureSide(const DiskHerglotz& w, std::span<const Complex> nodes, Complex z);

enum class NpWForm {
  kResolvent,    // 1/2 (T+z)(T-z)^{-1} A + (z-T)^{-1} u (v* + w u*) (1/z - T*)^{-1}
  kAlternative,  // 1/2 A (I+zT*)(I-zT*)^{-1} - (z-T)^{-1} (v - u w) u* (1/z - T*)^{-1}
};

/// The matrix function W_w. Accepts z = 0 (removable; W_w(0) = A/2) when 0
/// is not a node; otherwise z must avoid nodes, reflections and the circle.
CMatrix NpW(const Evaluator& w, const Realization& r, Complex z,
            NpWForm form = NpWForm::kResolvent);
/// Closed form for diagonal T:
/// 1/2 [ (z_k+z)/(z_k-z) (w_k - w) + (1+z conj z_l)/(1-z conj z_l) (w + conj w_l) ]
///     / (1 - z_k conj z_l).
CMatrix NpWEntrywise(const Evaluator& w, const NpData& data, Complex z);

/// max |W(z) + W(1/conj z)*|.
double NpSymmetryW(const Evaluator& w, const Realization& r, Complex z);

/// 1/2 (T + zI)(T - zI)^{-1} (u w(z) - v).
CVector NpPhi(const Evaluator& w, const Realization& r, Complex z);

enum class Framing { kM1, kM2 };

/// M1 = [[R, conj(z) R u],[0, 1]] (square, invertible) and
/// M2 = [[I, 0],[R, conj(z) R u]] (left-invertible), R = (I - conj(z) T)^{-1}.
/// Defined at every point off the nodes, their reflections and the circle,
/// z = 0 included.
CMatrix NpFraming(Framing kind, const Realization& r, Complex z);

/// kI:  [[(W+W*)/(1-|z|^2), (B(z)-B(1/conj z))/(1-|z|^2)], [*, C(z)]]
/// kII: [[A, W + A/2], [W* + A/2, (W+W*)/(1-|z|^2)]]
TfmiResult NpTfmi(TfmiKind kind, const Evaluator& w, const Realization& r, Complex z);

enum class NpIdentity {
  kCayleyResolvent,   // 1/2 (T+z)/(T-z) (t-T)^{-1} splits into scalar Schwarz kernel terms
  kWDisplacement,     // W - T W T* = u phi(1/conj z)* - phi(z) u*
  kFramedI,           // M1 F M1* equals the transformed inequality I
  kFramedII,          // M2 F M2* equals the transformed inequality II
  kResolventSandwich, // (z-T)^{-1} A (conj z - T*)^{-1} expansion
  kSymmetricPoint,    // congruence between the FMI at z and at 1/conj z
  kShiftedStein,      // (z-T) A (conj z - T*) + (1-|z|^2)(uv*+vu*) = (I - conj z T) A (I - z T*)
  kWSymmetry,         // W(z) = -W(1/conj z)*
  kWForms,            // resolvent and alternative forms of W agree
};

std::span<const NpIdentity> AllNpIdentities();
std::string_view Name(NpIdentity id);

/// Scaled residual between the two sides. `t` (on the unit circle) is used
/// only by kCayleyResolvent. kShiftedStein also accepts z = 0.
double NpIdentityResidual(NpIdentity id, const Evaluator& w, const Realization& r, Complex z,
                          Complex t);

/// Both sides of the congruence relating the FMI at z and at 1/conj z,
/// plus the FMI-equivalent matrix at the reflected point.
struct SymmetricPointForms {
  CMatrix transformed;  // L G(z) L*
  CMatrix expected;     // [[(I - conj z T) A (I - z T*), u w(1/conj z) - v], [*, C(z)]]
  CMatrix reflected;    // G(1/conj z)
};
SymmetricPointForms NpSymmetricPoint(const Evaluator& w, const Realization& r, Complex z);

struct SchwarzPickReport {
  double min_w_real_part = 0.0;  // min eig of W + W* over the grid
  Complex witness_w;
  double min_tfmi_ii = 0.0;      // min eig of the transformed inequality II
  Complex witness_tfmi;
  bool w_nonnegative = false;
  bool tfmi_nonnegative = false;
  bool signs_agree = false;
  int skipped = 0;
};

/// Positivity of Re W_w versus positivity of the second transformed
/// inequality over a grid; singular grid points are skipped and counted.
SchwarzPickReport NpSchwarzPickEquivalence(const Evaluator& w, const Realization& r,
                                           std::span<const Complex> grid, double tol = 1e-9);
CheckReport ToCheckReport(const SchwarzPickReport& report);

}  // namespace fmi

#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "fmi/hermitian.hpp"

namespace fmi {

/// A scalar function of one complex variable.
using Evaluator = std::function<Complex(Complex)>;

/// Finite nonnegative atomic measure on the unit circle.
class CircleMeasure {
 public:
  CircleMeasure() = default;
  /// Throws std::invalid_argument unless every atom has modulus 1 (within
  /// 1e-12), atoms are pairwise more than 1e-9 apart, weights are
  /// nonnegative and both sequences have equal length.
  CircleMeasure(std::vector<Complex> atoms, std::vector<double> weights);

  const std::vector<Complex>& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return atoms_.size(); }
  double total_mass() const;

 private:
  std::vector<Complex> atoms_;
  std::vector<double> weights_;
};

/// Finite nonnegative atomic measure on the real line.
class LineMeasure {
 public:
  LineMeasure() = default;
  LineMeasure(std::vector<double> atoms, std::vector<double> weights);

  const std::vector<double>& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return atoms_.size(); }

 private:
  std::vector<double> atoms_;
  std::vector<double> weights_;
};

/// ic + 1/2 sum_j rho_j (t_j + z)/(t_j - z): the Caratheodory function of a
/// circle measure.
struct DiskHerglotz {
  CircleMeasure measure;
  double c = 0.0;
};

/// sum_j rho_j / (lambda_j - z): the Cauchy transform of a line measure.
struct HalfPlaneNevanlinna {
  LineMeasure measure;
};

enum class FunctionClass { kDisk, kHalfPlane };

/// Throws std::domain_error when |z| = 1 within 1e-12.
Complex EvalDisk(const DiskHerglotz& w, Complex z);
/// Throws std::domain_error when z is within 1e-12 of an atom.
Complex EvalLine(const HalfPlaneNevanlinna& w, Complex z);

Evaluator MakeEvaluator(const DiskHerglotz& w);
Evaluator MakeEvaluator(const HalfPlaneNevanlinna& w);

/// s_k(sigma) = sum_j rho_j lambda_j^k.
double Moment(const LineMeasure& sigma, int k);
/// s_0..s_{count-1}.
std::vector<double> Moments(const LineMeasure& sigma, int count);

/// b_{w,k}(z) = z^k w + sum_{j<k} z^{k-1-j} s_j, with s = s_0..s_{k-1}.
/// Throws std::invalid_argument if s.size() != k.
Complex BPoly(Complex w_value, Complex z, int k, std::span<const double> s);

/// sum_j rho_j lambda_j^k / (lambda_j - z), summed directly.
Complex MomentCauchy(const LineMeasure& sigma, int k, Complex z);

/// b_{w_sigma,k}(z; s_0..s_{k-1}) evaluated without the z^k cancellation:
/// the moment-weighted transform plus sum_j z^{k-1-j} (s_j - s_j(sigma)).
/// Agrees with BPoly(EvalLine(sigma, z), z, k, s) algebraically and stays
/// accurate for large |z|.
Complex BPolyStable(const LineMeasure& sigma, Complex z, int k, std::span<const double> s);

/// |w(z) + conj(w(1/conj z))| (disk) or |w(z) - conj(w(conj z))| (half-plane).
double SymmetryResidual(const Evaluator& w, FunctionClass cls, Complex z);
double SymmetryResidual(const DiskHerglotz& w, Complex z);
double SymmetryResidual(const HalfPlaneNevanlinna& w, Complex z);

/// 2 Re w(z)/(1-|z|^2) (disk) or Im w(z)/Im z (half-plane). Nonnegative for
/// members of the class.
double PositivityProbe(const Evaluator& w, FunctionClass cls, Complex z);
double PositivityProbe(const DiskHerglotz& w, Complex z);
double PositivityProbe(const HalfPlaneNevanlinna& w, Complex z);

struct StieltjesEstimate {
  double weight = 0.0;
  bool converged = false;
  std::vector<double> estimates;  // one per schedule entry
};

/// Point mass at lambda0 from eps * Im w(lambda0 + i eps) along a strictly
/// decreasing schedule (at least three entries). `converged` is false when
/// successive estimates differ by more than 1e-6 max(1, |weight|).
StieltjesEstimate StieltjesWeight(const Evaluator& w, double lambda0,
                                  std::span<const double> eps_schedule);

/// max over y in {10, ..., 1e6} of y |w(iy)|.
double GrowthBound(const HalfPlaneNevanlinna& w);

}  // namespace fmi

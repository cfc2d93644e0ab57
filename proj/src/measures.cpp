#include "fmi/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fmi {

namespace {

constexpr double kUnitCircleTol = 1e-12;
constexpr double kAtomSeparation = 1e-9;
constexpr double kPoleTol = 1e-12;

void CheckWeights(const std::vector<double>& weights, std::size_t atoms) {
  if (weights.size() != atoms) {
    throw std::invalid_argument("measure: " + std::to_string(atoms) + " atoms but " +
                                std::to_string(weights.size()) + " weights");
  }
  for (double rho : weights) {
    if (!std::isfinite(rho) || rho < 0.0) {
      throw std::invalid_argument("measure: weights must be finite and nonnegative");
    }
  }
}

}  // namespace

CircleMeasure::CircleMeasure(std::vector<Complex> atoms, std::vector<double> weights)
    : atoms_(std::move(atoms)), weights_(std::move(weights)) {
  CheckWeights(weights_, atoms_.size());
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (!std::isfinite(atoms_[i].real()) || !std::isfinite(atoms_[i].imag()) ||
        std::abs(std::abs(atoms_[i]) - 1.0) > kUnitCircleTol) {
      throw std::invalid_argument("CircleMeasure: atom " + std::to_string(i) +
                                  " is not on the unit circle");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(atoms_[i] - atoms_[j]) <= kAtomSeparation) {
        throw std::invalid_argument("CircleMeasure: atoms " + std::to_string(j) + " and " +
                                    std::to_string(i) + " coincide");
      }
    }
  }
}

double CircleMeasure::total_mass() const {
  double mass = 0.0;
  for (double rho : weights_) mass += rho;
  return mass;
}

LineMeasure::LineMeasure(std::vector<double> atoms, std::vector<double> weights)
    : atoms_(std::move(atoms)), weights_(std::move(weights)) {
  CheckWeights(weights_, atoms_.size());
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (!std::isfinite(atoms_[i])) {
      throw std::invalid_argument("LineMeasure: atom " + std::to_string(i) + " is not finite");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(atoms_[i] - atoms_[j]) <= kAtomSeparation) {
        throw std::invalid_argument("LineMeasure: atoms " + std::to_string(j) + " and " +
                                    std::to_string(i) + " coincide");
      }
    }
  }
}

Complex EvalDisk(const DiskHerglotz& w, Complex z) {
  if (std::abs(std::abs(z) - 1.0) <= kUnitCircleTol) {
    throw std::domain_error("EvalDisk: z lies on the unit circle");
  }
  Complex sum = 0.0;
  const auto& t = w.measure.atoms();
  const auto& rho = w.measure.weights();
  for (std::size_t j = 0; j < t.size(); ++j) {
    sum += rho[j] * (t[j] + z) / (t[j] - z);
  }
  return Complex(0.0, w.c) + 0.5 * sum;
}

Complex EvalLine(const HalfPlaneNevanlinna& w, Complex z) {
  return MomentCauchy(w.measure, 0, z);
}

Evaluator MakeEvaluator(const DiskHerglotz& w) {
  return [w](Complex z) { return EvalDisk(w, z); };
}

Evaluator MakeEvaluator(const HalfPlaneNevanlinna& w) {
  return [w](Complex z) { return EvalLine(w, z); };
}

double Moment(const LineMeasure& sigma, int k) {
  if (k < 0) throw std::invalid_argument("Moment: k must be >= 0");
  double sum = 0.0;
  const auto& lambda = sigma.atoms();
  const auto& rho = sigma.weights();
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    sum += rho[j] * std::pow(lambda[j], k);
  }
  return sum;
}

std::vector<double> Moments(const LineMeasure& sigma, int count) {
  std::vector<double> s(static_cast<std::size_t>(std::max(count, 0)));
  for (int k = 0; k < count; ++k) s[k] = Moment(sigma, k);
  return s;
}

Complex BPoly(Complex w_value, Complex z, int k, std::span<const double> s) {
  if (k < 0 || s.size() != static_cast<std::size_t>(k)) {
    throw std::invalid_argument("BPoly: expected " + std::to_string(k) + " moments, got " +
                                std::to_string(s.size()));
  }
  // Horner: ((w z + s_0) z + s_1) z + ... + s_{k-1}.
  Complex acc = w_value;
  for (int j = 0; j < k; ++j) acc = acc * z + s[j];
  return acc;
}

Complex MomentCauchy(const LineMeasure& sigma, int k, Complex z) {
  Complex sum = 0.0;
  const auto& lambda = sigma.atoms();
  const auto& rho = sigma.weights();
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    const Complex d = lambda[j] - z;
    if (std::abs(d) <= kPoleTol) {
      throw std::domain_error("EvalLine: z coincides with an atom");
    }
    sum += rho[j] * std::pow(lambda[j], k) / d;
  }
  return sum;
}

Complex BPolyStable(const LineMeasure& sigma, Complex z, int k, std::span<const double> s) {
  if (k < 0 || s.size() != static_cast<std::size_t>(k)) {
    throw std::invalid_argument("BPolyStable: expected " + std::to_string(k) +
                                " moments, got " + std::to_string(s.size()));
  }
  Complex correction = 0.0;
  for (int j = 0; j < k; ++j) correction = correction * z + (s[j] - Moment(sigma, j));
  return MomentCauchy(sigma, k, z) + correction;
}

double SymmetryResidual(const Evaluator& w, FunctionClass cls, Complex z) {
  if (cls == FunctionClass::kDisk) {
    if (z == Complex(0.0)) throw std::domain_error("SymmetryResidual: z = 0 has no partner");
    return std::abs(w(z) + std::conj(w(1.0 / std::conj(z))));
  }
  return std::abs(w(z) - std::conj(w(std::conj(z))));
}

double SymmetryResidual(const DiskHerglotz& w, Complex z) {
  return SymmetryResidual(MakeEvaluator(w), FunctionClass::kDisk, z);
}

double SymmetryResidual(const HalfPlaneNevanlinna& w, Complex z) {
  return SymmetryResidual(MakeEvaluator(w), FunctionClass::kHalfPlane, z);
}

double PositivityProbe(const Evaluator& w, FunctionClass cls, Complex z) {
  if (cls == FunctionClass::kDisk) {
    const double denom = 1.0 - std::norm(z);
    if (std::abs(std::abs(z) - 1.0) <= kUnitCircleTol) {
      throw std::domain_error("PositivityProbe: z lies on the unit circle");
    }
    return 2.0 * w(z).real() / denom;
  }
  if (z.imag() == 0.0) throw std::domain_error("PositivityProbe: z is real");
  return w(z).imag() / z.imag();
}

double PositivityProbe(const DiskHerglotz& w, Complex z) {
  return PositivityProbe(MakeEvaluator(w), FunctionClass::kDisk, z);
}

double PositivityProbe(const HalfPlaneNevanlinna& w, Complex z) {
  return PositivityProbe(MakeEvaluator(w), FunctionClass::kHalfPlane, z);
}

StieltjesEstimate StieltjesWeight(const Evaluator& w, double lambda0,
                                  std::span<const double> eps_schedule) {
  if (eps_schedule.size() < 3) {
    throw std::invalid_argument("StieltjesWeight: schedule needs at least three entries");
  }
  for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
    if (!(eps_schedule[i] > 0.0) || (i > 0 && !(eps_schedule[i] < eps_schedule[i - 1]))) {
      throw std::invalid_argument("StieltjesWeight: schedule must be positive and strictly decreasing");
    }
  }
  StieltjesEstimate out;
  for (double eps : eps_schedule) {
    out.estimates.push_back(eps * w(Complex(lambda0, eps)).imag());
  }
  out.weight = out.estimates.back();
  const double bound = 1e-6 * std::max(1.0, std::abs(out.weight));
  out.converged = true;
  for (std::size_t i = 1; i < out.estimates.size(); ++i) {
    if (std::abs(out.estimates[i] - out.estimates[i - 1]) > bound) out.converged = false;
  }
  return out;
}

double GrowthBound(const HalfPlaneNevanlinna& w) {
  double best = 0.0;
  for (double y = 10.0; y <= 1e6 * (1 + 1e-12); y *= 10.0) {
    best = std::max(best, y * std::abs(EvalLine(w, Complex(0.0, y))));
  }
  return best;
}

}  // namespace fmi

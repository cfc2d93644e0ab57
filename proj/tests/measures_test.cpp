#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "fmi/measures.hpp"

namespace fmi {
namespace {

const Complex kI(0.0, 1.0);

DiskHerglotz TwoAtOne() { return {CircleMeasure({1.0}, {2.0}), 0.0}; }
HalfPlaneNevanlinna DeltaZero() { return {LineMeasure({0.0}, {1.0})}; }
HalfPlaneNevanlinna SymmetricPair() { return {LineMeasure({-1.0, 1.0}, {0.5, 0.5})}; }

LineMeasure RandomLine(std::mt19937_64& rng, int atoms, double bound) {
  std::uniform_real_distribution<double> at(-bound, bound), wt(0.1, 1.0);
  std::vector<double> a, w;
  while (static_cast<int>(a.size()) < atoms) {
    const double t = at(rng);
    if (std::none_of(a.begin(), a.end(), [&](double x) { return std::abs(x - t) < 1e-2; })) {
      a.push_back(t);
      w.push_back(wt(rng));
    }
  }
  return LineMeasure(a, w);
}

DiskHerglotz RandomDisk(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ang(0.0, 2 * std::numbers::pi), wt(0.1, 2.0), c(-1, 1);
  std::vector<Complex> a;
  std::vector<double> w;
  for (int j = 0; j < 3; ++j) {
    a.push_back(std::polar(1.0, ang(rng)));
    w.push_back(wt(rng));
  }
  return {CircleMeasure(a, w), c(rng)};
}

TEST(CircleMeasure, Validation) {
  EXPECT_THROW(CircleMeasure({Complex(1.1, 0.0)}, {1.0}), std::invalid_argument);
  EXPECT_THROW(CircleMeasure({1.0, 1.0}, {1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(CircleMeasure({1.0}, {-1.0}), std::invalid_argument);
  EXPECT_THROW(CircleMeasure({1.0}, {1.0, 2.0}), std::invalid_argument);
  EXPECT_NO_THROW(CircleMeasure({std::polar(1.0, 0.3)}, {0.0}));
  EXPECT_DOUBLE_EQ(CircleMeasure({1.0, -1.0}, {0.5, 2.0}).total_mass(), 2.5);
}

TEST(LineMeasure, Validation) {
  EXPECT_THROW(LineMeasure({0.0, 1e-12}, {1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(LineMeasure({0.0}, {-0.5}), std::invalid_argument);
  EXPECT_THROW(LineMeasure({0.0, 1.0}, {1.0}), std::invalid_argument);
}

TEST(EvalDisk, Examples) {
  EXPECT_NEAR(std::abs(EvalDisk(TwoAtOne(), 0.0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(EvalDisk(TwoAtOne(), 2.0) - (-3.0)), 0.0, 1e-15);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    const DiskHerglotz w = RandomDisk(rng);
    const Complex expected(0.5 * w.measure.total_mass(), w.c);
    EXPECT_NEAR(std::abs(EvalDisk(w, 0.0) - expected), 0.0, 1e-14);
  }
}

TEST(EvalDisk, BoundaryIsAnError) {
  EXPECT_THROW(EvalDisk(TwoAtOne(), std::polar(1.0, 0.4)), std::domain_error);
}

TEST(EvalLine, Examples) {
  EXPECT_NEAR(std::abs(EvalLine(DeltaZero(), kI) - kI), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(EvalLine(SymmetricPair(), kI) - kI / 2.0), 0.0, 1e-15);
  EXPECT_THROW(EvalLine(DeltaZero(), 0.0), std::domain_error);
  EXPECT_NO_THROW(EvalLine(DeltaZero(), 0.5));
  for (double y : {1e3, 1e6}) {
    const Complex z(0.0, y);
    EXPECT_NEAR(std::abs(z * EvalLine(SymmetricPair(), z) + 1.0), 0.0, 1e-5);
  }
}

TEST(Moment, Examples) {
  EXPECT_DOUBLE_EQ(Moment(DeltaZero().measure, 0), 1.0);
  for (int k = 1; k < 5; ++k) EXPECT_DOUBLE_EQ(Moment(DeltaZero().measure, k), 0.0);
  const std::vector<double> s = Moments(SymmetricPair().measure, 5);
  const std::vector<double> expected{1, 0, 1, 0, 1};
  for (int k = 0; k < 5; ++k) EXPECT_NEAR(s[k], expected[k], 1e-15);
  EXPECT_THROW(Moment(DeltaZero().measure, -1), std::invalid_argument);
}

TEST(Moment, Linearity) {
  std::mt19937_64 rng(5);
  const LineMeasure sigma = RandomLine(rng, 4, 3.0);
  std::vector<double> scaled = sigma.weights();
  for (double& w : scaled) w *= 2.5;
  const LineMeasure sigma2(sigma.atoms(), scaled);
  for (int k = 0; k < 8; ++k) {
    EXPECT_NEAR(Moment(sigma2, k), 2.5 * Moment(sigma, k), 1e-12 * (1 + std::abs(Moment(sigma2, k))));
  }
}

TEST(BPoly, Examples) {
  const Complex z(0.3, 1.7);
  const Complex w = -1.0 / z;
  EXPECT_EQ(BPoly(w, z, 0, {}), w);
  const std::vector<double> s1{1.0}, s2{1.0, 0.0};
  EXPECT_NEAR(std::abs(BPoly(w, z, 1, s1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(BPoly(w, z, 2, s2)), 0.0, 1e-15);
  EXPECT_THROW(BPoly(w, z, 2, s1), std::invalid_argument);
}

TEST(BPoly, MatchesMomentWeightedTransform) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> re(-3, 3), im(0.5, 3);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 5;
    const LineMeasure sigma = RandomLine(rng, n + 2, 3.0);
    const std::vector<double> s = Moments(sigma, 2 * n);
    const Complex z(re(rng), im(rng));
    const Complex wz = EvalLine({sigma}, z);
    for (int k = 0; k <= 2 * n; ++k) {
      Complex direct = 0.0;
      for (std::size_t j = 0; j < sigma.size(); ++j) {
        direct += sigma.weights()[j] * std::pow(sigma.atoms()[j], k) / (sigma.atoms()[j] - z);
      }
      const std::span<const double> head(s.data(), static_cast<std::size_t>(k));
      const double scale = 1.0 + std::pow(std::abs(z), k) * std::abs(wz) + std::abs(direct);
      EXPECT_LT(std::abs(BPoly(wz, z, k, head) - direct), 1e-12 * scale);
      EXPECT_LT(std::abs(BPolyStable(sigma, z, k, head) - direct), 1e-12 * (1 + std::abs(direct)));
    }
  }
}

TEST(BPoly, StableRouteCarriesDataCorrection) {
  const LineMeasure sigma({-1.0, 1.0}, {0.5, 0.5});
  const Complex z(0.2, 0.9);
  const std::vector<double> s{1.0, 0.25, 1.0};
  const Complex plain = BPoly(EvalLine({sigma}, z), z, 3, s);
  EXPECT_NEAR(std::abs(BPolyStable(sigma, z, 3, s) - plain), 0.0, 1e-13);
}

TEST(BPoly, AsymptoticTopMoment) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 6;
    const LineMeasure sigma = RandomLine(rng, n + 1, 10.0);
    const std::vector<double> s = Moments(sigma, 2 * n + 1);
    const Complex iy(0.0, 1e6);
    const Complex est = -iy * BPolyStable(sigma, iy, 2 * n, std::span(s.data(), 2 * n));
    EXPECT_LT(std::abs(est.real() - s[2 * n]) / s[2 * n], 1e-4);
  }
}

TEST(SymmetryResidual, Examples) {
  EXPECT_NEAR(SymmetryResidual(TwoAtOne(), 2.0), 0.0, 1e-14);
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-4, 4);
  for (int i = 0; i < 20; ++i) {
    const Complex z(u(rng), u(rng));
    EXPECT_EQ(SymmetryResidual(SymmetricPair(), z), 0.0);
  }
  const Evaluator base = MakeEvaluator(SymmetricPair());
  const Evaluator corrupted = [&](Complex z) { return base(z) + Complex(0.0, 0.1); };
  EXPECT_NEAR(SymmetryResidual(corrupted, FunctionClass::kHalfPlane, Complex(0.3, 1.0)), 0.2,
              1e-14);
}

TEST(SymmetryResidual, DiskClassOnRandomPoints) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> ang(0, 2 * std::numbers::pi), in(0.05, 0.9),
      out(1.1, 10.0);
  for (int i = 0; i < 40; ++i) {
    const DiskHerglotz w = RandomDisk(rng);
    const Complex z = std::polar(i % 2 ? in(rng) : out(rng), ang(rng));
    EXPECT_LT(SymmetryResidual(w, z), 1e-12 * (1 + std::abs(EvalDisk(w, z))));
  }
}

TEST(PositivityProbe, Examples) {
  EXPECT_NEAR(PositivityProbe(SymmetricPair(), kI), 0.5, 1e-15);
  for (double c : {-3.0, 0.0, 7.0}) {
    EXPECT_NEAR(PositivityProbe(DiskHerglotz{CircleMeasure({1.0}, {2.0}), c}, 0.0), 2.0, 1e-15);
  }
  EXPECT_THROW(PositivityProbe(SymmetricPair(), 0.5), std::domain_error);
}

TEST(PositivityProbe, KernelIdentityAndSign) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int i = 0; i < 50; ++i) {
    const LineMeasure sigma = RandomLine(rng, 3, 4.0);
    Complex z(u(rng), u(rng));
    if (std::abs(z.imag()) < 1e-3) z += Complex(0, 0.5);
    double expected = 0.0;
    for (std::size_t j = 0; j < sigma.size(); ++j) {
      expected += sigma.weights()[j] / std::norm(sigma.atoms()[j] - z);
    }
    const double probe = PositivityProbe(HalfPlaneNevanlinna{sigma}, z);
    EXPECT_NEAR(probe, expected, 1e-12 * (1 + expected));
    EXPECT_GE(EvalLine({sigma}, z).imag() * z.imag(), 0.0);
  }
  for (int i = 0; i < 50; ++i) {
    const DiskHerglotz w = RandomDisk(rng);
    const Complex z = std::polar(0.95 * std::abs(std::sin(u(rng))), u(rng));
    EXPECT_GE(PositivityProbe(w, z), 0.0);
  }
}

TEST(StieltjesWeight, Examples) {
  const std::vector<double> eps{1e-4, 1e-6, 1e-8};
  const auto a = StieltjesWeight(MakeEvaluator(DeltaZero()), 0.0, eps);
  EXPECT_NEAR(a.weight, 1.0, 1e-6);
  EXPECT_TRUE(a.converged);
  const auto b = StieltjesWeight(MakeEvaluator(DeltaZero()), 5.0, eps);
  EXPECT_NEAR(b.weight, 0.0, 1e-6);
  const auto c = StieltjesWeight(MakeEvaluator(SymmetricPair()), 1.0, eps);
  EXPECT_NEAR(c.weight, 0.5, 1e-6);
  EXPECT_EQ(c.estimates.size(), 3u);
}

TEST(StieltjesWeight, FlagsSlowConvergence) {
  const HalfPlaneNevanlinna close{LineMeasure({0.0, 1e-3}, {1.0, 1.0})};
  const std::vector<double> eps{1e-1, 1e-2, 1e-3};
  EXPECT_FALSE(StieltjesWeight(MakeEvaluator(close), 0.0, eps).converged);
}

TEST(StieltjesWeight, ScheduleValidation) {
  const Evaluator w = MakeEvaluator(DeltaZero());
  EXPECT_THROW(StieltjesWeight(w, 0.0, std::vector<double>{1e-4, 1e-6}), std::invalid_argument);
  EXPECT_THROW(StieltjesWeight(w, 0.0, std::vector<double>{1e-4, 1e-4, 1e-6}),
               std::invalid_argument);
  EXPECT_THROW(StieltjesWeight(w, 0.0, std::vector<double>{1e-4, 1e-6, -1.0}),
               std::invalid_argument);
}

TEST(GrowthBound, Examples) {
  EXPECT_NEAR(GrowthBound(DeltaZero()), 1.0, 1e-6);
  EXPECT_NEAR(GrowthBound(SymmetricPair()), 1.0, 1e-4);
  EXPECT_EQ(GrowthBound(HalfPlaneNevanlinna{}), 0.0);
}

}  // namespace
}  // namespace fmi

#include <gtest/gtest.h>

#include <random>

#include "fmi/hermitian.hpp"

namespace fmi {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

CMatrix RandomMatrix(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) m(i, k) = Complex(g(rng), g(rng));
  return m;
}

TEST(HermitianPart, ScalarIsUnchanged) {
  CMatrix m(1, 1);
  m << 2.0;
  EXPECT_EQ(HermitianPart(m)(0, 0), Complex(2.0));
}

TEST(HermitianPart, SplitsNilpotent) {
  CMatrix m(2, 2);
  m << 0.0, Complex(0, 2), 0.0, 0.0;
  CMatrix expected(2, 2);
  expected << 0.0, Complex(0, 1), Complex(0, -1), 0.0;
  EXPECT_LT(ResidualNorm(HermitianPart(m), expected), 1e-15);
}

TEST(HermitianPart, RandomResultIsHermitian) {
  std::mt19937_64 rng(1);
  const CMatrix h = HermitianPart(RandomMatrix(rng, 4));
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) EXPECT_LT(std::abs(h(i, k) - std::conj(h(k, i))), 1e-15);
}

TEST(HermitianPart, RejectsNonSquare) {
  EXPECT_THROW(HermitianPart(CMatrix::Zero(2, 3)), std::invalid_argument);
  EXPECT_THROW(MinEigenvalue(CMatrix::Zero(3, 2)), std::invalid_argument);
  EXPECT_THROW(CheckPsd(CMatrix::Zero(1, 2), 1e-9), std::invalid_argument);
}

TEST(MinEigenvalue, PickMatrixClosedForm) {
  CMatrix m(2, 2);
  m << 2.0, 2.0, 2.0, 8.0 / 3.0;
  // Eigenvalues of [[a,b],[b,d]]: (a+d)/2 -+ sqrt(((a-d)/2)^2 + b^2).
  const double a = 2.0, b = 2.0, d = 8.0 / 3.0;
  const double expected = (a + d) / 2 - std::sqrt((a - d) * (a - d) / 4 + b * b);
  EXPECT_NEAR(MinEigenvalue(m), expected, 1e-14);
  EXPECT_NEAR(MinEigenvalue(m), 7.0 / 3.0 - std::sqrt(49.0 / 9.0 - 4.0 / 3.0), 1e-14);
}

TEST(MinEigenvalue, TrivialCases) {
  EXPECT_DOUBLE_EQ(MinEigenvalue(CMatrix::Identity(3, 3)), 1.0);
  CMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  EXPECT_DOUBLE_EQ(MinEigenvalue(m), -1.0);
}

TEST(CheckPsd, RankDeficient) {
  CMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, 0.0;
  const PsdReport r = CheckPsd(m, 1e-10);
  EXPECT_TRUE(r.verdict);
  EXPECT_NEAR(r.min_eigenvalue, 0.0, 1e-15);
}

TEST(CheckPsd, SmallNegativeFails) {
  CMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1e-3;
  EXPECT_FALSE(CheckPsd(m, 1e-10).verdict);
}

TEST(CheckPsd, SymmetricTwoAtomHankel) {
  CMatrix m(3, 3);
  m << 1, 0, 1, 0, 1, 0, 1, 0, 1;
  const PsdReport r = CheckPsd(m, 1e-10);
  EXPECT_TRUE(r.verdict);
  EXPECT_NEAR(r.min_eigenvalue, 0.0, 1e-14);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  EXPECT_NEAR(es.eigenvalues()(1), 1.0, 1e-14);
  EXPECT_NEAR(es.eigenvalues()(2), 2.0, 1e-14);
}

TEST(CheckPsd, HermitianDefectFailsVerdict) {
  CMatrix m(2, 2);
  m << 1.0, 1e-3, 0.0, 1.0;
  const PsdReport r = CheckPsd(m, 1e-9);
  EXPECT_GT(r.min_eigenvalue, 0.0);
  EXPECT_FALSE(r.verdict);
  EXPECT_NEAR(r.hermitian_defect, 1e-3, 1e-18);
}

TEST(CheckPsd, DefaultToleranceScalesWithRowSum) {
  CMatrix m = CMatrix::Identity(2, 2) * 1e6;
  EXPECT_DOUBLE_EQ(DefaultPsdTolerance(m), 1e-3);
  EXPECT_DOUBLE_EQ(DefaultPsdTolerance(CMatrix::Identity(2, 2) * 1e-3), 1e-9);
}

TEST(ResidualNorm, Basics) {
  CMatrix m(1, 1), n(1, 1);
  m << 1.0;
  n << 1.0 + 1e-9;
  EXPECT_EQ(ResidualNorm(m, m), 0.0);
  EXPECT_NEAR(ResidualNorm(m, n), 1e-9, 1e-15);
  EXPECT_THROW(ResidualNorm(CMatrix::Zero(2, 2), CMatrix::Zero(2, 1)), std::invalid_argument);
}

TEST(ResidualNorm, ScaledDividesByLargestEntry) {
  CMatrix m = CMatrix::Constant(2, 2, 100.0);
  CMatrix n = m;
  n(0, 1) += 1.0;
  EXPECT_NEAR(ScaledResidual(m, n), 1.0 / 101.0, 1e-15);
}

TEST(ValidateMatrix, RejectsEmptyAndNonFinite) {
  EXPECT_THROW(ValidateMatrix(CMatrix(0, 0), "m"), std::invalid_argument);
  CMatrix m = CMatrix::Zero(2, 2);
  m(1, 1) = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
  EXPECT_THROW(ValidateMatrix(m, "m"), std::invalid_argument);
}

TEST(HermitianProperties, SymmetrizedDefectIsRoundoff) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix m = RandomMatrix(rng, 1 + trial % 6);
    const PsdReport r = CheckPsd(HermitianPart(m), 1.0);
    EXPECT_LE(r.hermitian_defect, 2 * kEps * MaxAbs(m));
  }
}

TEST(HermitianProperties, RayleighBound) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 7;
    const CMatrix h = HermitianPart(RandomMatrix(rng, n));
    const double lo = MinEigenvalue(h);
    for (int j = 0; j < 10; ++j) {
      CVector x(n);
      for (int i = 0; i < n; ++i) x(i) = Complex(g(rng), g(rng));
      const double q = (x.adjoint() * h * x)(0, 0).real() / x.squaredNorm();
      EXPECT_LE(lo, q + 1e-12);
    }
  }
}

TEST(HermitianProperties, VerdictMonotoneInTolerance) {
  std::mt19937_64 rng(13);
  const std::vector<double> tols{0.0, 1e-12, 1e-9, 1e-6, 1e-3, 1.0, 10.0};
  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix m = RandomMatrix(rng, 3);
    const CMatrix h = HermitianPart(m) + CMatrix::Identity(3, 3) * (trial % 5);
    bool seen = false;
    for (double t : tols) {
      const bool v = CheckPsd(h, t).verdict;
      if (seen) EXPECT_TRUE(v);
      seen = seen || v;
    }
  }
}

}  // namespace
}  // namespace fmi

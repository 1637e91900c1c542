#include "bjortho/core.hpp"
#include "bjortho/lp_norm.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace bjortho {
namespace {

TEST(PExponent, RejectsBelowOne) {
  EXPECT_THROW(PExponent(0.5), Error);
  EXPECT_THROW(PExponent(std::nan("")), Error);
  try {
    PExponent bad(0.9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidExponent);
  }
}

TEST(PExponent, ConjugatePairs) {
  EXPECT_DOUBLE_EQ(PExponent(3.0).conjugate().value(), 1.5);
  EXPECT_TRUE(PExponent(1.0).conjugate().is_infinite());
  EXPECT_TRUE(PExponent::infinity().conjugate().is_one());
  EXPECT_TRUE(PExponent(1.5).smooth());
  EXPECT_FALSE(PExponent(1.0).smooth());
  EXPECT_FALSE(PExponent::infinity().smooth());
  EXPECT_THROW(PExponent(1.0).require_smooth("test"), Error);
}

TEST(Direction, GridAndRange) {
  const Direction d = Direction::grid(16, 64);
  EXPECT_NEAR(d.theta(), kPi / 4.0, 1e-15);
  EXPECT_NEAR(std::abs(d.as_complex()), 1.0, 1e-15);
  EXPECT_THROW(Direction{kPi}, Error);
  EXPECT_THROW(Direction{-0.1}, Error);
}

TEST(NumericConfig, Validation) {
  NumericConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.orth_tol = 0.0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = NumericConfig{};
  cfg.n_alpha = 1;
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(Rng, DeterministicAndSplittable) {
  Rng a(42), b(42);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
  Rng c(42);
  const std::uint64_t s1 = c.split(1).next_u64();
  const std::uint64_t s2 = c.split(2).next_u64();
  EXPECT_NE(s1, s2);
  // Splitting does not depend on how far the parent advanced.
  Rng d(42);
  d.next_u64();
  EXPECT_EQ(d.split(1).next_u64(), s1);
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(SampleUnitVector, Examples) {
  Rng rng(7);
  for (int i = 0; i < 20; ++i) {
    const CVector x = sample_unit_vector(1, FieldTag::kReal, PExponent(2.0), rng);
    EXPECT_NEAR(std::abs(x(0).real()), 1.0, 1e-15);
    EXPECT_EQ(x(0).imag(), 0.0);
  }
  Rng r1(9), r2(9);
  const CVector u = sample_unit_vector(2, FieldTag::kComplex, PExponent(2.0), r1);
  const CVector v = sample_unit_vector(2, FieldTag::kComplex, PExponent(2.0), r2);
  EXPECT_EQ(u, v);
  EXPECT_NEAR(std::norm(u(0)) + std::norm(u(1)), 1.0, 1e-14);
  // Independent recomputation of sum |x_i|^1.5.
  const CVector w = sample_unit_vector(3, FieldTag::kComplex, PExponent(1.5), r1);
  double s = 0.0;
  for (int i = 0; i < 3; ++i) s += std::pow(std::abs(w(i)), 1.5);
  EXPECT_NEAR(s, 1.0, 1e-12);
}

TEST(CanonicalPhase, Examples) {
  CVector a(2);
  a << Complex(0, 1), 0.0;
  const CVector ca = canonical_phase(a);
  EXPECT_NEAR(std::abs(ca(0) - Complex(1, 0)), 0.0, 1e-15);
  EXPECT_EQ(ca(1), Complex(0.0));

  CVector b(2);
  b << 0.0, -1.0;
  const CVector cb = canonical_phase(b);
  EXPECT_NEAR(std::abs(cb(1) - Complex(1, 0)), 0.0, 1e-15);

  CVector c(2);
  c << Complex(1, 1), Complex(1, -1);
  const PExponent p(3.0);
  c /= vector_pnorm(c, p);
  const CVector cc = canonical_phase(c);
  EXPECT_GT(cc(0).real(), 0.0);
  EXPECT_NEAR(cc(0).imag(), 0.0, 1e-15);
  EXPECT_NEAR(vector_pnorm(cc, p), 1.0, 1e-14);
  // Same phase circle: the ratio of coordinates is preserved.
  EXPECT_NEAR(std::abs(cc(1) / cc(0) - c(1) / c(0)), 0.0, 1e-14);
}

TEST(CanonicalPhase, ZeroVectorThrows) {
  try {
    canonical_phase(CVector::Zero(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroVector);
  }
}

TEST(LpNorm, AgainstLoops) {
  CVector x(3);
  x << Complex(1, 2), -3.0, Complex(0, 0.5);
  double s = 0.0, m = 0.0, one = 0.0;
  for (int i = 0; i < 3; ++i) {
    s += std::pow(std::abs(x(i)), 2.5);
    m = std::max(m, std::abs(x(i)));
    one += std::abs(x(i));
  }
  EXPECT_NEAR(vector_pnorm(x, PExponent(2.5)), std::pow(s, 1.0 / 2.5), 1e-13);
  EXPECT_NEAR(vector_pnorm(x, PExponent::infinity()), m, 1e-15);
  EXPECT_NEAR(vector_pnorm(x, PExponent(1.0)), one, 1e-14);
}

}  // namespace
}  // namespace bjortho

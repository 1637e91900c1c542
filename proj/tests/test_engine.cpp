#include "bjortho/lp_norm.hpp"
#include "bjortho/operator_engine.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace bjortho {
namespace {

COperator m2(Complex a, Complex b, Complex c, Complex d) {
  COperator t(2, 2);
  t << a, b, c, d;
  return t;
}

// The proof's A: columns (0, 1) and (1, 1).
COperator proof_a() { return m2(0, 1, 1, 1); }

COperator random_op(int rows, int cols, Rng& rng) {
  COperator t(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t(i, j) = rng.complex_gaussian();
  return t;
}

TEST(OperatorNorm, IdentityAnyP) {
  const NumericConfig cfg;
  for (double pv : {1.0, 1.5, 2.0, 3.0}) {
    EXPECT_NEAR(operator_norm(COperator::Identity(3, 3), PExponent(pv), cfg).value, 1.0, 1e-9) << pv;
  }
  EXPECT_NEAR(operator_norm(COperator::Identity(3, 3), PExponent::infinity(), cfg).value, 1.0, 1e-15);
}

TEST(OperatorNorm, ProofOperatorP2) {
  // A^H A = [[1, 1], [1, 2]] has characteristic polynomial l^2 - 3 l + 1.
  const double top = (3.0 + std::sqrt(5.0)) / 2.0;
  const NormResult r = operator_norm(proof_a(), PExponent(2.0), NumericConfig{});
  EXPECT_EQ(r.method, NormMethod::kSvdExact);
  EXPECT_NEAR(r.value, std::sqrt(top), 1e-12);
  EXPECT_NEAR(r.value, 1.6180339887498949, 1e-12);
}

TEST(OperatorNorm, DiagonalMaximizers) {
  const NormResult r = operator_norm(m2(1, 0, 0, 0), PExponent(2.0), NumericConfig{});
  EXPECT_NEAR(r.value, 1.0, 1e-15);
  ASSERT_FALSE(r.maximizers.empty());
  for (const auto& x : r.maximizers) {
    EXPECT_NEAR(std::abs(x(0)), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(x(1)), 0.0, 1e-12);
  }
}

TEST(OperatorNorm, ExactFormulasForOneAndInf) {
  Rng rng(5);
  const NumericConfig cfg;
  for (int i = 0; i < 10; ++i) {
    const COperator t = random_op(3, 2, rng);
    double col = 0.0, row = 0.0;
    for (int j = 0; j < 2; ++j) col = std::max(col, std::abs(t(0, j)) + std::abs(t(1, j)) + std::abs(t(2, j)));
    for (int k = 0; k < 3; ++k) row = std::max(row, std::abs(t(k, 0)) + std::abs(t(k, 1)));
    const NormResult r1 = operator_norm(t, PExponent(1.0), cfg);
    const NormResult ri = operator_norm(t, PExponent::infinity(), cfg);
    EXPECT_NEAR(r1.value, col, 1e-12 * col);
    EXPECT_NEAR(ri.value, row, 1e-12 * row);
    EXPECT_NEAR(colsum_norm(t), col, 1e-12 * col);
    EXPECT_NEAR(rowsum_norm(t), row, 1e-12 * row);
    for (const auto& x : r1.maximizers) {
      EXPECT_NEAR(vector_pnorm(x, PExponent(1.0)), 1.0, 1e-12);
      EXPECT_NEAR(vector_pnorm(CVector(t * x), PExponent(1.0)), col, 1e-9 * col);
    }
    for (const auto& x : ri.maximizers) {
      EXPECT_NEAR(vector_pnorm(x, PExponent::infinity()), 1.0, 1e-12);
      EXPECT_NEAR(vector_pnorm(CVector(t * x), PExponent::infinity()), row, 1e-9 * row);
    }
  }
}

TEST(OperatorNorm, PowerIterationCertifiedByMaximizer) {
  Rng rng(6);
  const NumericConfig cfg;
  for (double pv : {1.5, 3.0}) {
    const PExponent p(pv);
    const COperator t = random_op(2, 2, rng);
    const NormResult r = operator_norm(t, p, cfg);
    ASSERT_FALSE(r.maximizers.empty());
    for (const auto& x : r.maximizers) {
      EXPECT_NEAR(vector_pnorm(x, p), 1.0, 1e-12);
      EXPECT_NEAR(vector_pnorm(CVector(t * x), p), r.value, cfg.attain_tol * r.value);
    }
    // Independent lower bound from a dense sphere grid.
    const NormResult g = sphere_grid_norm(t, p, 400);
    EXPECT_LE(g.value, r.value * (1.0 + 1e-12));
    EXPECT_NEAR(g.value, r.value, 1e-3 * r.value);
  }
}

TEST(OperatorNorm, EmptyShapeThrows) {
  try {
    operator_norm(COperator(0, 0), PExponent(2.0), NumericConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(AttainmentSet, Examples) {
  const NumericConfig cfg;
  AttainmentSet s = attainment_set(m2(2, 0, 0, 1), PExponent(2.0), cfg);
  ASSERT_EQ(s.reps.size(), 1u);
  EXPECT_NEAR(std::abs(s.reps[0](0) - Complex(1.0)), 0.0, 1e-12);
  EXPECT_FALSE(s.saturated);

  s = attainment_set(COperator::Identity(2, 2), PExponent(2.0), cfg);
  EXPECT_TRUE(s.saturated);
  EXPECT_EQ(s.subspace_dim, 2);

  // Top eigenvector of A^H A: (1, l - 1) with l = (3 + sqrt 5) / 2.
  s = attainment_set(proof_a(), PExponent(2.0), cfg);
  ASSERT_EQ(s.reps.size(), 1u);
  const double l = (3.0 + std::sqrt(5.0)) / 2.0;
  CVector v(2);
  v << 1.0, l - 1.0;
  v.normalize();
  EXPECT_LT(phase_distance(s.reps[0], v), 1e-10);
  EXPECT_GT(s.reps[0](1).real(), 0.0);
  EXPECT_NEAR(s.reps[0](1).imag(), 0.0, 1e-12);

  EXPECT_THROW(attainment_set(COperator::Zero(2, 2), PExponent(2.0), cfg), Error);
}

TEST(AttainmentSet, HadamardAtP4HasTwoCircles) {
  // ||H (1, e^{i phi})||_4^4 = 4 + 4 cos^2 phi, maximal at phi in {0, pi}.
  const AttainmentSet s = attainment_set(m2(1, 1, 1, -1), PExponent(4.0), NumericConfig{});
  EXPECT_NEAR(s.norm, std::pow(2.0, 0.75), 1e-9);
  ASSERT_EQ(s.reps.size(), 2u);
  const double h = std::pow(2.0, -0.25);
  CVector a(2), b(2);
  a << h, h;
  b << h, -h;
  const double da = std::min(phase_distance(s.reps[0], a), phase_distance(s.reps[1], a));
  const double db = std::min(phase_distance(s.reps[0], b), phase_distance(s.reps[1], b));
  EXPECT_LT(da, 1e-5);
  EXPECT_LT(db, 1e-5);
}

TEST(PhaseDistance, InvariantUnderPhase) {
  CVector u(2);
  u << Complex(0.6, 0.1), Complex(-0.2, 0.7);
  EXPECT_NEAR(phase_distance(u, CVector(std::polar(1.0, 1.234) * u)), 0.0, 1e-12);
  CVector e1(2), e2(2);
  e1 << 1, 0;
  e2 << 0, 1;
  EXPECT_NEAR(phase_distance(e1, e2), std::sqrt(2.0), 1e-12);
}

TEST(KernelBasis, RankDeficient) {
  Rng rng(8);
  const COperator b = random_op(3, 2, rng);
  const COperator c = random_op(2, 3, rng);
  const COperator t = b * c;  // rank 2
  const COperator k = kernel_basis(t);
  ASSERT_EQ(k.cols(), 1);
  EXPECT_LT((t * k).norm(), 1e-10 * t.norm());
  EXPECT_NEAR(k.col(0).norm(), 1.0, 1e-12);
  const COperator r1 = b.col(0) * c.row(0);  // rank 1
  EXPECT_EQ(kernel_basis(r1).cols(), 2);
  EXPECT_EQ(kernel_basis(COperator::Identity(3, 3)).cols(), 0);
}

TEST(NormEstimator, MatchesOperatorNorm) {
  Rng rng(12);
  const NumericConfig cfg;
  const PExponent p(3.0);
  NormEstimator est(2, p, cfg, 4);
  for (int i = 0; i < 5; ++i) {
    const COperator t = random_op(2, 2, rng);
    const double v = est(t);
    const double ref = operator_norm(t, p, cfg).value;
    EXPECT_LE(v, ref * (1.0 + 1e-9));
    EXPECT_NEAR(v, ref, 1e-6 * ref);
  }
}

}  // namespace
}  // namespace bjortho

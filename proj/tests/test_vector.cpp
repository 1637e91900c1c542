#include "bjortho/lp_norm.hpp"
#include "bjortho/vector_orthogonality.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace bjortho {
namespace {

CVector v2(Complex a, Complex b) {
  CVector x(2);
  x << a, b;
  return x;
}

// Central difference of t -> ||x + t y||_p at 0, an independent estimate of
// Re s(x, y) / ||x||^{p-1}.
double norm_derivative(const CVector& x, const CVector& y, const PExponent& p) {
  const double h = 1e-6;
  return (vector_pnorm(CVector(x + h * y), p) - vector_pnorm(CVector(x - h * y), p)) / (2.0 * h);
}

TEST(SemiInnerProduct, DisjointSupports) {
  for (double pv : {1.5, 2.0, 3.0}) {
    EXPECT_EQ(semi_inner_product(v2(1, 0), v2(0, 1), PExponent(pv)), Complex(0.0));
  }
}

TEST(SemiInnerProduct, HilbertFormula) {
  const Complex z1(0.3, -0.7), z2(1.1, 0.4);
  const CVector y = v2(1.0, -std::conj(z1) / std::conj(z2));
  EXPECT_NEAR(std::abs(semi_inner_product(v2(z1, z2), y, PExponent(2.0))), 0.0, 1e-15);
}

TEST(SemiInnerProduct, P3ByHandAndFiniteDifference) {
  const PExponent p(3.0);
  const CVector x = v2(1, 1);
  const Complex s = semi_inner_product(x, x, p);
  EXPECT_NEAR(s.real(), 2.0, 1e-15);
  EXPECT_NEAR(s.imag(), 0.0, 1e-15);
  // d/dt ||x + t x|| = ||x|| = 2^{1/3}; s = ||x||^{p-1} * derivative = 2.
  const double nx = vector_pnorm(x, p);
  EXPECT_NEAR(std::pow(nx, 2.0) * norm_derivative(x, x, p), 2.0, 1e-8);
}

TEST(SemiInnerProduct, MatchesFiniteDifferenceRandom) {
  Rng rng(3);
  for (double pv : {1.5, 2.5, 4.0}) {
    const PExponent p(pv);
    for (int i = 0; i < 20; ++i) {
      const CVector x = sample_unit_vector(3, FieldTag::kComplex, p, rng);
      const CVector y = sample_unit_vector(3, FieldTag::kComplex, p, rng);
      EXPECT_NEAR(semi_inner_product(x, y, p).real(), norm_derivative(x, y, p), 1e-6);
    }
  }
}

TEST(SemiInnerProduct, Errors) {
  try {
    semi_inner_product(v2(1, 0), v2(0, 1), PExponent(1.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonSmoothExponent);
  }
  EXPECT_THROW(semi_inner_product(v2(1, 0), v2(0, 1), PExponent::infinity()), Error);
  try {
    semi_inner_product(v2(0, 0), v2(0, 1), PExponent(2.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroVector);
  }
}

TEST(MinNormOnRay, Examples) {
  const PExponent p(2.0);
  const Direction one(0.0);
  RayMin r = min_norm_on_ray(v2(1, 0), v2(0, 1), one, RaySide::kNonNeg, p);
  EXPECT_NEAR(r.t_star, 0.0, 1e-7);
  EXPECT_NEAR(r.value, 1.0, 1e-12);

  r = min_norm_on_ray(v2(1, 1), v2(0, 1), one, RaySide::kNonNeg, p);
  EXPECT_NEAR(r.t_star, 0.0, 1e-7);
  EXPECT_NEAR(r.value, std::sqrt(2.0), 1e-12);
  r = min_norm_on_ray(v2(1, 1), v2(0, 1), one, RaySide::kNonPos, p);
  EXPECT_NEAR(r.t_star, -1.0, 1e-7);
  EXPECT_NEAR(r.value, 1.0, 1e-12);

  r = min_norm_on_ray(v2(1, 0), v2(1, 0), Direction(kPi / 2.0), RaySide::kNonNeg, p);
  EXPECT_NEAR(r.t_star, 0.0, 1e-7);
  EXPECT_NEAR(r.value, 1.0, 1e-12);
}

TEST(MinNormOnRay, TruncationRadius) {
  // Unconstrained minimum at t = -1; capped at |t| <= 0.5 it is at t = -0.5.
  const RayMin r =
      min_norm_on_ray(v2(1, 1), v2(0, 1), Direction(0.0), RaySide::kNonPos, PExponent(2.0), 0.5);
  EXPECT_NEAR(r.t_star, -0.5, 1e-7);
  EXPECT_NEAR(r.value, std::sqrt(1.25), 1e-12);
}

TEST(MemberAlpha, Examples) {
  const NumericConfig cfg;
  const PExponent p(2.0);
  for (int k : {0, 5, 31}) {
    const MembershipVerdict m = member_alpha(v2(1, 0), v2(0, 1), Direction::grid(k, 64), 0.0, p, cfg);
    EXPECT_TRUE(m.in_plus && m.in_minus);
    EXPECT_TRUE(m.orthogonal_along());
  }
  const double h = 1.0 / std::sqrt(2.0);
  MembershipVerdict m = member_alpha(v2(h, h), v2(h, h), Direction(0.0), 0.0, p, cfg);
  EXPECT_TRUE(m.in_plus);
  EXPECT_FALSE(m.in_minus);

  m = member_alpha(v2(1, 0), v2(1, 0), Direction(0.0), 0.6, p, cfg);
  EXPECT_TRUE(m.in_plus);
  EXPECT_FALSE(m.in_minus);
  EXPECT_NEAR(m.margin_minus, -0.8, 1e-9);
}

TEST(MemberAlpha, Errors) {
  const NumericConfig cfg;
  try {
    member_alpha(v2(0, 0), v2(0, 1), Direction(0.0), 0.0, PExponent(2.0), cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroVector);
  }
  EXPECT_THROW(member_alpha(v2(1, 0), v2(0, 1), Direction(0.0), 1.0, PExponent(2.0), cfg), Error);
}

TEST(MemberAlpha, MarginsArePhaseInvariant) {
  // Rotating both x and y by one unit scalar leaves every norm unchanged.
  const NumericConfig cfg;
  Rng rng(11);
  for (double pv : {1.0, 1.5, 3.0}) {
    const PExponent p(pv);
    for (int i = 0; i < 10; ++i) {
      const CVector x = sample_unit_vector(2, FieldTag::kComplex, p, rng);
      const CVector y = sample_unit_vector(2, FieldTag::kComplex, p, rng);
      const Complex u = std::polar(1.0, rng.uniform(0.0, 2.0 * kPi));
      const Direction a = Direction::grid(i * 5, 64);
      const MembershipVerdict m1 = member_alpha(x, y, a, 0.0, p, cfg);
      const MembershipVerdict m2 = member_alpha(CVector(u * x), CVector(u * y), a, 0.0, p, cfg);
      EXPECT_NEAR(m1.margin_plus, m2.margin_plus, 1e-9);
      EXPECT_NEAR(m1.margin_minus, m2.margin_minus, 1e-9);
    }
  }
}

TEST(BjOrthogonalVectors, Examples) {
  const NumericConfig cfg;
  VectorOrthVerdict v = bj_orthogonal_vectors(v2(1, 0), v2(0, 1), PExponent(1.5), cfg);
  EXPECT_TRUE(v.orthogonal);
  EXPECT_TRUE(v.routes_agree());

  const PExponent p3(3.0);
  CVector x = v2(Complex(0.4, 0.2), Complex(-0.5, 0.9));
  x /= vector_pnorm(x, p3);
  const Complex z1 = x(0), z2 = x(1);
  const Complex w = -std::abs(z1) * std::conj(z1) / (std::abs(z2) * std::conj(z2));
  v = bj_orthogonal_vectors(x, v2(1.0, w), p3, cfg);
  EXPECT_TRUE(v.orthogonal);
  EXPECT_TRUE(v.analytic_orthogonal);
  EXPECT_TRUE(v.optimization_orthogonal);

  v = bj_orthogonal_vectors(v2(1, 1), v2(1, 0), PExponent(2.0), cfg);
  EXPECT_FALSE(v.orthogonal);
  EXPECT_NEAR(v.min_value, 1.0, 1e-9);
  EXPECT_NEAR(v.argmin_lambda.real(), -1.0, 1e-4);
  EXPECT_NEAR(v.argmin_lambda.imag(), 0.0, 1e-4);
  EXPECT_NEAR(v.norm_x, std::sqrt(2.0), 1e-15);
}

TEST(BjOrthogonalVectors, NonSmoothUsesOptimizationOnly) {
  const NumericConfig cfg;
  // In l_1, (1, 0) is orthogonal to (1, 1): |1 + l| + |l| >= 1.
  const VectorOrthVerdict v = bj_orthogonal_vectors(v2(1, 0), v2(1, 1), PExponent(1.0), cfg);
  EXPECT_FALSE(v.has_analytic);
  EXPECT_TRUE(v.orthogonal);
  // In l_inf, (1, 0) is orthogonal to (0, 1).
  EXPECT_TRUE(bj_orthogonal_vectors(v2(1, 0), v2(0, 1), PExponent::infinity(), cfg).orthogonal);
  // In l_inf, (1, 1) is orthogonal to (1, -1): max(|1 + l|, |1 - l|) >= 1.
  EXPECT_TRUE(bj_orthogonal_vectors(v2(1, 1), v2(1, -1), PExponent::infinity(), cfg).orthogonal);
}

TEST(GlobalConeMembership, Examples) {
  const NumericConfig cfg;
  const PExponent p(2.0);
  ConeMembership c = global_cone_membership(v2(1, 2), v2(1, 2), p, cfg);
  EXPECT_FALSE(c.in_x_plus && c.in_x_minus);
  c = global_cone_membership(v2(1, 1), v2(1, -1), p, cfg);
  EXPECT_TRUE(c.in_x_plus);
  EXPECT_TRUE(c.in_x_minus);
  c = global_cone_membership(v2(1, 0), v2(1, 1), p, cfg);
  EXPECT_FALSE(c.in_x_plus);
  EXPECT_FALSE(c.in_x_minus);
  EXPECT_EQ(c.grid_size, cfg.n_alpha);
}

TEST(CirclePlusMargins, NegationConvention) {
  // Entry k + n (angle pi + theta_k) is the minus margin at theta_k.
  const NumericConfig cfg;
  const PExponent p(1.5);
  const CVector x = v2(Complex(0.3, 0.1), 0.8);
  const CVector y = v2(0.2, Complex(-0.4, 0.6));
  const int n = 8;
  const std::vector<double> m = circle_plus_margins(x, y, n, p);
  ASSERT_EQ(m.size(), 16u);
  for (int k = 0; k < n; ++k) {
    const MembershipVerdict mv = member_alpha(x, y, Direction::grid(k, n), 0.0, p, cfg);
    EXPECT_NEAR(m[k], mv.margin_plus, 1e-12);
    EXPECT_NEAR(m[k + n], mv.margin_minus, 1e-12);
  }
}

}  // namespace
}  // namespace bjortho

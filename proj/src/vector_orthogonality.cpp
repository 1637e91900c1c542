#include "bjortho/vector_orthogonality.hpp"

#include "bjortho/lp_norm.hpp"
#include "bjortho/minimize.hpp"

#include <algorithm>
#include <cmath>

namespace bjortho {

namespace {

constexpr double kRayTol = 1e-10;
constexpr double kPlaneTol = 1e-10;

void require_nonzero(const CVector& x, const char* what) {
  if (vector_pnorm(x, PExponent(1.0)) == 0.0) {
    throw Error(ErrorCode::kZeroVector, std::string(what) + ": x must be nonzero");
  }
}

void require_same_dim(const CVector& x, const CVector& y) {
  if (x.size() != y.size()) throw Error(ErrorCode::kDimensionMismatch, "x and y differ in dimension");
}

// min over theta in [0, pi] of Re(e^{i theta} s).
double min_real_part_on_half_circle(Complex s) {
  const double r = std::abs(s);
  if (r == 0.0) return 0.0;
  // Re(e^{i theta} s) = r cos(theta + psi) bottoms out where theta + psi = pi.
  double theta_star = std::remainder(kPi - std::arg(s), 2.0 * kPi);
  if (theta_star < 0) theta_star += 2.0 * kPi;
  if (theta_star <= kPi) return -r;
  return std::min(s.real(), -s.real());
}

}  // namespace

Complex semi_inner_product(const CVector& x, const CVector& y, const PExponent& p) {
  p.require_smooth("semi_inner_product");
  require_same_dim(x, y);
  require_nonzero(x, "semi_inner_product");
  return semi_inner_product_raw(x, y, p.value());
}

RayMin min_norm_on_ray(const CVector& x, const CVector& y, const Direction& alpha, RaySide side,
                       const PExponent& p, double max_t) {
  require_same_dim(x, y);
  const double nx = vector_pnorm(x, p);
  const double ny = vector_pnorm(y, p);
  if (ny == 0.0) return {0.0, nx};
  const Complex a = alpha.as_complex();
  CVector work(x.size());
  auto f = [&](double t) {
    work = x + (t * a) * y;
    return vector_pnorm(work, p);
  };
  // Beyond this radius f(t) >= |t| ||y|| - ||x|| > ||x|| = f(0).
  const double bound = std::min(2.0 * nx / ny + 1.0, max_t);
  const ScalarMin<double> m = side == RaySide::kNonNeg ? golden_section<double>(f, 0.0, bound, kRayTol)
                                                       : golden_section<double>(f, -bound, 0.0, kRayTol);
  return {m.arg, m.value};
}

MembershipVerdict member_alpha(const CVector& x, const CVector& y, const Direction& alpha, double epsilon,
                               const PExponent& p, const NumericConfig& cfg) {
  require_nonzero(x, "member_alpha");
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "epsilon must lie in [0, 1)");
  }
  const double nx = vector_pnorm(x, p);
  const double level = std::sqrt(1.0 - epsilon * epsilon) * nx;
  const RayMin plus = min_norm_on_ray(x, y, alpha, RaySide::kNonNeg, p);
  const RayMin minus = min_norm_on_ray(x, y, alpha, RaySide::kNonPos, p);

  MembershipVerdict v;
  v.direction = alpha;
  v.epsilon = epsilon;
  v.margin_plus = plus.value - level;
  v.margin_minus = minus.value - level;
  v.t_plus = plus.t_star;
  v.t_minus = minus.t_star;
  v.in_plus = v.margin_plus >= -cfg.orth_tol * nx;
  v.in_minus = v.margin_minus >= -cfg.orth_tol * nx;
  return v;
}

VectorOrthVerdict bj_orthogonal_vectors(const CVector& x, const CVector& y, const PExponent& p,
                                        const NumericConfig& cfg) {
  require_same_dim(x, y);
  require_nonzero(x, "bj_orthogonal_vectors");
  VectorOrthVerdict v;
  v.tolerance_used = cfg.orth_tol;
  const double nx = vector_pnorm(x, p);
  const double ny = vector_pnorm(y, p);
  v.norm_x = nx;

  if (p.smooth()) {
    v.has_analytic = true;
    v.semi_inner = semi_inner_product_raw(x, y, p.value());
    const double scale = std::pow(nx, p.value() - 1.0) * ny;
    v.analytic_residual = scale > 0.0 ? std::abs(v.semi_inner) / scale : 0.0;
    v.analytic_orthogonal = v.analytic_residual <= cfg.orth_tol;
  }

  if (ny == 0.0) {
    v.min_value = nx;
    v.optimization_orthogonal = true;
  } else {
    CVector work(x.size());
    auto f = [&](Complex lambda) {
      work = x + lambda * y;
      return vector_pnorm(work, p);
    };
    const ComplexMin<double> m = nested_golden_2d<double>(f, 2.0 * nx / ny, kPlaneTol);
    v.min_value = m.value;
    v.argmin_lambda = m.arg;
    v.optimization_orthogonal = m.value >= nx * (1.0 - cfg.orth_tol);
  }
  v.orthogonal = v.optimization_orthogonal;
  return v;
}

ConeMembership global_cone_membership(const CVector& x, const CVector& y, const PExponent& p,
                                      const NumericConfig& cfg) {
  require_same_dim(x, y);
  require_nonzero(x, "global_cone_membership");
  ConeMembership c;
  c.grid_size = cfg.n_alpha;
  c.in_x_plus = true;
  c.in_x_minus = true;
  c.worst_margin_plus = std::numeric_limits<double>::infinity();
  c.worst_margin_minus = std::numeric_limits<double>::infinity();
  for (int k = 0; k < cfg.n_alpha; ++k) {
    const MembershipVerdict m = member_alpha(x, y, Direction::grid(k, cfg.n_alpha), 0.0, p, cfg);
    c.in_x_plus = c.in_x_plus && m.in_plus;
    c.in_x_minus = c.in_x_minus && m.in_minus;
    c.worst_margin_plus = std::min(c.worst_margin_plus, m.margin_plus);
    c.worst_margin_minus = std::min(c.worst_margin_minus, m.margin_minus);
  }
  if (p.smooth()) {
    // y in x_alpha^+ iff Re(alpha s) >= 0; intersect over the closed half circle.
    c.has_analytic = true;
    const Complex s = semi_inner_product_raw(x, y, p.value());
    const double scale = std::pow(vector_pnorm(x, p), p.value() - 1.0) * vector_pnorm(y, p);
    const double slack = cfg.orth_tol * scale;
    c.analytic_in_plus = min_real_part_on_half_circle(s) >= -slack;
    c.analytic_in_minus = min_real_part_on_half_circle(-s) >= -slack;
  }
  return c;
}

std::vector<double> circle_plus_margins(const CVector& x, const CVector& y, int n, const PExponent& p,
                                        double max_t) {
  const double nx = vector_pnorm(x, p);
  std::vector<double> out(2 * static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const Direction a = Direction::grid(k, n);
    out[k] = min_norm_on_ray(x, y, a, RaySide::kNonNeg, p, max_t).value - nx;
    out[k + n] = min_norm_on_ray(x, y, a, RaySide::kNonPos, p, max_t).value - nx;
  }
  return out;
}

}  // namespace bjortho

#ifndef BJORTHO_VECTOR_ORTHOGONALITY_HPP_
#define BJORTHO_VECTOR_ORTHOGONALITY_HPP_

#include "bjortho/core.hpp"

#include <limits>
#include <vector>

namespace bjortho {

enum class RaySide { kNonNeg, kNonPos };

struct RayMin {
  double t_star;
  double value;
};

// Membership of y in the cones x_alpha^{+(eps)} and x_alpha^{-(eps)}.
struct MembershipVerdict {
  bool in_plus = false;
  bool in_minus = false;
  // min_{t >= 0} ||x + t alpha y|| - sqrt(1 - eps^2) ||x||; minus analogous over t <= 0.
  double margin_plus = 0.0;
  double margin_minus = 0.0;
  double t_plus = 0.0;
  double t_minus = 0.0;
  double epsilon = 0.0;
  Direction direction{0.0};

  bool orthogonal_along() const { return in_plus && in_minus; }
};

struct VectorOrthVerdict {
  bool orthogonal = false;
  // Route A: |s(x, y)| / (||x||^{p-1} ||y||); absent for p in {1, inf}.
  bool has_analytic = false;
  bool analytic_orthogonal = false;
  double analytic_residual = 0.0;
  Complex semi_inner = 0.0;
  // Route B: min over lambda of ||x + lambda y||.
  bool optimization_orthogonal = false;
  double min_value = 0.0;
  Complex argmin_lambda = 0.0;
  double norm_x = 0.0;
  double tolerance_used = 0.0;

  bool routes_agree() const { return !has_analytic || analytic_orthogonal == optimization_orthogonal; }
};

struct ConeMembership {
  // Intersection over the alpha grid.
  bool in_x_plus = false;
  bool in_x_minus = false;
  int grid_size = 0;
  double worst_margin_plus = 0.0;
  double worst_margin_minus = 0.0;
  // Exact answer for smooth p: y in x^+ iff y in x^- iff s(x, y) = 0.
  bool has_analytic = false;
  bool analytic_in_plus = false;
  bool analytic_in_minus = false;
};

Complex semi_inner_product(const CVector& x, const CVector& y, const PExponent& p);

// Minimizes the convex map t -> ||x + t alpha y||_p over one closed half-line,
// optionally truncated to |t| <= max_t.
RayMin min_norm_on_ray(const CVector& x, const CVector& y, const Direction& alpha, RaySide side,
                       const PExponent& p, double max_t = std::numeric_limits<double>::infinity());

MembershipVerdict member_alpha(const CVector& x, const CVector& y, const Direction& alpha, double epsilon,
                               const PExponent& p, const NumericConfig& cfg);

VectorOrthVerdict bj_orthogonal_vectors(const CVector& x, const CVector& y, const PExponent& p,
                                        const NumericConfig& cfg);

ConeMembership global_cone_membership(const CVector& x, const CVector& y, const PExponent& p,
                                      const NumericConfig& cfg);

// Plus-margins of (x, y) sampled on the full circle, 2n points at k pi / n.
// Entries k >= n use x_{-alpha}^+ = x_alpha^-.
std::vector<double> circle_plus_margins(const CVector& x, const CVector& y, int n, const PExponent& p,
                                        double max_t = std::numeric_limits<double>::infinity());

}  // namespace bjortho

#endif  // BJORTHO_VECTOR_ORTHOGONALITY_HPP_

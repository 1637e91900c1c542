#include "bjortho/lp2_exact.hpp"

#include "bjortho/lp_norm.hpp"
#include "bjortho/vector_orthogonality.hpp"

#include <cmath>

namespace bjortho {

namespace {

void require_dim2(const CVector& x) {
  if (x.size() != 2) throw Error(ErrorCode::kDimensionMismatch, "l_p^2 results need dimension 2");
}

// |z|^{p-2} conj(z), zero at z = 0.
Complex dual_coord(Complex z, double p) {
  const double m = std::abs(z);
  return m == 0.0 ? Complex(0.0) : std::pow(m, p - 2.0) * std::conj(z);
}

double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * kPi);
  return a < 0.0 ? a + 2.0 * kPi : a;
}

double half_weight(const PExponent& p) { return std::pow(2.0, -1.0 / p.value()); }

// True when the relative phase arg(x2 / x1) lies in (-pi/2, pi/2].
bool same_sign_branch(Complex x1, Complex x2) {
  const double rel = std::arg(x2 * std::conj(x1));
  return rel > -kPi / 2 && rel <= kPi / 2;
}

// Distance from (x, y) to the nearest pair (u, e^{i psi} v).
double pair_residual(const CVector& x, const CVector& y, const CVector& u, const CVector& v) {
  return std::max((x - u).cwiseAbs().maxCoeff(), phase_distance(y, v));
}

}  // namespace

CVector orth_direction_right(Complex z1, Complex z2, const PExponent& p) {
  p.require_smooth("orth_direction_right");
  if (z2 == Complex(0.0)) throw Error(ErrorCode::kZeroDenominator, "z2 must be nonzero");
  CVector v(2);
  v << 1.0, -dual_coord(z1, p.value()) / dual_coord(z2, p.value());
  return v;
}

CVector orth_direction_left(Complex z1, Complex z2, const PExponent& p) {
  p.require_smooth("orth_direction_left");
  if (z1 == Complex(0.0)) throw Error(ErrorCode::kZeroDenominator, "z1 must be nonzero");
  CVector v(2);
  v << -dual_coord(z2, p.value()) / dual_coord(z1, p.value()), 1.0;
  return v;
}

const char* mutual_family_name(MutualFamily f) {
  switch (f) {
    case MutualFamily::kI: return "i";
    case MutualFamily::kII: return "ii";
    case MutualFamily::kIII: return "iii";
    case MutualFamily::kIV: return "iv";
    case MutualFamily::kNone: return "none";
  }
  return "none";
}

const char* left_sym_family_name(LeftSymFamily f) {
  switch (f) {
    case LeftSymFamily::kE1: return "E1";
    case LeftSymFamily::kE2: return "E2";
    case LeftSymFamily::kHalfSum: return "HALF_SUM";
    case LeftSymFamily::kHalfDiff: return "HALF_DIFF";
    case LeftSymFamily::kNone: return "NONE";
  }
  return "NONE";
}

MutualFamily classify_mutual_pair(const CVector& x, const CVector& y, const PExponent& p, double tol) {
  require_dim2(x);
  require_dim2(y);
  if (std::abs(vector_pnorm(x, p) - 1.0) > tol || std::abs(vector_pnorm(y, p) - 1.0) > tol) {
    return MutualFamily::kNone;
  }
  const double ax1 = std::abs(x(0)), ax2 = std::abs(x(1));
  const double ay1 = std::abs(y(0)), ay2 = std::abs(y(1));
  if (std::max({std::abs(ax1 - 1.0), ax2, ay1, std::abs(ay2 - 1.0)}) <= tol) return MutualFamily::kI;
  if (std::max({ax1, std::abs(ax2 - 1.0), std::abs(ay1 - 1.0), ay2}) <= tol) return MutualFamily::kII;

  const double h = half_weight(p);
  if (std::max({std::abs(ax1 - h), std::abs(ax2 - h), std::abs(ay1 - h), std::abs(ay2 - h)}) > tol) {
    return MutualFamily::kNone;
  }
  CVector flipped(2);
  flipped << x(0), -x(1);
  if (pair_residual(x, y, x, flipped) > tol) return MutualFamily::kNone;
  return same_sign_branch(x(0), x(1)) ? MutualFamily::kIII : MutualFamily::kIV;
}

CVector sample_orthogonal_partner(const CVector& x, const PExponent& p, Rng& rng) {
  p.require_smooth("sample_orthogonal_partner");
  const CVector w = duality_map(x, p.value()).conjugate();
  if (w.squaredNorm() == 0.0) throw Error(ErrorCode::kZeroVector, "x must be nonzero");
  CVector y;
  double scale = 0.0;
  do {
    const double modulus = rng.uniform(0.5, 2.0);
    CVector y0(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) y0(i) = modulus * rng.complex_gaussian();
    // s(x, y) = w^T y; remove the component that violates it.
    const Complex wy = (w.transpose() * y0)(0);
    y = y0 - (wy / w.squaredNorm()) * w.conjugate();
    scale = y0.cwiseAbs().maxCoeff();
  } while (vector_pnorm(y, p) < 1e-8);
  // Snap cancellation residue to zero: for p < 2 the duality map amplifies
  // a 1e-17 leftover to ~1e-9 in s(y, x).
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (std::abs(y(i)) <= 1e-12 * scale) y(i) = 0.0;
  }
  normalize_pnorm(y, p);
  return y * std::polar(1.0, rng.uniform(0.0, 2.0 * kPi));
}

LeftSymClass classify_left_symmetric_point(const CVector& x, const PExponent& p, double tol,
                                           const NumericConfig& cfg, int functional_samples) {
  require_dim2(x);
  p.require_smooth("classify_left_symmetric_point");
  LeftSymClass out;
  const double a1 = std::abs(x(0)), a2 = std::abs(x(1));
  const double h = half_weight(p);
  const double r_e1 = std::max(std::abs(a1 - 1.0), a2);
  const double r_e2 = std::max(a1, std::abs(a2 - 1.0));
  const double r_half = std::max(std::abs(a1 - h), std::abs(a2 - h));
  out.residual = std::min({r_e1, r_e2, r_half});
  if (r_e1 <= tol) {
    out.family = LeftSymFamily::kE1;
    out.phases = {wrap_angle(std::arg(x(0)))};
  } else if (r_e2 <= tol) {
    out.family = LeftSymFamily::kE2;
    out.phases = {wrap_angle(std::arg(x(1)))};
  } else if (r_half <= tol) {
    if (same_sign_branch(x(0), x(1))) {
      out.family = LeftSymFamily::kHalfSum;
      out.phases = {wrap_angle(std::arg(x(0))), wrap_angle(std::arg(x(1)))};
    } else {
      out.family = LeftSymFamily::kHalfDiff;
      out.phases = {wrap_angle(std::arg(x(0))), wrap_angle(std::arg(-x(1)))};
    }
  }

  // Functional check: every y with x perp_B y must satisfy y perp_B x.
  Rng rng = Rng(cfg.seed).split(0x1e5u);
  for (int s = 0; s < functional_samples; ++s) {
    const CVector y = sample_orthogonal_partner(x, p, rng);
    const Complex back = semi_inner_product_raw(y, x, p.value());
    const double residual = std::abs(back) / (std::pow(vector_pnorm(y, p), p.value() - 1.0) * vector_pnorm(x, p));
    ++out.checks_run;
    if (residual <= cfg.orth_tol) {
      ++out.checks_passed;
    } else if (!out.refuting_y || residual > out.refuting_residual) {
      out.refuting_y = y;
      out.refuting_residual = residual;
    }
  }
  return out;
}

OperatorPair counterexample_pair() {
  OperatorPair pr{COperator::Zero(2, 2), COperator::Zero(2, 2)};
  pr.t(0, 0) = 1.0;
  pr.a(1, 0) = 1.0;
  pr.a(0, 1) = 1.0;
  pr.a(1, 1) = 1.0;
  return pr;
}

NotLeftSymCertificate certify_not_left_symmetric(const COperator& t, const COperator& a, const PExponent& p,
                                                 const NumericConfig& cfg) {
  if (t.rows() != 2 || t.cols() != 2 || a.rows() != 2 || a.cols() != 2) {
    throw Error(ErrorCode::kDimensionMismatch, "certificate needs operators on l_p^2");
  }
  NotLeftSymCertificate c;
  c.t_orth_a = op_orth_direct(t, a, p, cfg);
  if (!c.t_orth_a.orthogonal) throw Error(ErrorCode::kDirectOrthFailed, "T is not B-J orthogonal to A");

  const OrthVerdict back = op_orth_direct(a, t, p, cfg);
  c.a_orth_t = back.orthogonal;
  c.norm_a = back.norm_t;
  c.lambda_star = back.argmin_lambda;
  c.min_a_plus_lambda_t = back.min_value;
  c.delta = back.norm_t - back.min_value;

  const AttainmentSet ma = attainment_set(a, p, cfg);
  c.reps_a = ma.reps;
  const MarginTable table = build_margin_table(a, t, ma, p, cfg.n_alpha);
  const double strict = -cfg.orth_tol * ma.norm;
  for (int k = 0; k < cfg.n_alpha; ++k) {
    DirectionEvidence e;
    e.alpha = Direction::grid(k, cfg.n_alpha);
    e.worst_minus = -std::numeric_limits<double>::infinity();
    e.worst_plus = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < table.reps.size(); ++r) {
      e.worst_minus = std::max(e.worst_minus, table.minus(r, k));
      e.worst_plus = std::max(e.worst_plus, table.plus(r, k));
    }
    if (e.worst_minus < strict) ++c.directions_without_minus;
    if (e.worst_plus < strict) ++c.directions_without_plus;
    c.evidence.push_back(e);
  }
  const bool refuted = !c.a_orth_t && c.delta > cfg.orth_tol * c.norm_a &&
                       (c.directions_without_minus + c.directions_without_plus) > 0;
  if (!refuted) throw Error(ErrorCode::kCertificateNotFound, "no strict descent of ||A + lambda T|| found");
  return c;
}

CounterexampleAttempt generate_counterexample(MutualFamily pair_family, LeftSymFamily image_family,
                                              const PExponent& p, const NumericConfig& cfg, int theta_steps) {
  p.require_smooth("generate_counterexample");
  CounterexampleAttempt out;
  out.pair_family = pair_family;
  out.image_family = image_family;
  const double h = half_weight(p);
  CVector x(2), y(2), tx(2);
  switch (pair_family) {
    case MutualFamily::kI: x << 1.0, 0.0; y << 0.0, 1.0; break;
    case MutualFamily::kII: x << 0.0, 1.0; y << 1.0, 0.0; break;
    case MutualFamily::kIII: x << h, h; y << h, -h; break;
    case MutualFamily::kIV: x << h, -h; y << h, h; break;
    case MutualFamily::kNone: out.failure = "pair family NONE"; return out;
  }
  switch (image_family) {
    case LeftSymFamily::kE1: tx << 1.0, 0.0; break;
    case LeftSymFamily::kE2: tx << 0.0, 1.0; break;
    case LeftSymFamily::kHalfSum: tx << h, h; break;
    case LeftSymFamily::kHalfDiff: tx << h, -h; break;
    case LeftSymFamily::kNone: out.failure = "image family NONE"; return out;
  }
  COperator basis(2, 2);
  basis << x, y;
  const COperator inv = basis.inverse();
  COperator timg(2, 2);
  timg << tx, CVector::Zero(2);
  const COperator t = timg * inv;

  std::string last;
  for (int shape = 0; shape < 2; ++shape) {
    for (int k = 0; k < theta_steps; ++k) {
      const double theta = 2.0 * kPi * k / theta_steps;
      const Complex e = std::polar(1.0, theta);
      CVector ay(2);
      if (shape == 0) {
        ay << e, 0.0;
      } else {
        ay << e, e;
      }
      COperator aimg(2, 2);
      aimg << y, ay;
      const COperator a = aimg * inv;
      try {
        NotLeftSymCertificate cert = certify_not_left_symmetric(t, a, p, cfg);
        out.certified = true;
        out.theta = theta;
        out.ay_shape = shape;
        out.pair = OperatorPair{t, a};
        out.certificate = std::move(cert);
        return out;
      } catch (const Error& err) {
        last = err.what();
      }
    }
  }
  out.failure = last;
  return out;
}

}  // namespace bjortho

#include "bjortho/operator_orthogonality.hpp"

#include "bjortho/lp_norm.hpp"
#include "bjortho/minimize.hpp"
#include "bjortho/vector_orthogonality.hpp"

#include <cmath>
#include <limits>

namespace bjortho {

namespace {

constexpr double kLambdaTol = 1e-8;

bool is_zero(const COperator& t) { return t.size() == 0 || t.cwiseAbs().maxCoeff() == 0.0; }

void require_pair(const COperator& t, const COperator& a) {
  if (t.rows() < 1 || t.cols() < 1) throw Error(ErrorCode::kDimensionMismatch, "T has an empty shape");
  if (t.rows() != a.rows() || t.cols() != a.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "T and A differ in shape");
  }
  if (is_zero(t)) throw Error(ErrorCode::kZeroOperator, "T must be nonzero");
}

AttainmentSet nonempty_attainment(const COperator& t, const PExponent& p, const NumericConfig& cfg) {
  AttainmentSet mt = attainment_set(t, p, cfg);
  if (mt.reps.empty()) throw Error(ErrorCode::kEmptyAttainment, "no norm-attaining vector found");
  return mt;
}

double slack(const MarginTable& table, const NumericConfig& cfg) { return -cfg.orth_tol * table.norm_t; }

}  // namespace

const char* orth_route_name(OrthRoute r) {
  switch (r) {
    case OrthRoute::kDirect: return "direct";
    case OrthRoute::kWitness: return "witness";
    case OrthRoute::kPhiSplit: return "phi_split";
    case OrthRoute::kConnected: return "connected";
  }
  return "unknown";
}

bool WitnessTable::complete() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const WitnessEntry& e) { return e.x_index >= 0 && e.y_index >= 0; });
}

MarginTable build_margin_table(const COperator& t, const COperator& a, const AttainmentSet& mt,
                               const PExponent& p, int n_alpha) {
  MarginTable table;
  table.reps = mt.reps;
  table.norm_t = mt.norm;
  table.n = n_alpha;
  table.margins.reserve(mt.reps.size());
  // For |lambda| > 2||T|| / ||A|| the triangle inequality already gives
  // ||T + lambda A|| > ||T||, so rays beyond that radius never decide.
  // Truncating keeps roundoff-sized A x from producing spurious margins.
  // max_j ||A e_j|| <= ||A|| keeps the radius on the safe side.
  double a_lower = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) a_lower = std::max(a_lower, vector_pnorm(a.col(j), p));
  table.radius = a_lower > 0.0 ? 2.0 * mt.norm / a_lower : std::numeric_limits<double>::infinity();
  for (const auto& x : mt.reps) {
    table.margins.push_back(circle_plus_margins(t * x, a * x, n_alpha, p, table.radius));
  }
  return table;
}

OrthVerdict op_orth_direct(const COperator& t, const COperator& a, const PExponent& p, const NumericConfig& cfg) {
  require_pair(t, a);
  OrthVerdict v;
  v.route = OrthRoute::kDirect;
  v.tolerance_used = cfg.orth_tol;
  const NormResult nt = operator_norm(t, p, cfg);
  v.norm_t = nt.value;
  v.min_value = nt.value;
  if (is_zero(a)) {
    v.orthogonal = true;
    return v;
  }
  const double norm_a = operator_norm(a, p, cfg).value;

  // For |lambda| > 2 ||T|| / ||A||, ||T + lambda A|| >= |lambda| ||A|| - ||T|| > ||T||.
  const double radius = 2.0 * nt.value / norm_a;
  const double level = nt.value * (1.0 - cfg.orth_tol);
  COperator work(t.rows(), t.cols());
  // The cheap estimator can stall on a local maximum and fake a dip, so every
  // dip is confirmed with the full multi-start norm; unconfirmed dips rerun
  // the search with more fresh starts.
  for (const int starts : {1, 8, cfg.n_starts}) {
    NormEstimator est(static_cast<int>(t.cols()), p, cfg, starts);
    if (!nt.maximizers.empty()) est.seed(nt.maximizers.front());
    auto f = [&](Complex lambda) {
      if (lambda == Complex(0.0)) return nt.value;
      work = t + lambda * a;
      return est(work);
    };
    const ComplexMin<double> m = nested_golden_2d<double>(f, radius, kLambdaTol);
    if (m.value >= level) {
      v.min_value = std::min(m.value, nt.value);
      v.argmin_lambda = m.value < nt.value ? m.arg : Complex(0.0);
      break;
    }
    const double confirmed = operator_norm(t + m.arg * a, p, cfg).value;
    if (confirmed < level) {
      v.min_value = confirmed;
      v.argmin_lambda = m.arg;
      break;
    }
  }
  v.orthogonal = v.min_value >= level;
  return v;
}

WitnessResult op_orth_witness(const MarginTable& table, const NumericConfig& cfg) {
  WitnessResult out;
  out.table.grid_size = table.n;
  out.table.reps = table.reps;
  const double floor = slack(table, cfg);
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 0; k < table.n; ++k) {
    WitnessEntry e;
    e.alpha = Direction::grid(k, table.n);
    e.plus_margin = -std::numeric_limits<double>::infinity();
    e.minus_margin = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < table.reps.size(); ++r) {
      if (e.x_index < 0) {
        const double m = table.plus(r, k);
        if (m >= floor) {
          e.x_index = static_cast<int>(r);
          e.plus_margin = m;
        } else {
          e.plus_margin = std::max(e.plus_margin, m);
        }
      }
      if (e.y_index < 0) {
        const double m = table.minus(r, k);
        if (m >= floor) {
          e.y_index = static_cast<int>(r);
          e.minus_margin = m;
        } else {
          e.minus_margin = std::max(e.minus_margin, m);
        }
      }
    }
    worst = std::min({worst, e.plus_margin, e.minus_margin});
    out.table.entries.push_back(e);
  }
  out.verdict.route = OrthRoute::kWitness;
  out.verdict.norm_t = table.norm_t;
  out.verdict.min_value = table.norm_t;
  out.verdict.tolerance_used = cfg.orth_tol;
  out.verdict.grid_size = table.n;
  out.verdict.worst_margin = worst;
  out.verdict.orthogonal = out.table.complete();
  return out;
}

WitnessResult op_orth_witness(const COperator& t, const COperator& a, const PExponent& p, const NumericConfig& cfg) {
  require_pair(t, a);
  const AttainmentSet mt = nonempty_attainment(t, p, cfg);
  return op_orth_witness(build_margin_table(t, a, mt, p, cfg.n_alpha), cfg);
}

PhiSplitResult op_orth_phi_split(const MarginTable& table, const NumericConfig& cfg) {
  PhiSplitResult out;
  out.reps = table.reps;
  const double floor = slack(table, cfg);
  const int n = table.n;
  const auto reps = table.reps.size();

  // Rep whose cone condition holds on every grid index in [lo, hi] of [0, pi];
  // index n stands for the angle pi.
  auto first_rep = [&](int lo, int hi, bool plus_side, double* margin) {
    for (std::size_t r = 0; r < reps; ++r) {
      double worst = std::numeric_limits<double>::infinity();
      for (int k = lo; k <= hi; ++k) {
        worst = std::min(worst, plus_side ? table.circle(r, k) : table.circle(r, k + n));
      }
      if (worst >= floor) {
        *margin = worst;
        return static_cast<int>(r);
      }
    }
    return -1;
  };

  double worst = std::numeric_limits<double>::infinity();
  double m1 = 0, m2 = 0, m3 = 0, m4 = 0;
  bool have_phi1 = false, have_phi2 = false;
  for (int j = 0; j <= n && !have_phi1; ++j) {
    const int x = first_rep(0, j, true, &m1);
    const int y = x < 0 ? -1 : first_rep(j, n, true, &m2);
    if (x >= 0 && y >= 0) {
      have_phi1 = true;
      out.phi1 = kPi * j / n;
      out.x = x;
      out.y = y;
      worst = std::min({worst, m1, m2});
    }
  }
  for (int j = 0; j <= n && !have_phi2; ++j) {
    const int z = first_rep(0, j, false, &m3);
    const int w = z < 0 ? -1 : first_rep(j, n, false, &m4);
    if (z >= 0 && w >= 0) {
      have_phi2 = true;
      out.phi2 = kPi * j / n;
      out.z = z;
      out.w = w;
      worst = std::min({worst, m3, m4});
    }
  }
  out.found = have_phi1 && have_phi2;
  out.verdict.route = OrthRoute::kPhiSplit;
  out.verdict.orthogonal = out.found;
  out.verdict.norm_t = table.norm_t;
  out.verdict.min_value = table.norm_t;
  out.verdict.tolerance_used = cfg.orth_tol;
  out.verdict.grid_size = n;
  out.verdict.worst_margin = out.found ? worst : -std::numeric_limits<double>::infinity();
  return out;
}

PhiSplitResult op_orth_phi_split(const COperator& t, const COperator& a, const PExponent& p,
                                 const NumericConfig& cfg) {
  require_pair(t, a);
  const AttainmentSet mt = nonempty_attainment(t, p, cfg);
  return op_orth_phi_split(build_margin_table(t, a, mt, p, cfg.n_alpha), cfg);
}

ConnectedResult op_orth_connected(const MarginTable& table, const NumericConfig& cfg, bool assume_connected) {
  ConnectedResult out;
  out.assume_connected = assume_connected;
  out.reps = table.reps;
  const double floor = slack(table, cfg);
  const int n = table.n;
  const auto reps = table.reps.size();
  double worst = std::numeric_limits<double>::infinity();

  // (a) T x perp_alpha A x for a single rep x per grid direction.
  out.per_alpha.assign(static_cast<std::size_t>(n), -1);
  for (int k = 0; k < n; ++k) {
    for (std::size_t r = 0; r < reps; ++r) {
      const double m = std::min(table.plus(r, k), table.minus(r, k));
      if (m >= floor) {
        out.per_alpha[static_cast<std::size_t>(k)] = static_cast<int>(r);
        worst = std::min(worst, m);
        break;
      }
    }
  }
  out.per_alpha_complete =
      std::all_of(out.per_alpha.begin(), out.per_alpha.end(), [](int r) { return r >= 0; });

  // (b) x with A x in (T x)_beta^+ for arg beta in [theta - pi, theta], and y
  // on [theta, theta + pi]; circle indices are taken mod 2n.
  auto first_rep = [&](int lo, int hi, double* margin) {
    for (std::size_t r = 0; r < reps; ++r) {
      double m = std::numeric_limits<double>::infinity();
      for (int k = lo; k <= hi; ++k) m = std::min(m, table.circle(r, k));
      if (m >= floor) {
        *margin = m;
        return static_cast<int>(r);
      }
    }
    return -1;
  };
  for (int j = 0; j <= n && !out.found; ++j) {
    double mx = 0, my = 0;
    const int x = first_rep(j - n, j, &mx);
    const int y = x < 0 ? -1 : first_rep(j, j + n, &my);
    if (x >= 0 && y >= 0) {
      out.found = true;
      out.theta = kPi * j / n;
      out.x = x;
      out.y = y;
      worst = std::min({worst, mx, my});
    }
  }

  const bool witness_ok = op_orth_witness(table, cfg).verdict.orthogonal;
  out.connectivity_sensitive = !out.per_alpha_complete && witness_ok;

  out.verdict.route = OrthRoute::kConnected;
  out.verdict.orthogonal = out.per_alpha_complete || out.found;
  out.verdict.norm_t = table.norm_t;
  out.verdict.min_value = table.norm_t;
  out.verdict.tolerance_used = cfg.orth_tol;
  out.verdict.grid_size = n;
  out.verdict.worst_margin = out.verdict.orthogonal ? worst : -std::numeric_limits<double>::infinity();
  return out;
}

ConnectedResult op_orth_connected(const COperator& t, const COperator& a, const PExponent& p,
                                  const NumericConfig& cfg, bool assume_connected) {
  require_pair(t, a);
  const AttainmentSet mt = nonempty_attainment(t, p, cfg);
  return op_orth_connected(build_margin_table(t, a, mt, p, cfg.n_alpha), cfg, assume_connected);
}

MtStructureReport mt_structure_checks(const COperator& t, const PExponent& p, const NumericConfig& cfg, int samples) {
  if (is_zero(t)) throw Error(ErrorCode::kZeroOperator, "T must be nonzero");
  MtStructureReport rep;
  const AttainmentSet mt = attainment_set(t, p, cfg);
  // A saturated set is a sample of a continuum; a handful of reps covers the checks.
  const std::size_t use = std::min<std::size_t>(mt.reps.size(), mt.saturated ? 4 : mt.reps.size());
  rep.reps = static_cast<int>(use);
  const int dim = static_cast<int>(t.cols());
  Rng rng = Rng(cfg.seed).split(0x57u);
  const COperator ker = kernel_basis(t);
  rep.kernel_dim = static_cast<int>(ker.cols());

  for (std::size_t r = 0; r < use; ++r) {
    const CVector& x = mt.reps[r];
    const CVector tx = t * x;
    const double nx = vector_pnorm(x, p);

    // (i) T x perp_B T y  =>  x perp_B y.
    if (p.smooth()) {
      // s(Tx, Ty) = c^T y with c = T^T conj(Psi_p(Tx)); project a random y onto c^T y = 0.
      const CVector c = t.transpose() * duality_map(tx, p.value()).conjugate();
      for (int s = 0; s < samples; ++s) {
        CVector y = sample_unit_vector(dim, FieldTag::kComplex, p, rng);
        const Complex cy = (c.transpose() * y)(0);
        y -= (cy / c.squaredNorm()) * c.conjugate();
        if (vector_pnorm(y, p) == 0.0) continue;
        const VectorOrthVerdict ov = bj_orthogonal_vectors(x, y, p, cfg);
        rep.preimage_orth.record(ov.optimization_orthogonal, (ov.min_value - nx) / nx);
      }
    }

    // (ii)/(iii) strict cone membership is carried to the image.
    for (int s = 0; s < samples; ++s) {
      const CVector y = sample_unit_vector(dim, FieldTag::kComplex, p, rng);
      const int k = static_cast<int>(rng.uniform() * cfg.n_alpha) % cfg.n_alpha;
      const Direction alpha = Direction::grid(k, cfg.n_alpha);
      const MembershipVerdict mv = member_alpha(x, y, alpha, 0.0, p, cfg);
      const double strict = -10.0 * cfg.orth_tol * nx;
      if (mv.in_plus && mv.margin_minus < strict) {
        const MembershipVerdict im = member_alpha(tx, t * y, alpha, 0.0, p, cfg);
        rep.plus_image.record(im.in_plus && !im.in_minus, im.margin_plus);
      } else if (mv.in_minus && mv.margin_plus < strict) {
        const MembershipVerdict im = member_alpha(tx, t * y, alpha, 0.0, p, cfg);
        rep.minus_image.record(im.in_minus && !im.in_plus, im.margin_minus);
      }
    }

    // (iv) ker T inside x^perp.
    for (Eigen::Index j = 0; j < ker.cols(); ++j) {
      const CVector y = ker.col(j);
      const VectorOrthVerdict ov = bj_orthogonal_vectors(x, y, p, cfg);
      rep.kernel_inclusion.record(ov.optimization_orthogonal, (ov.min_value - nx) / nx);
    }
  }
  return rep;
}

}  // namespace bjortho

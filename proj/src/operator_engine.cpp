#include "bjortho/operator_engine.hpp"

#include "bjortho/lp_norm.hpp"

#include <algorithm>
#include <cmath>

namespace bjortho {

namespace {

constexpr double kValueTol = 1e-12;
constexpr double kIterateTol = 1e-10;

void require_shape(const COperator& t) {
  if (t.rows() < 1 || t.cols() < 1) throw Error(ErrorCode::kDimensionMismatch, "operator has an empty shape");
}

bool lex_less(const CVector& a, const CVector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i).real() != b(i).real()) return a(i).real() < b(i).real();
    if (a(i).imag() != b(i).imag()) return a(i).imag() < b(i).imag();
  }
  return false;
}

struct Candidate {
  CVector x;
  double value;
};

// Canonicalizes, sorts and greedily clusters candidates whose value is within
// attain_tol of `norm`. Sorting first makes the result independent of the
// order in which starts finished.
std::vector<CVector> cluster_maximizers(std::vector<Candidate> cands, double norm, double attain_tol,
                                        bool* saturated) {
  std::vector<CVector> pool;
  for (auto& c : cands) {
    if (c.value >= norm * (1.0 - attain_tol) && c.x.size() > 0) pool.push_back(canonical_phase(c.x));
  }
  std::sort(pool.begin(), pool.end(), lex_less);
  std::vector<CVector> reps;
  bool capped = false;
  for (const auto& v : pool) {
    const bool fresh =
        std::all_of(reps.begin(), reps.end(), [&](const CVector& r) { return phase_distance(r, v) >= kClusterRadius; });
    if (!fresh) continue;
    if (static_cast<int>(reps.size()) == kMaxReps) {
      capped = true;
      break;
    }
    reps.push_back(v);
  }
  if (saturated) *saturated = capped || static_cast<int>(reps.size()) == kMaxReps;
  return reps;
}

double min_pairwise(const std::vector<CVector>& reps) {
  double d = reps.size() < 2 ? 0.0 : std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = i + 1; j < reps.size(); ++j) d = std::min(d, phase_distance(reps[i], reps[j]));
  }
  return d;
}

// Unit vector of l_p^2 at grid cell (i, j): modulus split s = i / res, relative phase 2 pi j / res.
CVector sphere_point(int i, int j, int res, const PExponent& p) {
  const double s = static_cast<double>(i) / res;
  const Complex ph = std::polar(1.0, 2.0 * kPi * j / res);
  CVector x(2);
  if (p.is_infinite()) {
    if (s <= 0.5) {
      x << 1.0, 2.0 * s * ph;
    } else {
      x << 2.0 * (1.0 - s), ph;
    }
  } else {
    x << std::pow(s, 1.0 / p.value()), std::pow(1.0 - s, 1.0 / p.value()) * ph;
  }
  return x;
}

NormResult svd_norm(const COperator& t, double attain_tol) {
  Eigen::JacobiSVD<COperator> svd(t, Eigen::ComputeFullV);
  NormResult r;
  r.method = NormMethod::kSvdExact;
  r.value = svd.singularValues()(0);
  r.converged_starts = 1;
  const Eigen::Index k = svd.singularValues().size();
  for (Eigen::Index j = 0; j < t.cols(); ++j) {
    const double sigma = j < k ? svd.singularValues()(j) : 0.0;
    if (r.value > 0.0 && sigma >= r.value * (1.0 - attain_tol)) {
      r.maximizers.push_back(canonical_phase(svd.matrixV().col(j)));
    }
  }
  if (r.value == 0.0) r.maximizers.push_back(canonical_phase(svd.matrixV().col(0)));
  return r;
}

// out = Psi_e(in); returns sum |in_i|^e.
double dual_power(const CVector& in, double e, CVector& out) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < in.size(); ++i) {
    const double m2 = std::norm(in(i));
    if (m2 == 0.0) {
      out(i) = 0.0;
      continue;
    }
    double f;
    if (e == 3.0) {
      f = std::sqrt(m2);
    } else if (e == 1.5) {
      f = 1.0 / std::sqrt(std::sqrt(m2));
    } else {
      f = std::pow(m2, 0.5 * (e - 2.0));
    }
    out(i) = f * in(i);
    sum += f * m2;
  }
  return sum;
}

}  // namespace

const char* norm_method_name(NormMethod m) {
  switch (m) {
    case NormMethod::kPowerIteration: return "power_iteration";
    case NormMethod::kSvdExact: return "svd_exact";
    case NormMethod::kColsumExact: return "colsum_exact";
    case NormMethod::kRowsumExact: return "rowsum_exact";
    case NormMethod::kGridBruteforce: return "grid_bruteforce";
  }
  return "unknown";
}

double phase_distance(const CVector& u, const CVector& v) {
  // The optimal phase aligns v with u; evaluating the difference directly
  // avoids the cancellation of the expanded square.
  const Complex c = v.dot(u);
  const double m = std::abs(c);
  return m == 0.0 ? std::sqrt(u.squaredNorm() + v.squaredNorm()) : (u - (c / m) * v).norm();
}

double colsum_norm(const COperator& t) { return t.cwiseAbs().colwise().sum().maxCoeff(); }
double rowsum_norm(const COperator& t) { return t.cwiseAbs().rowwise().sum().maxCoeff(); }

PowerIterate power_iterate(const COperator& t, CVector x, const PExponent& p, int max_iter) {
  const double pv = p.value();
  const double qv = p.conjugate().value();
  const double inv_p = 1.0 / pv;
  PowerIterate out;
  normalize_pnorm(x, p);
  CVector z(t.rows()), w(t.rows()), u(t.cols()), next(t.cols());
  z.noalias() = t * x;
  double value = std::pow(dual_power(z, pv, w), inv_p);
  for (int it = 1; it <= max_iter; ++it) {
    out.iterations = it;
    if (value == 0.0) break;
    u.noalias() = t.adjoint() * w;
    // ||Psi_q(u)||_p^p = sum |u_i|^q.
    const double sq = dual_power(u, qv, next);
    if (sq == 0.0) break;
    next *= 1.0 / std::pow(sq, inv_p);
    z.noalias() = t * next;
    const double vnext = std::pow(dual_power(z, pv, w), inv_p);
    const double dv = std::abs(vnext - value);
    const double dx = (next - x).norm();
    x.swap(next);
    value = std::max(value, vnext);
    if (dv <= kValueTol * value && dx <= kIterateTol) {
      out.converged = true;
      break;
    }
  }
  out.value = vector_pnorm(t * x, p);
  out.x = std::move(x);
  return out;
}

NormResult operator_norm(const COperator& t, const PExponent& p, const NumericConfig& cfg) {
  require_shape(t);
  if (p.is_two()) return svd_norm(t, cfg.attain_tol);

  NormResult r;
  const Eigen::Index n = t.cols();
  if (p.is_one()) {
    r.method = NormMethod::kColsumExact;
    const Eigen::RowVectorXd sums = t.cwiseAbs().colwise().sum();
    r.value = sums.maxCoeff();
    for (Eigen::Index j = 0; j < n; ++j) {
      if (sums(j) >= r.value * (1.0 - cfg.attain_tol)) r.maximizers.push_back(CVector::Unit(n, j));
    }
    r.converged_starts = 1;
    return r;
  }
  if (p.is_infinite()) {
    r.method = NormMethod::kRowsumExact;
    const Eigen::VectorXd sums = t.cwiseAbs().rowwise().sum();
    r.value = sums.maxCoeff();
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      if (sums(i) < r.value * (1.0 - cfg.attain_tol)) continue;
      CVector x(n);
      for (Eigen::Index j = 0; j < n; ++j) {
        const double m = std::abs(t(i, j));
        x(j) = m == 0.0 ? Complex(1.0) : std::conj(t(i, j)) / m;
      }
      r.maximizers.push_back(canonical_phase(x));
    }
    r.converged_starts = 1;
    return r;
  }

  r.method = NormMethod::kPowerIteration;
  const Rng base(cfg.seed);
  std::vector<Candidate> cands;
  auto run = [&](CVector start) {
    PowerIterate it = power_iterate(t, std::move(start), p, cfg.max_iter);
    if (it.converged) ++r.converged_starts;
    cands.push_back({std::move(it.x), it.value});
  };
  for (int k = 0; k < cfg.n_starts; ++k) {
    Rng stream = base.split(static_cast<std::uint64_t>(k));
    run(sample_unit_vector(static_cast<int>(n), FieldTag::kComplex, p, stream));
  }
  // Top right singular vector: the p = 2 maximizer is a good seed for nearby p.
  Eigen::JacobiSVD<COperator> svd(t, Eigen::ComputeFullV);
  run(svd.matrixV().col(0));

  for (const auto& c : cands) r.value = std::max(r.value, c.value);
  r.maximizers = cluster_maximizers(cands, r.value, cfg.attain_tol, nullptr);
  return r;
}

NormResult sphere_grid_norm(const COperator& t, const PExponent& p, int res) {
  if (t.cols() != 2) throw Error(ErrorCode::kDimensionMismatch, "sphere grid needs a 2-column operator");
  NormResult r;
  r.method = NormMethod::kGridBruteforce;
  CVector best;
  for (int i = 0; i <= res; ++i) {
    for (int j = 0; j < res; ++j) {
      CVector x = sphere_point(i, j, res, p);
      const double v = vector_pnorm(t * x, p);
      if (v > r.value) {
        r.value = v;
        best = std::move(x);
      }
    }
  }
  if (best.size() > 0) r.maximizers.push_back(canonical_phase(best));
  return r;
}

AttainmentSet attainment_set(const COperator& t, const PExponent& p, const NumericConfig& cfg) {
  require_shape(t);
  if (t.cwiseAbs().maxCoeff() == 0.0) throw Error(ErrorCode::kZeroOperator, "attainment set of T = 0");
  AttainmentSet s;
  s.tol = cfg.attain_tol;

  if (p.is_two()) {
    Eigen::JacobiSVD<COperator> svd(t, Eigen::ComputeFullV);
    s.norm = svd.singularValues()(0);
    int k = 0;
    while (k < svd.singularValues().size() && svd.singularValues()(k) >= s.norm * (1.0 - cfg.attain_tol)) ++k;
    s.subspace_dim = k;
    const COperator basis = svd.matrixV().leftCols(k);
    std::vector<Candidate> cands;
    for (int j = 0; j < k; ++j) cands.push_back({basis.col(j), s.norm});
    if (k > 1) {
      // A whole sphere of the top singular subspace attains; sample it.
      Rng rng = Rng(cfg.seed).split(0x5a7u);
      for (int i = 0; i < 4 * kMaxReps; ++i) {
        CVector c = basis * sample_unit_vector(k, FieldTag::kComplex, PExponent(2.0), rng);
        cands.push_back({std::move(c), s.norm});
      }
    }
    s.reps = cluster_maximizers(std::move(cands), s.norm, cfg.attain_tol, &s.saturated);
    s.pairwise_min_distance = min_pairwise(s.reps);
    return s;
  }

  const NormResult base = operator_norm(t, p, cfg);
  s.norm = base.value;
  std::vector<Candidate> cands;
  for (const auto& m : base.maximizers) cands.push_back({m, vector_pnorm(t * m, p)});

  if (t.cols() == 2) {
    // Local maxima of a (modulus split) x (relative phase) sweep, polished
    // by power iteration where it applies.
    const int res = cfg.sphere_grid;
    Eigen::MatrixXd vals(res + 1, res);
    for (int i = 0; i <= res; ++i) {
      for (int j = 0; j < res; ++j) vals(i, j) = vector_pnorm(t * sphere_point(i, j, res, p), p);
    }
    for (int i = 0; i <= res; ++i) {
      for (int j = 0; j < res; ++j) {
        const double v = vals(i, j);
        bool peak = true;
        for (int di = -1; di <= 1 && peak; ++di) {
          for (int dj = -1; dj <= 1 && peak; ++dj) {
            const int ii = i + di;
            if (ii < 0 || ii > res) continue;
            if (vals(ii, (j + dj + res) % res) > v) peak = false;
          }
        }
        if (!peak) continue;
        CVector x = sphere_point(i, j, res, p);
        if (p.smooth()) {
          PowerIterate it = power_iterate(t, std::move(x), p, cfg.max_iter);
          s.norm = std::max(s.norm, it.value);
          cands.push_back({std::move(it.x), it.value});
        } else {
          cands.push_back({std::move(x), v});
        }
      }
    }
  }
  s.reps = cluster_maximizers(std::move(cands), s.norm, cfg.attain_tol, &s.saturated);
  s.pairwise_min_distance = min_pairwise(s.reps);
  return s;
}

COperator kernel_basis(const COperator& t, double rel_tol) {
  Eigen::JacobiSVD<COperator> svd(t, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cut = rel_tol * (sv.size() > 0 ? sv(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  return svd.matrixV().rightCols(t.cols() - rank);
}

NormEstimator::NormEstimator(int dim, const PExponent& p, const NumericConfig& cfg, int fresh_starts)
    : p_(p), max_iter_(cfg.max_iter) {
  Rng base = Rng(cfg.seed).split(0xe57u);
  for (int k = 0; k < fresh_starts; ++k) fresh_.push_back(sample_unit_vector(dim, FieldTag::kComplex, p, base));
}

double NormEstimator::operator()(const COperator& t) {
  if (p_.is_two()) {
    Eigen::JacobiSVD<COperator> svd(t);
    return svd.singularValues()(0);
  }
  if (p_.is_one()) return colsum_norm(t);
  if (p_.is_infinite()) return rowsum_norm(t);
  double best = -1.0;
  CVector best_x;
  auto consider = [&](const CVector& start) {
    PowerIterate it = power_iterate(t, start, p_, max_iter_);
    if (it.value > best) {
      best = it.value;
      best_x = std::move(it.x);
    }
  };
  if (has_warm_) consider(warm_);
  for (const auto& f : fresh_) consider(f);
  warm_ = std::move(best_x);
  has_warm_ = true;
  return best;
}

}  // namespace bjortho

#ifndef BJORTHO_OPERATOR_ENGINE_HPP_
#define BJORTHO_OPERATOR_ENGINE_HPP_

#include "bjortho/core.hpp"

#include <string>
#include <vector>

namespace bjortho {

enum class NormMethod { kPowerIteration, kSvdExact, kColsumExact, kRowsumExact, kGridBruteforce };

const char* norm_method_name(NormMethod m);

struct NormResult {
  double value = 0.0;
  // Canonical unit vectors at which the value is attained (up to attain_tol).
  std::vector<CVector> maximizers;
  NormMethod method = NormMethod::kPowerIteration;
  int converged_starts = 0;
};

struct AttainmentSet {
  std::vector<CVector> reps;
  double norm = 0.0;
  double tol = 0.0;
  // Phase-invariant distance min_phi ||u - e^{i phi} v||_2 over distinct reps.
  double pairwise_min_distance = 0.0;
  // Cluster count hit the cap: the attained set is (numerically) a whole
  // sphere or a continuum, and reps are only a sample of it.
  bool saturated = false;
  // Dimension of the top singular subspace for p = 2, 0 otherwise.
  int subspace_dim = 0;
};

inline constexpr double kClusterRadius = 1e-4;
inline constexpr int kMaxReps = 64;

// Nonlinear power iteration x <- normalize(Psi_{p'}(T* Psi_p(T x))) from one start.
struct PowerIterate {
  CVector x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};
PowerIterate power_iterate(const COperator& t, CVector start, const PExponent& p, int max_iter);

NormResult operator_norm(const COperator& t, const PExponent& p, const NumericConfig& cfg);

AttainmentSet attainment_set(const COperator& t, const PExponent& p, const NumericConfig& cfg);

// min_phi ||u - e^{i phi} v||_2.
double phase_distance(const CVector& u, const CVector& v);

// Orthonormal basis (columns) of ker T, numerical rank cut at rel_tol * sigma_max.
COperator kernel_basis(const COperator& t, double rel_tol = 1e-10);

// Exact column/row absolute-sum formulas.
double colsum_norm(const COperator& t);
double rowsum_norm(const COperator& t);

// Lower bound on ||T||_p from a deterministic (modulus split) x (relative
// phase) grid over the unit sphere of l_p^2; `res` points per axis.
NormResult sphere_grid_norm(const COperator& t, const PExponent& p, int res);

// Evaluates ||T||_p repeatedly along a path of nearby operators, warm-starting
// power iteration from the previous maximizer plus a fixed set of fresh
// starts. Used inside the lambda minimization of the direct route.
class NormEstimator {
 public:
  NormEstimator(int dim, const PExponent& p, const NumericConfig& cfg, int fresh_starts = 1);

  double operator()(const COperator& t);
  void seed(const CVector& x) {
    warm_ = x;
    has_warm_ = true;
  }
  const CVector& last_maximizer() const { return warm_; }

 private:
  PExponent p_;
  int max_iter_;
  std::vector<CVector> fresh_;
  CVector warm_;
  bool has_warm_ = false;
};

}  // namespace bjortho

#endif  // BJORTHO_OPERATOR_ENGINE_HPP_

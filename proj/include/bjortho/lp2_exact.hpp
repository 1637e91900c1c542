#ifndef BJORTHO_LP2_EXACT_HPP_
#define BJORTHO_LP2_EXACT_HPP_

#include "bjortho/core.hpp"
#include "bjortho/operator_orthogonality.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace bjortho {

// Closed-form facts about two-dimensional complex l_p, 1 < p < inf.

// (z1, z2) is B-J orthogonal to (1, -|z1|^{p-2} conj(z1) / (|z2|^{p-2} conj(z2))).
CVector orth_direction_right(Complex z1, Complex z2, const PExponent& p);
// (z1, z2) is B-J orthogonal to (-|z2|^{p-2} conj(z2) / (|z1|^{p-2} conj(z1)), 1).
CVector orth_direction_left(Complex z1, Complex z2, const PExponent& p);

enum class MutualFamily { kI, kII, kIII, kIV, kNone };
const char* mutual_family_name(MutualFamily f);

// Matches a mutually orthogonal unit pair against the four templates. The
// phase of y relative to x is free, since orthogonality is homogeneous.
MutualFamily classify_mutual_pair(const CVector& x, const CVector& y, const PExponent& p, double tol);

enum class LeftSymFamily { kE1, kE2, kHalfSum, kHalfDiff, kNone };
const char* left_sym_family_name(LeftSymFamily f);

struct LeftSymClass {
  LeftSymFamily family = LeftSymFamily::kNone;
  std::vector<double> phases;
  // Distance from x to the closest template.
  double residual = 0.0;
  int checks_run = 0;
  int checks_passed = 0;
  // A unit y with x perp_B y but not y perp_B x, when one was found.
  std::optional<CVector> refuting_y;
  double refuting_residual = 0.0;
};

// Unit vectors y with x perp_B y (the complex line s(x, .) = 0), random phase.
CVector sample_orthogonal_partner(const CVector& x, const PExponent& p, Rng& rng);

LeftSymClass classify_left_symmetric_point(const CVector& x, const PExponent& p, double tol,
                                           const NumericConfig& cfg, int functional_samples = 50);

// T e1 = e1, T e2 = 0; A e1 = e2, A e2 = e1 + e2. Columns are images of basis vectors.
struct OperatorPair {
  COperator t;
  COperator a;
};
OperatorPair counterexample_pair();

struct DirectionEvidence {
  Direction alpha{0.0};
  // Largest, over reps w of M_A, of min_{t <= 0} ||Aw + t alpha Tw|| - ||Aw||
  // (resp. t >= 0). Negative: no witness of that sign exists at alpha.
  double worst_minus = 0.0;
  double worst_plus = 0.0;
};

struct NotLeftSymCertificate {
  OrthVerdict t_orth_a;
  bool a_orth_t = true;
  Complex lambda_star = 0.0;
  double norm_a = 0.0;
  double min_a_plus_lambda_t = 0.0;
  double delta = 0.0;
  std::vector<CVector> reps_a;
  std::vector<DirectionEvidence> evidence;
  // Grid directions at which every rep of M_A lacks a minus (resp. plus) witness.
  int directions_without_minus = 0;
  int directions_without_plus = 0;
};

// T perp_B A together with an explicit refutation of A perp_B T.
NotLeftSymCertificate certify_not_left_symmetric(const COperator& t, const COperator& a, const PExponent& p,
                                                 const NumericConfig& cfg);

// Builds (T, A) for one choice of mutually orthogonal (x, y) and the family of
// T x, following T x = tx, T y = 0, A x = y, A y in {(e^{i theta}, 0), (e^{i theta}, e^{i theta})},
// and scans theta for a pair that certifies.
struct CounterexampleAttempt {
  MutualFamily pair_family = MutualFamily::kNone;
  LeftSymFamily image_family = LeftSymFamily::kNone;
  bool certified = false;
  double theta = 0.0;
  int ay_shape = 0;
  std::optional<OperatorPair> pair;
  std::optional<NotLeftSymCertificate> certificate;
  std::string failure;
};
CounterexampleAttempt generate_counterexample(MutualFamily pair_family, LeftSymFamily image_family,
                                              const PExponent& p, const NumericConfig& cfg, int theta_steps = 8);

}  // namespace bjortho

#endif  // BJORTHO_LP2_EXACT_HPP_

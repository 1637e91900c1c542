#ifndef BJORTHO_OPERATOR_ORTHOGONALITY_HPP_
#define BJORTHO_OPERATOR_ORTHOGONALITY_HPP_

#include "bjortho/core.hpp"
#include "bjortho/operator_engine.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace bjortho {

enum class OrthRoute { kDirect, kWitness, kPhiSplit, kConnected };

const char* orth_route_name(OrthRoute r);

struct OrthVerdict {
  bool orthogonal = false;
  OrthRoute route = OrthRoute::kDirect;
  double norm_t = 0.0;
  // Direct route: min over lambda of ||T + lambda A|| and its argmin.
  double min_value = 0.0;
  Complex argmin_lambda = 0.0;
  double tolerance_used = 0.0;
  // Witness-style routes: grid size and the smallest margin the verdict relied on.
  int grid_size = 0;
  double worst_margin = 0.0;
};

struct WitnessEntry {
  Direction alpha{0.0};
  // Indices into the attainment reps, -1 when no witness exists.
  int x_index = -1;
  int y_index = -1;
  // Best margins over reps (the chosen witness when one exists).
  double plus_margin = 0.0;
  double minus_margin = 0.0;
};

struct WitnessTable {
  std::vector<WitnessEntry> entries;
  std::vector<CVector> reps;
  int grid_size = 0;

  bool complete() const;
};

// Plus-margins of (T x_r, A x_r) on the full circle for every rep x_r:
// margins[r][k] at angle k pi / n, k = 0..2n-1.
struct MarginTable {
  std::vector<CVector> reps;
  std::vector<std::vector<double>> margins;
  double norm_t = 0.0;
  int n = 0;
  // Rays are searched over |t| <= radius only (see build_margin_table).
  double radius = 0.0;

  double plus(std::size_t r, int k) const { return margins[r][static_cast<std::size_t>(k)]; }
  double minus(std::size_t r, int k) const { return margins[r][static_cast<std::size_t>((k + n) % (2 * n))]; }
  // Plus-margin at any circle index, wrapped mod 2n.
  double circle(std::size_t r, int k) const {
    const int m = 2 * n;
    return margins[r][static_cast<std::size_t>(((k % m) + m) % m)];
  }
};

MarginTable build_margin_table(const COperator& t, const COperator& a, const AttainmentSet& mt,
                               const PExponent& p, int n_alpha);

OrthVerdict op_orth_direct(const COperator& t, const COperator& a, const PExponent& p, const NumericConfig& cfg);

struct WitnessResult {
  OrthVerdict verdict;
  WitnessTable table;
};
WitnessResult op_orth_witness(const COperator& t, const COperator& a, const PExponent& p, const NumericConfig& cfg);
WitnessResult op_orth_witness(const MarginTable& table, const NumericConfig& cfg);

struct PhiSplitResult {
  OrthVerdict verdict;
  bool found = false;
  double phi1 = 0.0;
  double phi2 = 0.0;
  // Rep indices of the four witnesses.
  int x = -1, y = -1, z = -1, w = -1;
  std::vector<CVector> reps;
};
PhiSplitResult op_orth_phi_split(const COperator& t, const COperator& a, const PExponent& p,
                                 const NumericConfig& cfg);
PhiSplitResult op_orth_phi_split(const MarginTable& table, const NumericConfig& cfg);

struct ConnectedResult {
  OrthVerdict verdict;
  bool assume_connected = false;
  // Per grid alpha: rep index x with T x perp_alpha A x, or -1.
  std::vector<int> per_alpha;
  bool per_alpha_complete = false;
  bool found = false;
  double theta = 0.0;
  int x = -1, y = -1;
  // Per-alpha route failed while the two-witness route succeeded.
  bool connectivity_sensitive = false;
  std::vector<CVector> reps;
};
ConnectedResult op_orth_connected(const COperator& t, const COperator& a, const PExponent& p,
                                  const NumericConfig& cfg, bool assume_connected);
ConnectedResult op_orth_connected(const MarginTable& table, const NumericConfig& cfg, bool assume_connected);

struct CheckTally {
  int run = 0;
  int passed = 0;
  double worst_margin = std::numeric_limits<double>::infinity();

  void record(bool ok, double margin) {
    ++run;
    if (ok) ++passed;
    worst_margin = std::min(worst_margin, margin);
  }
  bool ok() const { return run == passed; }
};

struct MtStructureReport {
  CheckTally preimage_orth;    // (i)
  CheckTally plus_image;       // (ii)
  CheckTally minus_image;      // (iii)
  CheckTally kernel_inclusion; // (iv)
  int kernel_dim = 0;
  int reps = 0;

  bool ok() const { return preimage_orth.ok() && plus_image.ok() && minus_image.ok() && kernel_inclusion.ok(); }
};

// Samples the four structural facts about M_T; `samples` random draws per check and rep.
MtStructureReport mt_structure_checks(const COperator& t, const PExponent& p, const NumericConfig& cfg,
                                      int samples = 4);

}  // namespace bjortho

#endif  // BJORTHO_OPERATOR_ORTHOGONALITY_HPP_

#pragma once

// Sharpness experiment on the q-regular tree of depth k whose leaf layer is
// wired to an extra hub vertex v*: W = W_mag off the hub, W(v*) = 0.  The
// ground state concentrates at the hub and decays by a factor ~ q/W per
// level, which is what the Agmon bound predicts.
//
// Level amplitudes reach ~ (q/W)^k * ||phi||_inf (1e-31 at q=3, k=3,
// W=1e8), far below what a double-precision dense solve of the full graph
// can resolve (backward error ~ n*eps*||H||).  The ground state is constant
// on levels, so the experiment also solves the (k+2)-point level quotient --
// a symmetric tridiagonal matrix with off-diagonal squares q and q^k -- in
// __float128: Sturm bisection for lambda_1 and stable back-substitution for
// the profile.  The dense solve is kept as a cross-check of lambda_1 and of
// level constancy.

#include <vector>

#include "agmon/agmon_metric.hpp"
#include "agmon/graph.hpp"

namespace agmon {

struct TreeExperiment {
  int q = 0;
  int k = 0;
  double w_mag = 0.0;
  TreeHub instance;     // graph, hub index, per-vertex levels
  Potential potential;  // W_mag everywhere except 0 at the hub
  double lambda1 = 0.0;        // ground energy from the quotient (high precision)
  double lambda1_dense = 0.0;  // ground energy from the dense full-graph solve
  // |phi| per level 0..k and the hub at index k+1, from the quotient profile,
  // normalized to unit l2 norm over the full vertex set.
  std::vector<double> level_profile;
  // Per-level mean of |phi| from the dense eigenvector, same layout.
  std::vector<double> level_mean;
  // max over levels of (max |phi| - min |phi|) within the level, divided by
  // ||phi||_inf, measured on the dense eigenvector.
  double level_spread = 0.0;
  // level_profile[i] / level_profile[i+1] for i = 1..k-2 (empty when k = 2);
  // approaches q/W_mag as W_mag grows.
  std::vector<double> ratios;
  double hub_amp = 0.0;  // level_profile[k+1] = ||phi||_inf
};

struct DecayComparison {
  std::vector<double> level_cost;  // Agmon node cost by level 0..k (hub cost is 0)
  std::vector<double> rate;        // empirical decay log(phi_{i+1}/phi_i), i = 1..k-1
  std::vector<double> ratio;       // rate[i-1] / level_cost[i], i = 1..k-1
};

// Requires q >= 2, k >= 2 (so interior levels exist) and W_mag > q^k.
TreeExperiment run_tree_experiment(int q, int k, double w_mag);

// Max residual of (W - lambda1 + q + 1) phi_i = q phi_{i+1} + phi_{i-1} over
// interior levels i = 1..k-1, relative to W_mag * max interior |phi_i|.
// lambda_shift perturbs lambda1 (negative control: the identity breaks).
double check_level_recurrence(const TreeExperiment& exp, double lambda_shift = 0.0);

// Per-level node costs vs. the empirical decay rate of the profile; the
// field must have been computed at exactly exp.lambda1 (EnergyMismatch).
DecayComparison compare_decay_rates(const TreeExperiment& exp, const AgmonField& field);

}  // namespace agmon

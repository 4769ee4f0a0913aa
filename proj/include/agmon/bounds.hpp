#pragma once

// Verification of the pointwise decay bound |phi(v)| <= e^{-rho_E(v)} * ||phi||_inf
// for certified eigenpairs, its refined single-target variant, and the greedy
// maximal-neighbor path that drives the proof.

#include <vector>

#include "agmon/agmon_metric.hpp"
#include "agmon/eigensolve.hpp"
#include "agmon/graph.hpp"

namespace agmon {

struct BoundRow {
  int v = 0;
  double abs_phi = 0.0;
  double rho = 0.0;
  double bound = 0.0;  // value of the bound variant being verified at v
  double slack = 0.0;  // bound - abs_phi; nonnegative when the bound holds
};

struct BoundReport {
  double energy = 0.0;
  double max_abs_phi = 0.0;
  double tol = 0.0;  // absolute slack tolerance actually applied
  bool ok = false;   // min slack >= -tol
  double min_slack = 0.0;
  int min_slack_vertex = -1;
  int argmax_vertex = -1;    // first vertex attaining ||phi||_inf
  bool argmax_allowed = false;
  bool vacuous = false;      // walk variant with an empty forbidden region
  std::vector<BoundRow> rows;
  // Filled by verify_refined: whether refined <= theorem held pointwise.
  bool refined_below_theorem = true;
  // Filled by verify_walk_bound: per-vertex flag, walk bound < theorem bound.
  std::vector<char> tighter_than_theorem;
};

struct GreedyPath {
  std::vector<int> vertices;     // start, ..., allowed terminal
  std::vector<double> abs_phi;   // |phi| along the path, strictly increasing
  double collected_bound = 0.0;  // prod [1+(W-E)/deg]^{-1} * |phi(terminal)|
};

inline constexpr double kDefaultTolVerify = 1e-9;  // relative to ||phi||_inf

// Checks |phi(v)| <= e^{-rho_E(v)} * ||phi||_inf at every vertex.  The field
// must have been computed at exactly the pair's eigenvalue (EnergyMismatch
// otherwise).  tol_factor scales ||phi||_inf to give the absolute tolerance.
BoundReport verify_theorem(const Graph& g, const Potential& w, const EigenPair& pair,
                           const AgmonField& field, double tol_factor = kDefaultTolVerify);

// Refined variant: bound(u) = max over allowed w of e^{-rho~(u,w)} * |phi(w)|,
// where rho~(u,w) is the cheapest node-cost sum over paths from u to the
// specific target w.  The maximum is what the greedy-path argument yields (the
// path certifies the estimate for its own terminal vertex, not for an
// arbitrary one), and it is pointwise <= the theorem bound because
// rho~(u,w) >= rho_E(u) for every target.
BoundReport verify_refined(const Graph& g, const Potential& w, const EigenPair& pair,
                           const AgmonField& field, double tol_factor = kDefaultTolVerify);

// Follows the proof's construction from a forbidden start with phi != 0:
// repeatedly step to the neighbor maximizing |phi| (ties to the lowest index)
// until the allowed region is reached.  Throws StartNotForbidden or
// ZeroAmplitudeStart when the preconditions fail.
GreedyPath greedy_path(const Graph& g, const Potential& w, const EigenPair& pair, int start);

namespace detail {

// Builds rows, slack summary, and argmax data for a per-vertex bound vector;
// shared by the theorem, refined, and walk verifiers.
BoundReport assemble_report(const Graph& g, const Potential& w, const EigenPair& pair,
                            const AgmonField& field, const std::vector<double>& bound,
                            double tol_factor);

}  // namespace detail

}  // namespace agmon

#pragma once

// Agmon distance to the allowed region {v : W(v) <= E} under per-vertex
// costs c(v) = log(1 + (W(v)-E)_+ / deg(v)), plus the edge-cost comparison
// distance with summand log(1 + ((W(u)-E)_+ (W(v)-E)_+)^{1/4}).  Both are
// multi-source Dijkstra runs seeded from the allowed region at distance 0.

#include <vector>

#include "agmon/graph.hpp"

namespace agmon {

struct AgmonField {
  double energy = 0.0;
  std::vector<double> node_cost;  // c(v) >= 0; zero exactly on the allowed region
  std::vector<double> rho;        // rho_E(v) in [0, +inf]; +inf iff unreachable
  std::vector<int> pred;          // next vertex toward the allowed region; -1 at sources
  bool allowed_empty = false;     // true iff E < min W; then rho is identically +inf
};

// log(1 + max(W(v)-E, 0)/deg(v)), evaluated in log1p form.
double node_cost(const Graph& g, const Potential& w, double energy, int v);

// rho_E for every vertex, with witness predecessors.  An empty allowed
// region is reported through the field (all rho = +inf, allowed_empty set)
// rather than by throwing, so the result stays total.
AgmonField agmon_distance(const Graph& g, const Potential& w, double energy);

// Cheapest node-cost sum over paths from each vertex to the given allowed
// target; allowed intermediate vertices cost 0, so travel through the
// allowed region is free.  Throws TargetNotAllowed if W(target) > E.
std::vector<double> agmon_distance_to(const Graph& g, const Potential& w, double energy,
                                      int target);

// Edge-cost comparison distance to the allowed region.  Edges touching an
// allowed endpoint cost 0 because the (.)_+ product vanishes.  All +inf if
// the allowed region is empty.
std::vector<double> fmt_distance(const Graph& g, const Potential& w, double energy);

// Path v -> ... -> allowed source realizing rho_E(v), reconstructed from the
// predecessor map.  Summing node costs over the path reproduces rho_E(v).
// Empty if rho_E(v) = +inf.
std::vector<int> witness_path(const AgmonField& field, int v);

// Throws EmptyAllowedRegion if the field was computed with no allowed
// vertices; used by callers whose bounds are meaningless in that case.
void require_allowed(const AgmonField& field);

}  // namespace agmon

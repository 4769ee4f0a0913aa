#pragma once

// Random-walk form of the decay bound: a uniform-neighbor walk started at u
// and stopped on first entry to the allowed region (stopping time tau)
// satisfies |phi(u)| <= E[(1+delta)^{-tau}] * ||phi||_inf, where delta lower
// bounds (W(v)-E)/deg(v) over the forbidden region.  The moment is evaluated
// exactly through the absorbing-chain linear system and validated by Monte
// Carlo sampling.

#include <cstdint>
#include <vector>

#include "agmon/agmon_metric.hpp"
#include "agmon/bounds.hpp"
#include "agmon/eigensolve.hpp"
#include "agmon/exec.hpp"
#include "agmon/graph.hpp"

namespace agmon {

struct McMoment {
  std::vector<double> estimate;
  std::vector<double> std_error;
};

struct WalkBound {
  double energy = 0.0;
  double delta = 0.0;
  std::vector<double> exact;  // exact_moment per vertex; identically 1 if vacuous
  McMoment mc;                // empty vectors when sampling was not requested
  long long sample_count = 0;
  std::uint64_t seed = 0;
  bool vacuous = false;  // no forbidden vertex at this energy; the bound is trivial
};

inline constexpr long long kDefaultStepCap = 1000000;

// min over forbidden v of (W(v)-E)/deg(v); positive by definition of the
// forbidden region.  Throws NoForbiddenRegion when every vertex is allowed
// (the bound is vacuous and delta = 0 would be misleading).
double compute_delta(const Graph& g, const Potential& w, double energy);

// Solves f = 1 on the allowed region, f(u) = (1+delta)^{-1} (1/deg u) sum of
// f over neighbors on the forbidden region, by LU on the forbidden block plus
// one step of iterative refinement.  The forbidden block is strictly
// diagonally dominant, so the system is uniquely solvable.  Throws
// EmptyAllowedRegion when no vertex is allowed.
std::vector<double> exact_moment(const Graph& g, const Potential& w, double energy, double delta);

// Monte Carlo estimate of the same moment: `samples` independent walks per
// start vertex, each on its own (seed, vertex, walk) substream, so results
// are bit-identical for a fixed seed under any thread count.  Allowed starts
// return (1, 0) without sampling.  Any walk exceeding step_cap aborts the
// run with StepCapExceeded naming the affected vertices.
McMoment mc_moment(const Graph& g, const Potential& w, double energy, double delta,
                   long long samples, std::uint64_t seed, long long step_cap = kDefaultStepCap,
                   Exec exec = Exec::parallel);

// Assembles the full walk-bound record at the given energy.  If the
// forbidden region is empty the record is marked vacuous with exact == 1.
// samples = 0 skips Monte Carlo.
WalkBound make_walk_bound(const Graph& g, const Potential& w, double energy, long long samples,
                          std::uint64_t seed, long long step_cap = kDefaultStepCap,
                          Exec exec = Exec::parallel);

// Checks |phi(u)| <= exact_moment(u) * ||phi||_inf at every vertex and
// records where this bound is tighter than e^{-rho} * ||phi||_inf.  Both the
// walk record and the distance field must match the pair's eigenvalue.
BoundReport verify_walk_bound(const Graph& g, const Potential& w, const EigenPair& pair,
                              const WalkBound& walk, const AgmonField& field,
                              double tol_factor = kDefaultTolVerify);

}  // namespace agmon

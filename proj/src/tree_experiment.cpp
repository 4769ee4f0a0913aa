#include "agmon/tree_experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "agmon/eigensolve.hpp"
#include "agmon/errors.hpp"
#include "agmon/hamiltonian.hpp"

namespace agmon {

namespace {

using quad = __float128;

// Number of eigenvalues of the symmetric tridiagonal matrix (diag, offsq)
// strictly below x, via the Sturm sequence of leading principal minors.
// offsq holds the squared off-diagonal entries.
int sturm_count_below(const std::vector<quad>& diag, const std::vector<quad>& offsq, quad x) {
  const int m = static_cast<int>(diag.size());
  int count = 0;
  quad p = diag[0] - x;
  if (p < 0) ++count;
  for (int i = 1; i < m; ++i) {
    if (p == 0) p = static_cast<quad>(-1e-300) * static_cast<quad>(1e-300);
    p = diag[i] - x - offsq[i - 1] / p;
    if (p < 0) ++count;
  }
  return count;
}

// Returns mu = q^k - lambda_1 > 0 for the quotient matrix, bisecting on mu
// itself.  diag_shift holds d_i - q^k (exact integers), so the only rounding
// in the Sturm recurrence is at the scale of mu: lambda_1 lies within
// eps * mu of q^k - mu rather than within eps * q^k.  Back-substitution
// amplifies an energy error by ~W per level, so this shift is what keeps the
// deep-level profile accurate at large W.
quad ground_energy_gap(const std::vector<quad>& diag_shift, const std::vector<quad>& offsq,
                       quad qk) {
  quad lo = 0;   // count of eigenvalues below q^k - lo is >= 1
  quad hi = qk;  // count of eigenvalues below q^k - hi is 0
  for (int iter = 0; iter < 300; ++iter) {
    const quad mid = lo + (hi - lo) / 2;
    if (mid == lo || mid == hi) break;
    // Eigenvalues of T below q^k - mid == eigenvalues of T - q^k below -mid.
    if (sturm_count_below(diag_shift, offsq, -mid) >= 1)
      lo = mid;
    else
      hi = mid;
  }
  return lo + (hi - lo) / 2;
}

double to_double(quad x) { return static_cast<double>(x); }

}  // namespace

TreeExperiment run_tree_experiment(int q, int k, double w_mag) {
  if (q < 2 || k < 2)
    fail(errc::bad_argument, "experiment needs q >= 2 and k >= 2 so interior levels exist (got q=" +
                                 std::to_string(q) + ", k=" + std::to_string(k) + ")");
  double qk = 1.0;
  for (int i = 0; i < k; ++i) qk *= q;
  if (!(w_mag > qk))
    fail(errc::bad_argument, "W_mag must exceed q^k = " + std::to_string(qk) + " (got " +
                                 std::to_string(w_mag) + ")");

  TreeExperiment exp;
  exp.q = q;
  exp.k = k;
  exp.w_mag = w_mag;
  exp.instance = gen_tree_hub(q, k);
  const Graph& g = exp.instance.graph;
  exp.potential.values.assign(g.n, w_mag);
  exp.potential.values[exp.instance.hub] = 0.0;

  // Dense cross-check on the full graph.
  Hamiltonian h = assemble(g, exp.potential);
  const std::vector<EigenPair> pairs = eig_all(h);
  const EigenPair& ground = pairs[0];
  exp.lambda1_dense = ground.eigenvalue;

  // Level quotient: classes are levels 0..k plus the hub.  Conjugating the
  // quotient by sqrt(class size) gives a symmetric tridiagonal matrix whose
  // off-diagonal squares are q (level-to-level) and q^k (leaf-to-hub).
  const int m = k + 2;
  const quad wq = static_cast<quad>(w_mag);
  const quad qq = static_cast<quad>(q);
  quad qkq = 1;
  for (int i = 0; i < k; ++i) qkq *= qq;
  // Diagonal stored relative to q^k (exact for these integer-valued entries).
  std::vector<quad> diag_shift(m), offsq(m - 1);
  diag_shift[0] = qq + wq - qkq;                                       // root: deg q
  for (int i = 1; i <= k - 1; ++i) diag_shift[i] = qq + 1 + wq - qkq;  // interior: deg q+1
  diag_shift[k] = 2 + wq - qkq;                                        // leaf layer: parent + hub
  diag_shift[k + 1] = 0;                                               // hub: deg q^k, W = 0
  for (int i = 0; i < k; ++i) offsq[i] = qq;
  offsq[k] = qkq;

  const quad mu = ground_energy_gap(diag_shift, offsq, qkq);  // q^k - lambda_1
  exp.lambda1 = to_double(qkq - mu);
  if (!(exp.lambda1 <= qk))
    fail(errc::convergence_failure,
         "quotient ground energy " + std::to_string(exp.lambda1) + " exceeds q^k");
  if (!(std::abs(exp.lambda1 - exp.lambda1_dense) <= 1e-10 * h.inf_norm))
    fail(errc::convergence_failure,
         "quotient and dense ground energies disagree: " + std::to_string(exp.lambda1) + " vs " +
             std::to_string(exp.lambda1_dense));

  // Back-substitute the level profile from the hub downward, with every
  // coefficient expressed through mu so no precision is lost to the near-q^k
  // eigenvalue.  phi_0 comes from the root equation, not from the i=1
  // recurrence, to avoid one more cancellation-prone elimination.
  std::vector<quad> phi(m);
  phi[k + 1] = 1;                   // hub
  phi[k] = mu / qkq;                // hub equation
  phi[k - 1] = (2 + wq - qkq + mu) * phi[k] - phi[k + 1];  // leaf-layer equation
  for (int i = k - 1; i >= 2; --i)  // interior equations
    phi[i - 1] = (qq + 1 + wq - qkq + mu) * phi[i] - qq * phi[i + 1];
  phi[0] = qq * phi[1] / (qq + wq - qkq + mu);  // root equation

  // Normalize to unit l2 norm over the full vertex set (q^i copies per level).
  quad norm_sq = phi[k + 1] * phi[k + 1];
  quad mult = 1;
  for (int i = 0; i <= k; ++i) {
    norm_sq += mult * phi[i] * phi[i];
    mult *= qq;
  }
  const quad norm = static_cast<quad>(std::sqrt(to_double(norm_sq)));
  exp.level_profile.resize(m);
  for (int i = 0; i < m; ++i) {
    quad v = phi[i] / norm;
    exp.level_profile[i] = std::abs(to_double(v));
  }
  exp.hub_amp = exp.level_profile[k + 1];

  // Dense per-level means and the level-constancy spread.
  exp.level_mean.assign(m, 0.0);
  std::vector<int> count(m, 0);
  std::vector<double> lo(m, std::numeric_limits<double>::infinity()), hi(m, 0.0);
  double max_abs = 0.0;
  for (int v = 0; v < g.n; ++v) {
    const int lev = exp.instance.level_of[v];
    const double amp = std::abs(ground.vector[v]);
    exp.level_mean[lev] += amp;
    ++count[lev];
    lo[lev] = std::min(lo[lev], amp);
    hi[lev] = std::max(hi[lev], amp);
    max_abs = std::max(max_abs, amp);
  }
  exp.level_spread = 0.0;
  for (int i = 0; i < m; ++i) {
    exp.level_mean[i] /= count[i];
    exp.level_spread = std::max(exp.level_spread, (hi[i] - lo[i]) / max_abs);
  }

  for (int i = 1; i <= k - 2; ++i)
    exp.ratios.push_back(exp.level_profile[i] / exp.level_profile[i + 1]);
  return exp;
}

double check_level_recurrence(const TreeExperiment& exp, double lambda_shift) {
  const double lambda = exp.lambda1 + lambda_shift;
  double max_interior = 0.0;
  for (int i = 1; i <= exp.k - 1; ++i)
    max_interior = std::max(max_interior, exp.level_profile[i]);
  double worst = 0.0;
  for (int i = 1; i <= exp.k - 1; ++i) {
    const double resid = (exp.w_mag - lambda + exp.q + 1) * exp.level_profile[i] -
                         exp.q * exp.level_profile[i + 1] - exp.level_profile[i - 1];
    worst = std::max(worst, std::abs(resid));
  }
  return worst / (exp.w_mag * max_interior);
}

DecayComparison compare_decay_rates(const TreeExperiment& exp, const AgmonField& field) {
  if (field.energy != exp.lambda1)
    fail(errc::energy_mismatch, "distance field was computed at E = " +
                                    std::to_string(field.energy) +
                                    " but the experiment ground energy is " +
                                    std::to_string(exp.lambda1));
  const Graph& g = exp.instance.graph;
  if (static_cast<int>(field.node_cost.size()) != g.n)
    fail(errc::size_mismatch, "distance field does not match the experiment graph");

  DecayComparison cmp;
  cmp.level_cost.assign(exp.k + 1, 0.0);
  std::vector<char> seen(exp.k + 1, 0);
  for (int v = 0; v < g.n; ++v) {
    const int lev = exp.instance.level_of[v];
    if (lev <= exp.k && !seen[lev]) {
      cmp.level_cost[lev] = field.node_cost[v];
      seen[lev] = 1;
    }
  }
  for (int i = 1; i <= exp.k - 1; ++i) {
    const double r = std::log(exp.level_profile[i + 1] / exp.level_profile[i]);
    cmp.rate.push_back(r);
    cmp.ratio.push_back(r / cmp.level_cost[i]);
  }
  return cmp;
}

}  // namespace agmon

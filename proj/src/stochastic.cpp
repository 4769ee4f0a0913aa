#include "agmon/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "agmon/errors.hpp"
#include "agmon/linalg.hpp"
#include "agmon/prng.hpp"

namespace agmon {

double compute_delta(const Graph& g, const Potential& w, double energy) {
  double delta = std::numeric_limits<double>::infinity();
  bool any = false;
  for (int v = 0; v < g.n; ++v) {
    if (w.values[v] > energy) {
      any = true;
      delta = std::min(delta, (w.values[v] - energy) / g.degree[v]);
    }
  }
  if (!any)
    fail(errc::no_forbidden_region,
         "every vertex satisfies W(v) <= E at E = " + std::to_string(energy) +
             "; the walk bound is vacuous");
  return delta;
}

std::vector<double> exact_moment(const Graph& g, const Potential& w, double energy, double delta) {
  std::vector<int> forbidden;  // unknowns of the linear system
  std::vector<int> slot(g.n, -1);
  for (int v = 0; v < g.n; ++v)
    if (w.values[v] > energy) {
      slot[v] = static_cast<int>(forbidden.size());
      forbidden.push_back(v);
    }
  if (static_cast<int>(forbidden.size()) == g.n)
    fail(errc::empty_allowed_region,
         "no vertex satisfies W(v) <= E at E = " + std::to_string(energy));

  std::vector<double> f(g.n, 1.0);
  const int m = static_cast<int>(forbidden.size());
  if (m == 0) return f;

  // Row for forbidden u: (1+delta) f(u) - (1/deg u) sum over forbidden
  // neighbors = (number of allowed neighbors)/deg u.
  std::vector<double> a(static_cast<std::size_t>(m) * m, 0.0);
  std::vector<double> b(m, 0.0);
  for (int i = 0; i < m; ++i) {
    const int u = forbidden[i];
    const double inv_deg = 1.0 / g.degree[u];
    a[static_cast<std::size_t>(i) * m + i] = 1.0 + delta;
    for (int idx = g.offsets[u]; idx < g.offsets[u + 1]; ++idx) {
      const int nb = g.neighbors[idx];
      if (slot[nb] >= 0)
        a[static_cast<std::size_t>(i) * m + slot[nb]] -= inv_deg;
      else
        b[i] += inv_deg;
    }
  }

  const LuFactors lu = lu_factor(a, m);
  std::vector<double> x = lu_solve(lu, b);

  // One step of iterative refinement in the original (unscaled) rows.
  std::vector<double> resid(m);
  auto residual_of = [&](const std::vector<double>& y) {
    for (int i = 0; i < m; ++i) {
      const int u = forbidden[i];
      const double inv_deg = 1.0 / g.degree[u];
      double acc = (1.0 + delta) * y[i] - b[i];
      for (int idx = g.offsets[u]; idx < g.offsets[u + 1]; ++idx) {
        const int nb = g.neighbors[idx];
        if (slot[nb] >= 0) acc -= inv_deg * y[slot[nb]];
      }
      resid[i] = acc;
    }
  };
  residual_of(x);
  std::vector<double> corr = lu_solve(lu, resid);
  for (int i = 0; i < m; ++i) x[i] -= corr[i];

  // Certify the scaled fixed-point equation f(u) = (1+delta)^{-1} (1/deg) sum f.
  residual_of(x);
  double worst = 0.0;
  for (int i = 0; i < m; ++i) worst = std::max(worst, std::abs(resid[i]) / (1.0 + delta));
  if (!(worst <= 1e-12))
    fail(errc::convergence_failure,
         "moment system residual " + std::to_string(worst) + " exceeds 1e-12");

  for (int i = 0; i < m; ++i) f[forbidden[i]] = x[i];
  return f;
}

namespace {

// base^{-tau} by binary exponentiation; exact function of tau, so walks with
// equal stopping times contribute bit-identical sample values.
long double pow_neg_int(long double base, long long tau) {
  long double result = 1.0L;
  long double p = 1.0L / base;
  auto e = static_cast<unsigned long long>(tau);
  while (e != 0) {
    if (e & 1ull) result *= p;
    p *= p;
    e >>= 1;
  }
  return result;
}

}  // namespace

McMoment mc_moment(const Graph& g, const Potential& w, double energy, double delta,
                   long long samples, std::uint64_t seed, long long step_cap, Exec exec) {
  if (samples < 1) fail(errc::bad_argument, "sample count must be at least 1");
  if (step_cap < 1) fail(errc::bad_argument, "step cap must be at least 1");

  McMoment out;
  out.estimate.assign(g.n, 1.0);
  out.std_error.assign(g.n, 0.0);
  std::vector<char> capped(g.n, 0);
  const double base = 1.0 + delta;

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
#endif
  for (int v = 0; v < g.n; ++v) {
    if (w.values[v] <= energy) continue;  // tau = 0 deterministically
    long double sum = 0.0L, sumsq = 0.0L;
    long long tau_min = -1;
    bool tau_varies = false;
    for (long long s = 0; s < samples; ++s) {
      SplitMix64 rng = substream(seed, static_cast<std::uint64_t>(v),
                                 static_cast<std::uint64_t>(s));
      int cur = v;
      long long tau = 0;
      while (w.values[cur] > energy) {
        if (tau >= step_cap) {
          capped[v] = 1;
          break;
        }
        ++tau;
        const int deg = g.offsets[cur + 1] - g.offsets[cur];
        cur = g.neighbors[g.offsets[cur] +
                          static_cast<int>(rng.next_below(static_cast<std::uint64_t>(deg)))];
      }
      if (capped[v]) break;
      if (tau_min < 0) tau_min = tau;
      tau_varies = tau_varies || tau != tau_min;
      const long double val = pow_neg_int(base, tau);
      sum += val;
      sumsq += val * val;
    }
    if (capped[v]) continue;
    const long double mean = sum / samples;
    out.estimate[v] = static_cast<double>(mean);
    // identical stopping times mean a genuinely zero sample variance; the
    // sumsq cancellation would otherwise leave ~1e-12 of rounding noise
    if (samples > 1 && tau_varies) {
      long double var = (sumsq - sum * sum / samples) / (samples - 1);
      if (var < 0.0L) var = 0.0L;
      out.std_error[v] = static_cast<double>(std::sqrt(var / samples));
    }
  }
  (void)exec;

  std::string bad;
  for (int v = 0; v < g.n; ++v)
    if (capped[v]) bad += (bad.empty() ? "" : ", ") + std::to_string(v);
  if (!bad.empty())
    fail(errc::step_cap_exceeded, "walks exceeded the step cap of " + std::to_string(step_cap) +
                                      " from vertices: " + bad);
  return out;
}

WalkBound make_walk_bound(const Graph& g, const Potential& w, double energy, long long samples,
                          std::uint64_t seed, long long step_cap, Exec exec) {
  WalkBound out;
  out.energy = energy;
  out.sample_count = samples;
  out.seed = seed;

  bool any_forbidden = false;
  for (int v = 0; v < g.n; ++v)
    if (w.values[v] > energy) any_forbidden = true;

  if (!any_forbidden) {
    out.vacuous = true;
    out.delta = 0.0;
    out.exact.assign(g.n, 1.0);  // tau = 0 everywhere
    if (samples > 0) {
      out.mc.estimate.assign(g.n, 1.0);
      out.mc.std_error.assign(g.n, 0.0);
    }
    return out;
  }

  out.delta = compute_delta(g, w, energy);
  out.exact = exact_moment(g, w, energy, out.delta);
  if (samples > 0) out.mc = mc_moment(g, w, energy, out.delta, samples, seed, step_cap, exec);
  return out;
}

BoundReport verify_walk_bound(const Graph& g, const Potential& w, const EigenPair& pair,
                              const WalkBound& walk, const AgmonField& field, double tol_factor) {
  if (walk.energy != pair.eigenvalue)
    fail(errc::energy_mismatch, "walk bound was computed at E = " + std::to_string(walk.energy) +
                                    " but the eigenpair has E = " +
                                    std::to_string(pair.eigenvalue));
  if (field.energy != pair.eigenvalue)
    fail(errc::energy_mismatch, "distance field was computed at E = " +
                                    std::to_string(field.energy) + " but the eigenpair has E = " +
                                    std::to_string(pair.eigenvalue));

  double max_abs = 0.0;
  for (double x : pair.vector) max_abs = std::max(max_abs, std::abs(x));
  std::vector<double> bound(g.n);
  for (int v = 0; v < g.n; ++v) bound[v] = walk.exact[v] * max_abs;

  BoundReport rep = detail::assemble_report(g, w, pair, field, bound, tol_factor);
  rep.vacuous = walk.vacuous;
  rep.tighter_than_theorem.assign(g.n, 0);
  for (int v = 0; v < g.n; ++v)
    if (walk.exact[v] < std::exp(-field.rho[v])) rep.tighter_than_theorem[v] = 1;
  return rep;
}

}  // namespace agmon

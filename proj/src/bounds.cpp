#include "agmon/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "agmon/errors.hpp"

namespace agmon {

namespace {

void check_energy(const EigenPair& pair, const AgmonField& field) {
  if (field.energy != pair.eigenvalue)
    fail(errc::energy_mismatch, "distance field was computed at E = " +
                                    std::to_string(field.energy) + " but the eigenpair has E = " +
                                    std::to_string(pair.eigenvalue));
}

}  // namespace

namespace detail {

BoundReport assemble_report(const Graph& g, const Potential& w, const EigenPair& pair,
                            const AgmonField& field, const std::vector<double>& bound,
                            double tol_factor) {
  const int n = g.n;
  BoundReport rep;
  rep.energy = pair.eigenvalue;
  rep.argmax_vertex = 0;
  for (int v = 1; v < n; ++v)
    if (std::abs(pair.vector[v]) > std::abs(pair.vector[rep.argmax_vertex])) rep.argmax_vertex = v;
  rep.max_abs_phi = std::abs(pair.vector[rep.argmax_vertex]);
  rep.argmax_allowed = w.values[rep.argmax_vertex] <= pair.eigenvalue;
  rep.tol = tol_factor * rep.max_abs_phi;

  rep.rows.resize(n);
  rep.min_slack_vertex = 0;
  for (int v = 0; v < n; ++v) {
    BoundRow& row = rep.rows[v];
    row.v = v;
    row.abs_phi = std::abs(pair.vector[v]);
    row.rho = field.rho[v];
    row.bound = bound[v];
    row.slack = row.bound - row.abs_phi;
    if (row.slack < rep.rows[rep.min_slack_vertex].slack) rep.min_slack_vertex = v;
  }
  rep.min_slack = rep.rows[rep.min_slack_vertex].slack;
  rep.ok = rep.min_slack >= -rep.tol;
  return rep;
}

}  // namespace detail

BoundReport verify_theorem(const Graph& g, const Potential& w, const EigenPair& pair,
                           const AgmonField& field, double tol_factor) {
  check_energy(pair, field);
  double max_abs = 0.0;
  for (double x : pair.vector) max_abs = std::max(max_abs, std::abs(x));
  std::vector<double> bound(g.n);
  for (int v = 0; v < g.n; ++v) bound[v] = std::exp(-field.rho[v]) * max_abs;
  return detail::assemble_report(g, w, pair, field, bound, tol_factor);
}

BoundReport verify_refined(const Graph& g, const Potential& w, const EigenPair& pair,
                           const AgmonField& field, double tol_factor) {
  check_energy(pair, field);
  require_allowed(field);
  double max_abs = 0.0;
  for (double x : pair.vector) max_abs = std::max(max_abs, std::abs(x));

  std::vector<double> refined(g.n, 0.0);
  for (int t = 0; t < g.n; ++t) {
    if (w.values[t] > pair.eigenvalue) continue;
    const std::vector<double> dist = agmon_distance_to(g, w, pair.eigenvalue, t);
    const double amp = std::abs(pair.vector[t]);
    for (int v = 0; v < g.n; ++v) refined[v] = std::max(refined[v], std::exp(-dist[v]) * amp);
  }

  BoundReport rep = detail::assemble_report(g, w, pair, field, refined, tol_factor);
  rep.refined_below_theorem = true;
  for (int v = 0; v < g.n; ++v) {
    const double theorem = std::exp(-field.rho[v]) * max_abs;
    if (refined[v] > theorem + 1e-12 * (1.0 + theorem)) rep.refined_below_theorem = false;
  }
  return rep;
}

GreedyPath greedy_path(const Graph& g, const Potential& w, const EigenPair& pair, int start) {
  if (start < 0 || start >= g.n)
    fail(errc::bad_argument, "start vertex " + std::to_string(start) + " out of range");
  const double energy = pair.eigenvalue;
  if (w.values[start] <= energy)
    fail(errc::start_not_forbidden, "vertex " + std::to_string(start) +
                                        " lies in the allowed region (W = " +
                                        std::to_string(w.values[start]) + " <= E)");
  if (pair.vector[start] == 0.0)
    fail(errc::zero_amplitude_start,
         "phi vanishes at vertex " + std::to_string(start) + "; the bound is trivial there");

  GreedyPath path;
  int cur = start;
  path.vertices.push_back(cur);
  path.abs_phi.push_back(std::abs(pair.vector[cur]));
  double factor = 1.0;
  while (w.values[cur] > energy) {
    int best = -1;
    double best_amp = -1.0;
    for (int idx = g.offsets[cur]; idx < g.offsets[cur + 1]; ++idx) {
      const int nb = g.neighbors[idx];
      const double amp = std::abs(pair.vector[nb]);
      if (amp > best_amp) {  // strict >, so ties resolve to the lowest index
        best_amp = amp;
        best = nb;
      }
    }
    if (best_amp <= std::abs(pair.vector[cur]))
      fail(errc::bad_argument, "|phi| fails to increase at forbidden vertex " +
                                   std::to_string(cur) + "; the input is not an eigenpair at E = " +
                                   std::to_string(energy));
    factor /= 1.0 + (w.values[cur] - energy) / g.degree[cur];
    cur = best;
    path.vertices.push_back(cur);
    path.abs_phi.push_back(best_amp);
    if (static_cast<int>(path.vertices.size()) > g.n)
      fail(errc::bad_argument, "greedy path revisited a vertex; input is not an eigenpair");
  }
  path.collected_bound = factor * path.abs_phi.back();
  return path;
}

}  // namespace agmon

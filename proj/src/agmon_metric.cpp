#include "agmon/agmon_metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <utility>

#include "agmon/errors.hpp"

namespace agmon {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using HeapEntry = std::pair<double, int>;  // (distance, vertex), min-heap
using Heap = std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<HeapEntry>>;

double positive_part(double x) { return x > 0.0 ? x : 0.0; }

// Shared Dijkstra core over per-arrival costs: relaxing edge (u,w) proposes
// dist(w) = dist(u) + arrival_cost(u, w).  Lazy deletion on the heap.
template <class ArrivalCost>
void dijkstra(const Graph& g, const std::vector<int>& sources, std::vector<double>& dist,
              std::vector<int>& pred, ArrivalCost arrival_cost) {
  dist.assign(g.n, kInf);
  pred.assign(g.n, -1);
  Heap heap;
  for (int s : sources) {
    dist[s] = 0.0;
    heap.push({0.0, s});
  }
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (int idx = g.offsets[u]; idx < g.offsets[u + 1]; ++idx) {
      const int w = g.neighbors[idx];
      const double nd = d + arrival_cost(u, w);
      if (nd < dist[w]) {
        dist[w] = nd;
        pred[w] = u;
        heap.push({nd, w});
      }
    }
  }
}

std::vector<int> allowed_vertices(const Potential& w, double energy) {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(w.values.size()); ++v)
    if (w.values[v] <= energy) out.push_back(v);
  return out;
}

}  // namespace

double node_cost(const Graph& g, const Potential& w, double energy, int v) {
  if (v < 0 || v >= g.n) fail(errc::bad_argument, "vertex " + std::to_string(v) + " out of range");
  return std::log1p(positive_part(w.values[v] - energy) / g.degree[v]);
}

AgmonField agmon_distance(const Graph& g, const Potential& w, double energy) {
  AgmonField field;
  field.energy = energy;
  field.node_cost.resize(g.n);
  for (int v = 0; v < g.n; ++v) field.node_cost[v] = node_cost(g, w, energy, v);

  const std::vector<int> sources = allowed_vertices(w, energy);
  field.allowed_empty = sources.empty();
  if (field.allowed_empty) {
    field.rho.assign(g.n, kInf);
    field.pred.assign(g.n, -1);
    return field;
  }
  dijkstra(g, sources, field.rho, field.pred,
           [&field](int, int arrive) { return field.node_cost[arrive]; });
  return field;
}

std::vector<double> agmon_distance_to(const Graph& g, const Potential& w, double energy,
                                      int target) {
  if (target < 0 || target >= g.n)
    fail(errc::bad_argument, "target vertex " + std::to_string(target) + " out of range");
  if (w.values[target] > energy)
    fail(errc::target_not_allowed, "vertex " + std::to_string(target) + " has W = " +
                                       std::to_string(w.values[target]) + " > E = " +
                                       std::to_string(energy));
  std::vector<double> cost(g.n);
  for (int v = 0; v < g.n; ++v) cost[v] = node_cost(g, w, energy, v);
  std::vector<double> dist;
  std::vector<int> pred;
  dijkstra(g, {target}, dist, pred, [&cost](int, int arrive) { return cost[arrive]; });
  return dist;
}

std::vector<double> fmt_distance(const Graph& g, const Potential& w, double energy) {
  const std::vector<int> sources = allowed_vertices(w, energy);
  if (sources.empty()) return std::vector<double>(g.n, kInf);
  std::vector<double> excess(g.n);
  for (int v = 0; v < g.n; ++v) excess[v] = positive_part(w.values[v] - energy);
  std::vector<double> dist;
  std::vector<int> pred;
  dijkstra(g, sources, dist, pred, [&excess](int u, int v) {
    return std::log1p(std::pow(excess[u] * excess[v], 0.25));
  });
  return dist;
}

std::vector<int> witness_path(const AgmonField& field, int v) {
  const int n = static_cast<int>(field.rho.size());
  if (v < 0 || v >= n) fail(errc::bad_argument, "vertex " + std::to_string(v) + " out of range");
  if (std::isinf(field.rho[v])) return {};
  std::vector<int> path{v};
  int cur = v;
  while (field.pred[cur] != -1) {
    cur = field.pred[cur];
    path.push_back(cur);
    if (static_cast<int>(path.size()) > n)
      fail(errc::bad_argument, "predecessor map contains a cycle");  // defensive; cannot happen
  }
  return path;
}

void require_allowed(const AgmonField& field) {
  if (field.allowed_empty)
    fail(errc::empty_allowed_region,
         "no vertex satisfies W(v) <= E at E = " + std::to_string(field.energy));
}

}  // namespace agmon

#include "agmon/graph.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "agmon/errors.hpp"

namespace agmon {

namespace {

std::string vtx(int v) { return "vertex " + std::to_string(v); }

std::string edge(int u, int v) {
  return "edge (" + std::to_string(u) + ", " + std::to_string(v) + ")";
}

}  // namespace

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n <= 0) fail(errc::bad_argument, "vertex count must be positive, got " + std::to_string(n));
  Graph g;
  g.n = n;
  g.adj.assign(n, {});
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      fail(errc::bad_argument, edge(u, v) + " out of range for n=" + std::to_string(n));
    g.adj[u].push_back(v);
    g.adj[v].push_back(u);
  }
  for (auto& nb : g.adj) std::sort(nb.begin(), nb.end());
  validate(g);
  finalize(g);
  return g;
}

std::vector<std::pair<int, int>> Graph::edge_list() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(neighbors.size() / 2);
  for (int u = 0; u < n; ++u)
    for (int v : adj[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

void validate(const Graph& g) {
  if (g.n <= 0) fail(errc::bad_argument, "vertex count must be positive, got " + std::to_string(g.n));
  if (g.n == 1) fail(errc::isolated_vertex, "single-vertex graph has no edges; " + vtx(0) + " is isolated");
  if (static_cast<int>(g.adj.size()) != g.n)
    fail(errc::bad_argument, "adjacency has " + std::to_string(g.adj.size()) + " lists for n=" + std::to_string(g.n));

  for (int u = 0; u < g.n; ++u) {
    const auto& nb = g.adj[u];
    if (nb.empty()) fail(errc::isolated_vertex, vtx(u) + " has no neighbors");
    for (std::size_t i = 0; i < nb.size(); ++i) {
      int v = nb[i];
      if (v < 0 || v >= g.n)
        fail(errc::bad_argument, vtx(u) + " lists out-of-range neighbor " + std::to_string(v));
      if (v == u) fail(errc::self_loop, vtx(u) + " lists itself as a neighbor");
      if (i > 0 && nb[i - 1] == v) fail(errc::duplicate_edge, edge(u, v) + " listed more than once");
      if (i > 0 && nb[i - 1] > v)
        fail(errc::bad_argument, vtx(u) + " neighbor list is not sorted");
    }
  }
  for (int u = 0; u < g.n; ++u)
    for (int v : g.adj[u])
      if (!std::binary_search(g.adj[v].begin(), g.adj[v].end(), u))
        fail(errc::asymmetric_adjacency, edge(u, v) + " present at " + vtx(u) + " but not mirrored at " + vtx(v));

  // BFS from 0.
  std::vector<char> seen(g.n, 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (int v : g.adj[queue[head]])
      if (!seen[v]) {
        seen[v] = 1;
        queue.push_back(v);
      }
  for (int v = 0; v < g.n; ++v)
    if (!seen[v]) fail(errc::disconnected, vtx(v) + " is not reachable from vertex 0");
}

void finalize(Graph& g) {
  g.degree.resize(g.n);
  g.offsets.assign(g.n + 1, 0);
  g.neighbors.clear();
  for (int u = 0; u < g.n; ++u) {
    g.degree[u] = static_cast<int>(g.adj[u].size());
    g.offsets[u + 1] = g.offsets[u] + g.degree[u];
    g.neighbors.insert(g.neighbors.end(), g.adj[u].begin(), g.adj[u].end());
  }
}

void validate_potential(const Graph& g, const Potential& w) {
  if (static_cast<int>(w.values.size()) != g.n)
    fail(errc::size_mismatch, "potential has " + std::to_string(w.values.size()) +
                                  " entries for a graph on " + std::to_string(g.n) + " vertices");
  for (int v = 0; v < g.n; ++v)
    if (!std::isfinite(w.values[v]))
      fail(errc::bad_argument, "potential at " + vtx(v) + " is not finite");
}

Graph gen_path(int n) {
  if (n < 2) fail(errc::size_too_small, "path needs n >= 2, got " + std::to_string(n));
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph::from_edges(n, edges);
}

Graph gen_cycle(int n) {
  if (n < 3) fail(errc::size_too_small, "cycle needs n >= 3, got " + std::to_string(n));
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  edges.emplace_back(0, n - 1);
  return Graph::from_edges(n, edges);
}

Graph gen_grid(int rows, int cols) {
  if (rows < 1 || cols < 1 || static_cast<long long>(rows) * cols < 2)
    fail(errc::size_too_small, "grid needs rows*cols >= 2, got " + std::to_string(rows) + "x" + std::to_string(cols));
  auto id = [cols](int r, int c) { return r * cols + c; };
  std::vector<std::pair<int, int>> edges;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
    }
  return Graph::from_edges(rows * cols, edges);
}

TreeHub gen_tree_hub(int q, int k) {
  if (q < 2) fail(errc::size_too_small, "tree-hub needs q >= 2, got q=" + std::to_string(q));
  if (k < 1) fail(errc::size_too_small, "tree-hub needs k >= 1, got k=" + std::to_string(k));

  // Levels 0..k of a full q-ary tree, laid out level by level; the hub goes
  // last.  Level i starts at (q^i - 1)/(q - 1) and holds q^i vertices.
  std::vector<long long> level_start(k + 2, 0);
  long long pw = 1;
  for (int i = 0; i <= k; ++i) {
    level_start[i + 1] = level_start[i] + pw;
    pw *= q;
  }
  long long tree_n = level_start[k + 1];
  if (tree_n + 1 > 2'000'000)
    fail(errc::bad_argument, "tree-hub with q=" + std::to_string(q) + ", k=" + std::to_string(k) + " is too large");
  int n = static_cast<int>(tree_n) + 1;
  int hub = n - 1;

  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < k; ++i) {
    long long parents = level_start[i + 1] - level_start[i];
    for (long long p = 0; p < parents; ++p) {
      int parent = static_cast<int>(level_start[i] + p);
      for (int c = 0; c < q; ++c)
        edges.emplace_back(parent, static_cast<int>(level_start[i + 1] + p * q + c));
    }
  }
  for (long long leaf = level_start[k]; leaf < level_start[k + 1]; ++leaf)
    edges.emplace_back(static_cast<int>(leaf), hub);

  TreeHub t;
  t.graph = Graph::from_edges(n, edges);
  t.hub = hub;
  t.q = q;
  t.k = k;
  t.level_of.assign(n, k + 1);
  for (int i = 0; i <= k; ++i)
    for (long long v = level_start[i]; v < level_start[i + 1]; ++v)
      t.level_of[static_cast<int>(v)] = i;
  return t;
}

Graph gen_random_connected(int n, double edge_prob, std::uint64_t seed, int max_retries) {
  if (n < 2) fail(errc::size_too_small, "random graph needs n >= 2, got " + std::to_string(n));
  if (!(edge_prob > 0.0) || edge_prob > 1.0)
    fail(errc::bad_argument, "edge probability must lie in (0, 1], got " + std::to_string(edge_prob));

  std::mt19937_64 engine(seed);
  auto draw_unit = [&engine] {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;  // [0, 1)
  };

  for (int attempt = 0; attempt < max_retries; ++attempt) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (draw_unit() < edge_prob) edges.emplace_back(i, j);
    if (static_cast<int>(edges.size()) < n - 1) continue;

    // Connectivity check before committing to full validation.
    std::vector<std::vector<int>> adj(n);
    for (auto& [u, v] : edges) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    std::vector<char> seen(n, 0);
    std::vector<int> queue{0};
    seen[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (int v : adj[queue[head]])
        if (!seen[v]) {
          seen[v] = 1;
          queue.push_back(v);
        }
    if (std::count(seen.begin(), seen.end(), char(1)) != n) continue;
    return Graph::from_edges(n, edges);
  }
  fail(errc::retries_exhausted,
       "no connected sample in " + std::to_string(max_retries) + " attempts (n=" + std::to_string(n) +
           ", p=" + std::to_string(edge_prob) + ", seed=" + std::to_string(seed) + ")");
}

}  // namespace agmon

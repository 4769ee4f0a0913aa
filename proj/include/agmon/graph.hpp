#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace agmon {

// Finite simple connected graph on vertices 0..n-1.  Neighbor lists are
// sorted; offsets/neighbors hold the same adjacency flattened (CSR layout)
// for the hot loops.  Instances produced by from_edges() or the generators
// are validated; validate() can be run on hand-assembled instances.
struct Graph {
  int n = 0;
  std::vector<std::vector<int>> adj;
  std::vector<int> degree;
  std::vector<int> offsets;    // size n+1
  std::vector<int> neighbors;  // size 2m

  // Builds from an undirected edge list (self-contained validation).
  static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

  // Edge list with u < v, lexicographically sorted (one entry per edge).
  std::vector<std::pair<int, int>> edge_list() const;

  int edge_count() const { return static_cast<int>(neighbors.size()) / 2; }
};

// Checks the structural invariants: n >= 2, sorted in-range neighbor lists,
// no self-loops, no duplicate edges, symmetric adjacency, every degree >= 1,
// connected.  Throws agmon::error naming the offending vertex or edge.
void validate(const Graph& g);

// Rebuilds degree and CSR arrays from adj (after validate()).
void finalize(Graph& g);

// On-site potential W: one real (any finite value) per vertex.
struct Potential {
  std::vector<double> values;
};

// Size agreement and finiteness.
void validate_potential(const Graph& g, const Potential& w);

// --- generators ---------------------------------------------------------

Graph gen_path(int n);            // P_n, n >= 2
Graph gen_cycle(int n);           // C_n, n >= 3
Graph gen_grid(int rows, int cols);  // rows x cols lattice, rows*cols >= 2

// Full q-ary tree of depth k (root at index 0, levels laid out in order)
// plus one extra vertex adjacent to every depth-k leaf.  hub is that extra
// vertex's index; level_of[v] is the tree depth of v (level_of[hub] = k+1).
struct TreeHub {
  Graph graph;
  int hub = -1;
  int q = 0;
  int k = 0;
  std::vector<int> level_of;
};

TreeHub gen_tree_hub(int q, int k);  // q >= 2, k >= 1

// Erdos-Renyi G(n, p) conditioned on connectivity.  Each unordered pair
// (i < j), scanned in lexicographic order, is included when the next draw
// from a seeded mt19937_64 falls below p (draws mapped to [0,1) from the top
// 53 bits, so the construction is reproducible from the documented engine
// alone).  Disconnected samples are re-drawn from the same stream; after
// max_retries failures the call gives up.
Graph gen_random_connected(int n, double edge_prob, std::uint64_t seed,
                           int max_retries = 1000);

}  // namespace agmon

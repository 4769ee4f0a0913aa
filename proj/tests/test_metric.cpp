#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "agmon/agmon_metric.hpp"
#include "agmon/eigensolve.hpp"
#include "agmon/errors.hpp"
#include "agmon/graph.hpp"
#include "agmon/hamiltonian.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace agmon;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// log(5.5) = log(1 + (10-1)/2): the P3 middle-vertex node cost at E = 1.
constexpr double kLog55 = 1.7047480922384253;

Potential p3_potential() {
  Potential w;
  w.values = {0.0, 10.0, 0.0};
  return w;
}

// Energies probing each instance: potential quartiles, the ground energy,
// and a value above max W (everything allowed).
std::vector<double> probe_energies(const corpus::Instance& inst) {
  std::vector<double> ws = inst.potential.values;
  std::sort(ws.begin(), ws.end());
  const int n = static_cast<int>(ws.size());
  const Hamiltonian h = assemble(inst.graph, inst.potential);
  const double lambda1 = eig_all(h)[0].eigenvalue;
  return {ws[n / 4], ws[n / 2], ws[(3 * n) / 4], lambda1, ws[n - 1] + 1.0};
}

}  // namespace

TEST_CASE("P3 frozen values at E = 1") {
  const Graph g = gen_path(3);
  const Potential w = p3_potential();
  CHECK(node_cost(g, w, 1.0, 0) == 0.0);
  CHECK(std::abs(node_cost(g, w, 1.0, 1) - kLog55) < 1e-15);
  const AgmonField f = agmon_distance(g, w, 1.0);
  CHECK(f.energy == 1.0);
  CHECK(!f.allowed_empty);
  CHECK(f.rho[0] == 0.0);
  CHECK(f.rho[2] == 0.0);
  CHECK(std::abs(f.rho[1] - kLog55) < 1e-15);
  CHECK(f.pred[0] == -1);
  CHECK(f.pred[2] == -1);
  const auto path = witness_path(f, 1);
  REQUIRE(path.size() == 2u);
  CHECK(path[0] == 1);
  CHECK((path[1] == 0 || path[1] == 2));
}

TEST_CASE("P3 single-target distance") {
  const Graph g = gen_path(3);
  const Potential w = p3_potential();
  const auto d0 = agmon_distance_to(g, w, 1.0, 0);
  CHECK(d0[0] == 0.0);
  CHECK(std::abs(d0[1] - kLog55) < 1e-15);
  CHECK(std::abs(d0[2] - kLog55) < 1e-15);  // 2 -> 1 -> 0 pays c(1), c(2) = 0
  CHECK_THROWS_AS(agmon_distance_to(g, w, 1.0, 1), error);
  try {
    agmon_distance_to(g, w, 1.0, 1);
  } catch (const error& e) {
    CHECK(e.code() == errc::target_not_allowed);
  }
}

TEST_CASE("FMT distance on P3 vanishes: every edge touches the allowed region") {
  const Graph g = gen_path(3);
  const auto d = fmt_distance(g, p3_potential(), 1.0);
  for (double x : d) CHECK(x == 0.0);
}

TEST_CASE("agmon_distance matches exhaustive enumeration on small corpus graphs") {
  for (const auto* inst : corpus::small()) {
    for (double energy : probe_energies(*inst)) {
      const AgmonField f = agmon_distance(inst->graph, inst->potential, energy);
      for (int v = 0; v < inst->graph.n; ++v) {
        const double want = oracles::node_rho(inst->graph, inst->potential, energy, v);
        CHECK(std::abs(f.rho[v] - want) <= 1e-12);
      }
    }
  }
}

TEST_CASE("fmt_distance matches exhaustive enumeration on small corpus graphs") {
  for (const auto* inst : corpus::small()) {
    for (double energy : probe_energies(*inst)) {
      const auto d = fmt_distance(inst->graph, inst->potential, energy);
      for (int v = 0; v < inst->graph.n; ++v) {
        const double want = oracles::edge_rho(inst->graph, inst->potential, energy, v);
        CHECK(std::abs(d[v] - want) <= 1e-12);
      }
    }
  }
}

TEST_CASE("single-target distances match enumeration and recover rho") {
  for (const auto* inst : corpus::small()) {
    const Graph& g = inst->graph;
    const Potential& w = inst->potential;
    std::vector<double> ws = w.values;
    std::sort(ws.begin(), ws.end());
    const double energy = ws[g.n / 2];
    const AgmonField f = agmon_distance(g, w, energy);
    std::vector<double> min_over_targets(g.n, kInf);
    for (int t = 0; t < g.n; ++t) {
      if (w.values[t] > energy) continue;
      const auto d = agmon_distance_to(g, w, energy, t);
      for (int v = 0; v < g.n; ++v) {
        CHECK(std::abs(d[v] - oracles::node_rho_to(g, w, energy, t, v)) <= 1e-12);
        min_over_targets[v] = std::min(min_over_targets[v], d[v]);
      }
    }
    for (int v = 0; v < g.n; ++v) CHECK(std::abs(min_over_targets[v] - f.rho[v]) <= 1e-12);
  }
}

TEST_CASE("witness paths reproduce rho exactly") {
  for (const auto* inst : {&corpus::all()[9], &corpus::all()[25], &corpus::all()[40]}) {
    const Graph& g = inst->graph;
    std::vector<double> ws = inst->potential.values;
    std::sort(ws.begin(), ws.end());
    const AgmonField f = agmon_distance(g, inst->potential, ws[g.n / 2]);
    for (int v = 0; v < g.n; ++v) {
      const auto path = witness_path(f, v);
      REQUIRE(!path.empty());
      CHECK(path.front() == v);
      CHECK(inst->potential.values[path.back()] <= f.energy);
      double total = 0.0;
      for (int u : path) total += f.node_cost[u];
      CHECK(std::abs(total - f.rho[v]) <= 1e-12);
    }
  }
}

TEST_CASE("rho is monotone nonincreasing in the energy") {
  for (const auto* inst : {&corpus::all()[12], &corpus::all()[33]}) {
    const AgmonField lo = agmon_distance(inst->graph, inst->potential, 4.0);
    const AgmonField hi = agmon_distance(inst->graph, inst->potential, 9.0);
    for (int v = 0; v < inst->graph.n; ++v) CHECK(hi.rho[v] <= lo.rho[v] + 1e-15);
  }
}

TEST_CASE("Dijkstra relaxation is tight across every edge") {
  const auto& inst = corpus::all()[28];
  const Graph& g = inst.graph;
  const AgmonField f = agmon_distance(g, inst.potential, 7.0);
  for (int u = 0; u < g.n; ++u)
    for (int v : g.adj[u]) CHECK(f.rho[u] <= f.rho[v] + f.node_cost[u] + 1e-12);
}

TEST_CASE("empty allowed region is reported through the field") {
  const Graph g = gen_cycle(5);
  Potential w;
  w.values = {3.0, 4.0, 5.0, 6.0, 7.0};
  const AgmonField f = agmon_distance(g, w, 2.0);
  CHECK(f.allowed_empty);
  for (int v = 0; v < g.n; ++v) {
    CHECK(f.rho[v] == kInf);
    CHECK(f.pred[v] == -1);
    CHECK(witness_path(f, v).empty());
  }
  CHECK_THROWS_AS(require_allowed(f), error);
  try {
    require_allowed(f);
  } catch (const error& e) {
    CHECK(e.code() == errc::empty_allowed_region);
  }
  const auto d = fmt_distance(g, w, 2.0);
  for (double x : d) CHECK(x == kInf);
}

TEST_CASE("all-allowed energy gives identically zero distances") {
  const auto& inst = corpus::all()[5];
  const AgmonField f = agmon_distance(inst.graph, inst.potential, 25.0);
  for (int v = 0; v < inst.graph.n; ++v) {
    CHECK(f.rho[v] == 0.0);
    CHECK(f.node_cost[v] == 0.0);
  }
}

TEST_CASE("boundary vertices with W == E are allowed") {
  const Graph g = gen_path(3);
  Potential w;
  w.values = {5.0, 5.0, 9.0};
  const AgmonField f = agmon_distance(g, w, 5.0);
  CHECK(f.rho[0] == 0.0);
  CHECK(f.rho[1] == 0.0);
  CHECK(f.rho[2] > 0.0);
}

TEST_CASE("node_cost rejects out-of-range vertices") {
  const Graph g = gen_path(3);
  const Potential w = p3_potential();
  CHECK_THROWS_AS(node_cost(g, w, 1.0, 7), error);
  CHECK_THROWS_AS(node_cost(g, w, 1.0, -1), error);
}

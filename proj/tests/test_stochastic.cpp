#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "agmon/agmon_metric.hpp"
#include "agmon/bounds.hpp"
#include "agmon/eigensolve.hpp"
#include "agmon/errors.hpp"
#include "agmon/graph.hpp"
#include "agmon/hamiltonian.hpp"
#include "agmon/stochastic.hpp"
#include "support/corpus.hpp"

using namespace agmon;

namespace {

Potential p3_potential() {
  Potential w;
  w.values = {0.0, 10.0, 0.0};
  return w;
}

errc thrown_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const error& e) {
    return e.code();
  }
  FAIL("expected an agmon::error");
  return errc::bad_argument;
}

}  // namespace

TEST_CASE("P3 frozen values: delta = 9/2 and middle moment 2/11") {
  const Graph g = gen_path(3);
  const Potential w = p3_potential();
  CHECK(compute_delta(g, w, 1.0) == 4.5);
  const auto f = exact_moment(g, w, 1.0, 4.5);
  CHECK(f[0] == 1.0);
  CHECK(f[2] == 1.0);
  CHECK(std::abs(f[1] - 2.0 / 11.0) < 1e-15);
}

TEST_CASE("K{1,3} with forbidden center: moment 1/4") {
  // star center 0 with W = 9 at E = 0: delta = 3, every walk arrives in one
  // step, so E[(1+delta)^{-tau}] = 1/4 exactly.
  const Graph g = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  Potential w;
  w.values = {9.0, 0.0, 0.0, 0.0};
  CHECK(compute_delta(g, w, 0.0) == 3.0);
  const auto f = exact_moment(g, w, 0.0, 3.0);
  CHECK(std::abs(f[0] - 0.25) < 1e-15);
}

TEST_CASE("exact moments live in (0, 1], below 1/(1+delta) on the forbidden region") {
  for (const auto* inst : {&corpus::all()[4], &corpus::all()[19], &corpus::all()[39]}) {
    const Graph& g = inst->graph;
    const Hamiltonian h = assemble(g, inst->potential);
    const double energy = eig_smallest(h, 1)[0].eigenvalue;
    const double delta = compute_delta(g, inst->potential, energy);
    CHECK(delta > 0.0);
    const auto f = exact_moment(g, inst->potential, energy, delta);
    for (int v = 0; v < g.n; ++v) {
      CHECK(f[v] > 0.0);
      if (inst->potential.values[v] <= energy)
        CHECK(f[v] == 1.0);
      else
        CHECK(f[v] <= 1.0 / (1.0 + delta) + 1e-15);
    }
  }
}

TEST_CASE("Monte Carlo matches the exact moment within its error bars") {
  const auto& inst = corpus::all()[17];
  const Graph& g = inst.graph;
  const Hamiltonian h = assemble(g, inst.potential);
  const double energy = eig_smallest(h, 1)[0].eigenvalue;
  const double delta = compute_delta(g, inst.potential, energy);
  const auto exact = exact_moment(g, inst.potential, energy, delta);
  const McMoment mc = mc_moment(g, inst.potential, energy, delta, 20000, 7);
  for (int v = 0; v < g.n; ++v) {
    CHECK(std::abs(mc.estimate[v] - exact[v]) <= 4.0 * mc.std_error[v] + 1e-12);
    if (inst.potential.values[v] <= energy) {
      CHECK(mc.estimate[v] == 1.0);
      CHECK(mc.std_error[v] == 0.0);
    }
  }
}

TEST_CASE("Monte Carlo is deterministic for a fixed seed, across thread modes") {
  const Graph g = gen_grid(3, 5);
  const Potential w = corpus::random_potential(g, 901);
  const double energy = 5.0;
  const double delta = compute_delta(g, w, energy);
  const McMoment a = mc_moment(g, w, energy, delta, 4000, 11, kDefaultStepCap, Exec::parallel);
  const McMoment b = mc_moment(g, w, energy, delta, 4000, 11, kDefaultStepCap, Exec::parallel);
  const McMoment c = mc_moment(g, w, energy, delta, 4000, 11, kDefaultStepCap, Exec::serial);
  CHECK(a.estimate == b.estimate);
  CHECK(a.std_error == b.std_error);
  CHECK(a.estimate == c.estimate);
  CHECK(a.std_error == c.std_error);
  const McMoment d = mc_moment(g, w, energy, delta, 4000, 12);
  CHECK(a.estimate != d.estimate);
}

TEST_CASE("deterministic one-step vertices have zero Monte Carlo variance") {
  // P3's middle vertex arrives in exactly one step from either neighbor.
  const Graph g = gen_path(3);
  const Potential w = p3_potential();
  const McMoment mc = mc_moment(g, w, 1.0, 4.5, 500, 3);
  CHECK(mc.estimate[1] == doctest::Approx(2.0 / 11.0).epsilon(1e-15));
  CHECK(mc.std_error[1] == 0.0);
}

TEST_CASE("step cap aborts pathologically long walks") {
  const Graph g = gen_path(5);
  Potential w;
  w.values = {0.0, 9.0, 9.0, 9.0, 0.0};
  const double delta = compute_delta(g, w, 0.0);
  // from the center every walk needs at least two steps
  CHECK(thrown_code([&] { mc_moment(g, w, 0.0, delta, 50, 5, 1); }) == errc::step_cap_exceeded);
}

TEST_CASE("compute_delta demands a forbidden region") {
  const Graph g = gen_cycle(4);
  Potential w;
  w.values.assign(4, 0.0);
  CHECK(thrown_code([&] { compute_delta(g, w, 0.0); }) == errc::no_forbidden_region);
}

TEST_CASE("tree-hub delta is attained at the degree-4 interior level") {
  const TreeHub t = gen_tree_hub(3, 2);
  Potential w;
  w.values.assign(t.graph.n, 1e4);
  w.values[t.hub] = 0.0;
  const Hamiltonian h = assemble(t.graph, w);
  const double lambda1 = eig_smallest(h, 1)[0].eigenvalue;
  CHECK(compute_delta(t.graph, w, lambda1) == (1e4 - lambda1) / 4.0);
}

TEST_CASE("vacuous walk bound when nothing is forbidden") {
  const Graph g = gen_cycle(5);
  Potential w;
  w.values.assign(5, 0.0);
  const WalkBound wb = make_walk_bound(g, w, 1.0, 100, 2);
  CHECK(wb.vacuous);
  CHECK(wb.delta == 0.0);
  for (double x : wb.exact) CHECK(x == 1.0);
  for (double x : wb.mc.estimate) CHECK(x == 1.0);
  for (double x : wb.mc.std_error) CHECK(x == 0.0);
}

TEST_CASE("walk bound on the exact P3 pair ties the theorem bound") {
  const Graph g = gen_path(3);
  const Potential w = p3_potential();
  EigenPair pair;
  pair.eigenvalue = 1.0;
  const double r = 1.0 / std::sqrt(2.0);
  pair.vector = {r, 0.0, -r};
  const AgmonField field = agmon_distance(g, w, 1.0);
  const WalkBound wb = make_walk_bound(g, w, 1.0, 0, 1);
  const BoundReport rep = verify_walk_bound(g, w, pair, wb, field);
  CHECK(rep.ok);
  CHECK(!rep.vacuous);
  // exact moment 2/11 equals e^{-rho} = 1/5.5 here, so "tighter" is false
  CHECK(std::abs(rep.rows[1].bound - r * 2.0 / 11.0) < 1e-15);
  CHECK(!static_cast<bool>(rep.tighter_than_theorem[1]));
}

TEST_CASE("walk bound holds for corpus ground states and sometimes tightens") {
  int tighter_seen = 0;
  for (const auto* inst : {&corpus::all()[13], &corpus::all()[27], &corpus::all()[50]}) {
    const Graph& g = inst->graph;
    const Hamiltonian h = assemble(g, inst->potential);
    const EigenPair gs = eig_smallest(h, 1)[0];
    const AgmonField field = agmon_distance(g, inst->potential, gs.eigenvalue);
    const WalkBound wb = make_walk_bound(g, inst->potential, gs.eigenvalue, 0, 1);
    const BoundReport rep = verify_walk_bound(g, inst->potential, gs, wb, field);
    CHECK(rep.ok);
    for (int v = 0; v < g.n; ++v) tighter_seen += rep.tighter_than_theorem[v] ? 1 : 0;
  }
  // delta is a uniform worst-case rate, yet multi-step absorption still
  // beats e^{-rho} somewhere on these instances
  CHECK(tighter_seen > 0);
}

TEST_CASE("verify_walk_bound rejects mismatched energies") {
  const Graph g = gen_path(3);
  const Potential w = p3_potential();
  EigenPair pair;
  pair.eigenvalue = 1.0;
  pair.vector = {1.0, 0.0, -1.0};
  const AgmonField field = agmon_distance(g, w, 1.0);
  const AgmonField field2 = agmon_distance(g, w, 2.0);
  const WalkBound wb1 = make_walk_bound(g, w, 1.0, 0, 1);
  const WalkBound wb2 = make_walk_bound(g, w, 2.0, 0, 1);
  CHECK(thrown_code([&] { verify_walk_bound(g, w, pair, wb2, field); }) == errc::energy_mismatch);
  CHECK(thrown_code([&] { verify_walk_bound(g, w, pair, wb1, field2); }) == errc::energy_mismatch);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "agmon/eigensolve.hpp"
#include "agmon/errors.hpp"
#include "agmon/graph.hpp"
#include "agmon/hamiltonian.hpp"
#include "agmon/prng.hpp"
#include "support/corpus.hpp"

using namespace agmon;

namespace {

Hamiltonian make(const Graph& g, const Potential& w) { return assemble(g, w); }

std::vector<double> sorted_eigenvalues(const std::vector<EigenPair>& pairs) {
  std::vector<double> out;
  for (const auto& p : pairs) out.push_back(p.eigenvalue);
  return out;
}

}  // namespace

TEST_CASE("P2 closed-form eigenvalues") {
  // H = [[1, -1], [-1, 1+W0]] has eigenvalues ((2+W0) -+ sqrt(W0^2+4)) / 2.
  for (double w0 : {0.0, 0.7, 3.0, 17.0}) {
    const Graph g = gen_path(2);
    Potential w;
    w.values = {0.0, w0};
    const auto pairs = eig_all(make(g, w));
    REQUIRE(pairs.size() == 2u);
    const double root = std::sqrt(w0 * w0 + 4.0);
    CHECK(std::abs(pairs[0].eigenvalue - (2.0 + w0 - root) / 2.0) < 1e-12);
    CHECK(std::abs(pairs[1].eigenvalue - (2.0 + w0 + root) / 2.0) < 1e-12);
    // eigenvector relation phi1 = (1 - lambda) phi0 from the first row
    const auto& v = pairs[0].vector;
    CHECK(std::abs(v[1] - (1.0 - pairs[0].eigenvalue) * v[0]) < 1e-12);
  }
}

TEST_CASE("C4 Laplacian spectrum is 0, 2, 2, 4") {
  const Graph g = gen_cycle(4);
  Potential w;
  w.values.assign(4, 0.0);
  const auto pairs = eig_all(make(g, w));
  const std::vector<double> expect = {0.0, 2.0, 2.0, 4.0};
  for (int i = 0; i < 4; ++i) CHECK(std::abs(pairs[i].eigenvalue - expect[i]) < 1e-12);
}

TEST_CASE("path and cycle Laplacian closed forms") {
  {
    const int n = 13;
    const Graph g = gen_path(n);
    Potential w;
    w.values.assign(n, 0.0);
    const auto ev = sorted_eigenvalues(eig_all(make(g, w)));
    for (int j = 0; j < n; ++j)
      CHECK(std::abs(ev[j] - (2.0 - 2.0 * std::cos(std::numbers::pi * j / n))) < 1e-11);
  }
  {
    const int n = 12;
    const Graph g = gen_cycle(n);
    Potential w;
    w.values.assign(n, 0.0);
    const auto ev = sorted_eigenvalues(eig_all(make(g, w)));
    std::vector<double> expect;
    for (int j = 0; j < n; ++j) expect.push_back(2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * j / n));
    std::sort(expect.begin(), expect.end());
    for (int j = 0; j < n; ++j) CHECK(std::abs(ev[j] - expect[j]) < 1e-11);
  }
}

TEST_CASE("quadratic form matches the assembled operator") {
  for (const auto* inst : {&corpus::all()[2], &corpus::all()[6], &corpus::all()[20]}) {
    const Graph& g = inst->graph;
    const Hamiltonian h = make(g, inst->potential);
    SplitMix64 rng = substream(77, g.n, 0);
    std::vector<double> f(g.n), hf(g.n);
    for (int trial = 0; trial < 100; ++trial) {
      for (double& x : f) x = 2.0 * rng.next_unit() - 1.0;
      apply(h, f, hf);
      const double direct = dot(f, hf);
      const double via_parts = quadratic_form(g, inst->potential, f);
      const double scale = std::max(1.0, std::abs(direct));
      CHECK(std::abs(direct - via_parts) <= 1e-10 * scale);
    }
  }
}

TEST_CASE("eigenpairs are orthonormal with certified residuals") {
  const auto& inst = corpus::all()[15];
  const Hamiltonian h = make(inst.graph, inst.potential);
  const auto pairs = eig_all(h);
  const int n = h.size();
  for (int i = 0; i < n; ++i) {
    CHECK(pairs[i].residual <= 1e-10 * h.inf_norm);
    for (int j = i; j < n; ++j) {
      const double d = dot(pairs[i].vector, pairs[j].vector);
      CHECK(std::abs(d - (i == j ? 1.0 : 0.0)) < 1e-10);
    }
    if (i > 0) CHECK(pairs[i].eigenvalue >= pairs[i - 1].eigenvalue);
  }
}

TEST_CASE("sign convention: largest-magnitude entry is positive") {
  const auto& inst = corpus::all()[10];
  for (const auto& p : eig_all(make(inst.graph, inst.potential))) {
    double best = 0.0;
    for (double x : p.vector)
      if (std::abs(x) > std::abs(best)) best = x;
    CHECK(best >= 0.0);
  }
}

TEST_CASE("eig_smallest agrees with eig_all") {
  for (const auto* inst : {&corpus::all()[8], &corpus::all()[30], &corpus::all()[45]}) {
    const Hamiltonian h = make(inst->graph, inst->potential);
    const auto dense = eig_all(h);
    const int count = std::min(6, h.size() - 3);
    const auto sparse = eig_smallest(h, count);
    REQUIRE(sparse.size() == static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
      CHECK(std::abs(sparse[i].eigenvalue - dense[i].eigenvalue) < 1e-8);
      CHECK(sparse[i].residual <= 1e-10 * h.inf_norm);
    }
  }
}

TEST_CASE("eig_smallest resolves degenerate eigenvalues") {
  const Graph g = gen_cycle(4);
  Potential w;
  w.values.assign(4, 0.0);
  const auto pairs = eig_smallest(make(g, w), 3);
  CHECK(std::abs(pairs[0].eigenvalue - 0.0) < 1e-9);
  CHECK(std::abs(pairs[1].eigenvalue - 2.0) < 1e-9);
  CHECK(std::abs(pairs[2].eigenvalue - 2.0) < 1e-9);
  // the two copies of 2 span a genuine 2D eigenspace: vectors orthogonal
  CHECK(std::abs(dot(pairs[1].vector, pairs[2].vector)) < 1e-8);
}

TEST_CASE("eig_smallest on a 200-vertex graph") {
  const Graph g = gen_random_connected(200, 0.04, 314);
  const Potential w = corpus::random_potential(g, 315);
  const Hamiltonian h = assemble(g, w);
  const auto dense = eig_all(h);
  const auto sparse = eig_smallest(h, 4);
  for (int i = 0; i < 4; ++i)
    CHECK(std::abs(sparse[i].eigenvalue - dense[i].eigenvalue) < 1e-8);
}

TEST_CASE("Rayleigh quotient of the hub indicator is exactly q^k") {
  // The hub has degree q^k and W(hub) = 0, so the indicator gives
  // <e, H e> / <e, e> = deg(hub) = q^k with no rounding.
  const TreeHub t = gen_tree_hub(3, 2);
  Potential w;
  w.values.assign(t.graph.n, 1e4);
  w.values[t.hub] = 0.0;
  const Hamiltonian h = assemble(t.graph, w);
  std::vector<double> e(t.graph.n, 0.0);
  e[t.hub] = 1.0;
  CHECK(rayleigh_quotient(h, e) == 9.0);
}

TEST_CASE("solver guard rails") {
  const auto& inst = corpus::all()[3];
  const Hamiltonian h = make(inst.graph, inst.potential);
  EigOptions tiny;
  tiny.dense_cap = 4;
  CHECK_THROWS_AS(eig_all(h, tiny), error);
  try {
    eig_all(h, tiny);
  } catch (const error& e) {
    CHECK(e.code() == errc::size_cap_exceeded);
  }
  CHECK_THROWS_AS(eig_smallest(h, 0), error);
  CHECK_THROWS_AS(eig_smallest(h, h.size() + 1), error);
  std::vector<double> zero(h.size(), 0.0);
  CHECK_THROWS_AS(rayleigh_quotient(h, zero), error);
}

#include "agmon/hamiltonian.hpp"

#include <cmath>
#include <string>

#include "agmon/errors.hpp"

namespace agmon {

Hamiltonian assemble(const Graph& g, const Potential& w) {
  if (static_cast<int>(w.values.size()) != g.n)
    fail(errc::size_mismatch, "potential has " + std::to_string(w.values.size()) +
                                  " entries for a graph on " + std::to_string(g.n) + " vertices");
  validate_potential(g, w);
  Hamiltonian h;
  h.graph = &g;
  h.potential = &w;
  h.diag.resize(g.n);
  for (int u = 0; u < g.n; ++u) {
    h.diag[u] = g.degree[u] + w.values[u];
    h.inf_norm = std::max(h.inf_norm, std::abs(h.diag[u]) + g.degree[u]);
  }
  return h;
}

void apply(const Hamiltonian& h, std::span<const double> x, std::span<double> y, Exec exec) {
  const Graph& g = *h.graph;
  if (static_cast<int>(x.size()) != g.n || static_cast<int>(y.size()) != g.n)
    fail(errc::size_mismatch, "apply: vector length does not match n=" + std::to_string(g.n));
  const int n = g.n;
  const int* off = g.offsets.data();
  const int* nbr = g.neighbors.data();
  const double* d = h.diag.data();

#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
#endif
  for (int u = 0; u < n; ++u) {
    double acc = d[u] * x[u];
    for (int t = off[u]; t < off[u + 1]; ++t) acc -= x[nbr[t]];
    y[u] = acc;
  }
  (void)exec;
}

double quadratic_form(const Graph& g, const Potential& w, std::span<const double> f) {
  if (static_cast<int>(f.size()) != g.n)
    fail(errc::size_mismatch, "quadratic_form: vector length does not match n=" + std::to_string(g.n));
  double edge_sum = 0.0;
  for (int u = 0; u < g.n; ++u)
    for (int t = g.offsets[u]; t < g.offsets[u + 1]; ++t) {
      int v = g.neighbors[t];
      if (u < v) {
        double d = f[u] - f[v];
        edge_sum += d * d;
      }
    }
  double pot_sum = 0.0;
  for (int u = 0; u < g.n; ++u) pot_sum += w.values[u] * f[u] * f[u];
  return edge_sum + pot_sum;
}

double rayleigh_quotient(const Hamiltonian& h, std::span<const double> f) {
  double nrm2 = dot(f, f);
  if (nrm2 == 0.0) fail(errc::zero_vector, "Rayleigh quotient of the zero vector");
  return quadratic_form(*h.graph, *h.potential, f) / nrm2;
}

std::vector<double> to_dense(const Hamiltonian& h) {
  const Graph& g = *h.graph;
  std::vector<double> a(static_cast<std::size_t>(g.n) * g.n, 0.0);
  for (int u = 0; u < g.n; ++u) {
    a[static_cast<std::size_t>(u) * g.n + u] = h.diag[u];
    for (int t = g.offsets[u]; t < g.offsets[u + 1]; ++t)
      a[static_cast<std::size_t>(u) * g.n + g.neighbors[t]] = -1.0;
  }
  return a;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace agmon

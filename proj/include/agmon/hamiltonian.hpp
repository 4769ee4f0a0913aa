#pragma once

#include <span>
#include <vector>

#include "agmon/exec.hpp"
#include "agmon/graph.hpp"

namespace agmon {

// H = L + diag(W) with L = D - A the combinatorial Laplacian:
//   (H f)(u) = (deg(u) + W(u)) f(u) - sum_{v ~ u} f(v).
// Kept in operator form (graph CSR + diagonal); to_dense() materializes the
// full matrix for the dense eigensolver.
struct Hamiltonian {
  const Graph* graph = nullptr;
  const Potential* potential = nullptr;
  std::vector<double> diag;  // deg(u) + W(u)
  double inf_norm = 0.0;     // max_u (|diag(u)| + deg(u))

  int size() const { return graph->n; }
};

Hamiltonian assemble(const Graph& g, const Potential& w);

// y = H x.  Row-partitioned, so serial and parallel runs are bit-identical.
void apply(const Hamiltonian& h, std::span<const double> x, std::span<double> y,
           Exec exec = Exec::parallel);

// <f, H f> evaluated through the summation-by-parts identity
//   sum_{(u,v) in E} (f(u) - f(v))^2 + sum_u W(u) f(u)^2,
// i.e. without forming H f.  Tests compare this route against apply().
double quadratic_form(const Graph& g, const Potential& w, std::span<const double> f);

// quadratic_form / <f, f>; rejects the zero vector.
double rayleigh_quotient(const Hamiltonian& h, std::span<const double> f);

std::vector<double> to_dense(const Hamiltonian& h);  // row-major n*n

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

}  // namespace agmon

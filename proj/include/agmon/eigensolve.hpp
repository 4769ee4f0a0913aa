#pragma once

#include <vector>

#include "agmon/exec.hpp"
#include "agmon/hamiltonian.hpp"

namespace agmon {

struct EigenPair {
  double eigenvalue = 0.0;
  std::vector<double> vector;  // unit 2-norm, largest-magnitude entry positive
  double residual = 0.0;       // ||H v - eigenvalue v||_2, certified per pair
};

struct EigOptions {
  // Residual tolerance is tol_factor * ||H||_inf.
  double tol_factor = 1e-10;
  // Dense solves refuse larger problems.
  int dense_cap = 2000;
  Exec exec = Exec::parallel;
};

// Full spectrum by Householder tridiagonalization + implicit-shift QL.
// Ascending eigenvalues, orthonormal vectors, every residual certified
// against the assembled operator.
std::vector<EigenPair> eig_all(const Hamiltonian& h, const EigOptions& opts = {});

// The `count` smallest eigenpairs (counting multiplicity) by Lanczos with
// full reorthogonalization and sequential deflation: each restart locks the
// smallest eigenpair of H restricted to the orthogonal complement of the
// locked set, so repeated eigenvalues are found one copy per restart.
std::vector<EigenPair> eig_smallest(const Hamiltonian& h, int count, const EigOptions& opts = {});

namespace detail {

// Reduces symmetric A (row-major n*n, destroyed) to tridiagonal d/e
// (e[i] couples d[i], d[i+1]) and accumulates the orthogonal Q (row-major).
void householder_tridiagonalize(std::vector<double>& a, int n, std::vector<double>& d,
                                std::vector<double>& e, std::vector<double>& q, Exec exec);

// Implicit-shift QL on (d, e); rotates the columns of v (row-major n*n) so
// its columns become eigenvectors of the original matrix.  Rotations are
// batched per sweep and applied row-partitioned, which keeps serial and
// parallel execution bit-identical.
void tridiag_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>& v, int n,
                Exec exec);

// Flips a vector so its largest-magnitude entry (ties: lowest index) is >= 0.
void fix_sign(std::vector<double>& vec);

}  // namespace detail

}  // namespace agmon

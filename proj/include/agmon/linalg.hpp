#pragma once

// Small dense linear-algebra utilities: row-major LU factorization with
// partial pivoting, used for the absorbing-chain moment system.

#include <vector>

namespace agmon {

struct LuFactors {
  int n = 0;
  std::vector<double> lu;  // packed L (unit diagonal, below) and U (on/above)
  std::vector<int> piv;    // row swap applied at each elimination step
};

// Factors a row-major n x n matrix.  Throws ConvergenceFailure on an exactly
// zero pivot (the callers' matrices are strictly diagonally dominant, so
// this is defensive).
LuFactors lu_factor(std::vector<double> a, int n);

// Solves A x = b for one right-hand side.
std::vector<double> lu_solve(const LuFactors& f, std::vector<double> b);

}  // namespace agmon

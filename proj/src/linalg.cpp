#include "agmon/linalg.hpp"

#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>

#include "agmon/errors.hpp"

namespace agmon {

LuFactors lu_factor(std::vector<double> a, int n) {
  LuFactors f;
  f.n = n;
  f.piv.resize(n);
  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = std::abs(a[static_cast<std::size_t>(k) * n + k]);
    for (int r = k + 1; r < n; ++r) {
      const double mag = std::abs(a[static_cast<std::size_t>(r) * n + k]);
      if (mag > best) {
        best = mag;
        p = r;
      }
    }
    if (best == 0.0)
      fail(errc::convergence_failure, "singular matrix at elimination step " + std::to_string(k));
    f.piv[k] = p;
    if (p != k)
      for (int c = 0; c < n; ++c)
        std::swap(a[static_cast<std::size_t>(k) * n + c], a[static_cast<std::size_t>(p) * n + c]);
    const double pivot = a[static_cast<std::size_t>(k) * n + k];
    for (int r = k + 1; r < n; ++r) {
      double& l = a[static_cast<std::size_t>(r) * n + k];
      l /= pivot;
      const double lr = l;
      for (int c = k + 1; c < n; ++c)
        a[static_cast<std::size_t>(r) * n + c] -= lr * a[static_cast<std::size_t>(k) * n + c];
    }
  }
  f.lu = std::move(a);
  return f;
}

std::vector<double> lu_solve(const LuFactors& f, std::vector<double> b) {
  const int n = f.n;
  for (int k = 0; k < n; ++k) {
    if (f.piv[k] != k) std::swap(b[k], b[f.piv[k]]);
    for (int r = k + 1; r < n; ++r) b[r] -= f.lu[static_cast<std::size_t>(r) * n + k] * b[k];
  }
  for (int r = n - 1; r >= 0; --r) {
    double acc = b[r];
    for (int c = r + 1; c < n; ++c) acc -= f.lu[static_cast<std::size_t>(r) * n + c] * b[c];
    b[r] = acc / f.lu[static_cast<std::size_t>(r) * n + r];
  }
  return b;
}

}  // namespace agmon

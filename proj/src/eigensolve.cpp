#include "agmon/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "agmon/errors.hpp"
#include "agmon/prng.hpp"

namespace agmon {

namespace detail {

void householder_tridiagonalize(std::vector<double>& a, int n, std::vector<double>& d,
                                std::vector<double>& e, std::vector<double>& q, Exec exec) {
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  std::vector<std::vector<double>> reflectors(n > 2 ? n - 2 : 0);

  // Step i zeroes column i below the subdiagonal with a Householder
  // reflector P = I - 2 v v^T acting on rows/columns i+1..n-1.  The
  // symmetric update is B <- B - 2 v w^T - 2 w v^T with p = B v and
  // w = p - (v^T p) v.
  for (int i = 0; i + 2 < n; ++i) {
    const int lo = i + 1;
    const int len = n - lo;
    double scale = 0.0;
    for (int r = lo; r < n; ++r) scale += std::abs(a[static_cast<std::size_t>(r) * n + i]);
    if (scale == 0.0) {
      e[i] = 0.0;
      continue;
    }
    std::vector<double> v(len);
    double ss = 0.0;
    for (int r = 0; r < len; ++r) {
      v[r] = a[static_cast<std::size_t>(lo + r) * n + i] / scale;
      ss += v[r] * v[r];
    }
    const double xnorm = std::sqrt(ss);
    const double alpha = (v[0] >= 0.0) ? -xnorm : xnorm;  // avoids cancellation below
    e[i] = alpha * scale;
    v[0] -= alpha;
    double vn = 0.0;
    for (double t : v) vn += t * t;
    vn = std::sqrt(vn);
    if (vn == 0.0) continue;
    for (double& t : v) t /= vn;

    std::vector<double> p(len), w(len);
    double* base = a.data() + static_cast<std::size_t>(lo) * n + lo;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (exec == Exec::parallel && len >= 128)
#endif
    for (int r = 0; r < len; ++r) {
      const double* row = base + static_cast<std::size_t>(r) * n;
      double acc = 0.0;
      for (int c = 0; c < len; ++c) acc += row[c] * v[c];
      p[r] = acc;
    }
    double beta = 0.0;
    for (int r = 0; r < len; ++r) beta += v[r] * p[r];
    for (int r = 0; r < len; ++r) w[r] = p[r] - beta * v[r];
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (exec == Exec::parallel && len >= 128)
#endif
    for (int r = 0; r < len; ++r) {
      double* row = base + static_cast<std::size_t>(r) * n;
      const double vr2 = 2.0 * v[r];
      const double wr2 = 2.0 * w[r];
      for (int c = 0; c < len; ++c) row[c] -= vr2 * w[c] + wr2 * v[c];
    }
    reflectors[i] = std::move(v);
  }

  if (n >= 2) e[n - 2] = a[static_cast<std::size_t>(n - 1) * n + (n - 2)];
  for (int i = 0; i < n; ++i) d[i] = a[static_cast<std::size_t>(i) * n + i];

  // Back-accumulate Q = P_0 P_1 ... P_{n-3}.
  q.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) q[static_cast<std::size_t>(i) * n + i] = 1.0;
  for (int i = n - 3; i >= 0; --i) {
    if (reflectors[i].empty()) continue;
    const auto& v = reflectors[i];
    const int lo = i + 1;
    const int len = n - lo;
    std::vector<double> t(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (exec == Exec::parallel && n >= 128)
#endif
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int r = 0; r < len; ++r) acc += v[r] * q[static_cast<std::size_t>(lo + r) * n + j];
      t[j] = acc;
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (exec == Exec::parallel && len >= 128)
#endif
    for (int r = 0; r < len; ++r) {
      double* row = q.data() + static_cast<std::size_t>(lo + r) * n;
      const double vr2 = 2.0 * v[r];
      for (int j = 0; j < n; ++j) row[j] -= vr2 * t[j];
    }
  }
  (void)exec;
}

void tridiag_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>& v, int n,
                Exec exec) {
  if (n <= 1) return;
  e.resize(n);
  e[n - 1] = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();

  struct Rotation {
    double s, c;
    int col;
  };
  std::vector<Rotation> sweep;

  auto apply_sweep = [&](Exec mode) {
    if (sweep.empty()) return;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (mode == Exec::parallel && n >= 64)
#endif
    for (int k = 0; k < n; ++k) {
      double* row = v.data() + static_cast<std::size_t>(k) * n;
      for (const Rotation& rot : sweep) {
        const double f = row[rot.col + 1];
        row[rot.col + 1] = rot.s * row[rot.col] + rot.c * f;
        row[rot.col] = rot.c * row[rot.col] - rot.s * f;
      }
    }
    (void)mode;
  };

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    while (true) {
      int m = l;
      while (m < n - 1) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
        ++m;
      }
      if (m == l) break;
      if (++iter > 50)
        fail(errc::convergence_failure,
             "QL iteration did not converge for eigenvalue index " + std::to_string(l));

      // Wilkinson-style shift from the leading 2x2, then one implicit QL
      // sweep of Givens rotations chasing the bulge from m-1 down to l.
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      sweep.clear();
      for (int i = m - 1; i >= l; --i) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {  // deflate without finishing the sweep
          d[i + 1] -= p;
          e[m] = 0.0;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        sweep.push_back({s, c, i});
      }
      apply_sweep(exec);
      if (!sweep.empty() && static_cast<int>(sweep.size()) == m - l) {
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    }
  }
}

void fix_sign(std::vector<double>& vec) {
  double best = -1.0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < vec.size(); ++i) {
    const double mag = std::abs(vec[i]);
    if (mag > best) {
      best = mag;
      arg = i;
    }
  }
  if (!vec.empty() && vec[arg] < 0.0)
    for (double& x : vec) x = -x;
}

}  // namespace detail

namespace {

double pair_residual(const Hamiltonian& h, const EigenPair& pair, Exec exec) {
  std::vector<double> y(pair.vector.size());
  apply(h, pair.vector, y, exec);
  double acc = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double r = y[i] - pair.eigenvalue * pair.vector[i];
    acc += r * r;
  }
  return std::sqrt(acc);
}

}  // namespace

std::vector<EigenPair> eig_all(const Hamiltonian& h, const EigOptions& opts) {
  const int n = h.size();
  if (n > opts.dense_cap)
    fail(errc::size_cap_exceeded, "dense solve of n=" + std::to_string(n) +
                                      " exceeds the cap of " + std::to_string(opts.dense_cap));
  std::vector<double> a = to_dense(h);
  std::vector<double> d, e, q;
  detail::householder_tridiagonalize(a, n, d, e, q, opts.exec);
  detail::tridiag_ql(d, e, q, n, opts.exec);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&d](int x, int y) { return d[x] < d[y]; });

  const double tol = opts.tol_factor * h.inf_norm;
  std::vector<EigenPair> out(n);
  for (int j = 0; j < n; ++j) {
    EigenPair& pair = out[j];
    pair.eigenvalue = d[order[j]];
    pair.vector.resize(n);
    for (int k = 0; k < n; ++k) pair.vector[k] = q[static_cast<std::size_t>(k) * n + order[j]];
    detail::fix_sign(pair.vector);
    pair.residual = pair_residual(h, pair, opts.exec);
    if (!(pair.residual <= tol))
      fail(errc::convergence_failure, "eigenpair " + std::to_string(j) + " residual " +
                                          std::to_string(pair.residual) + " exceeds tolerance " +
                                          std::to_string(tol));
  }
  return out;
}

std::vector<EigenPair> eig_smallest(const Hamiltonian& h, int count, const EigOptions& opts) {
  const int n = h.size();
  if (count < 1 || count > n)
    fail(errc::bad_argument, "requested " + std::to_string(count) + " eigenpairs of an n=" +
                                 std::to_string(n) + " operator");

  // Small problems and near-complete requests gain nothing from Lanczos.
  if (n <= 32 || count > n - 2) {
    auto all = eig_all(h, opts);
    all.resize(count);
    return all;
  }

  const double contract_tol = opts.tol_factor * h.inf_norm;
  // Converge beyond the contract so downstream eigenvalue comparisons keep
  // margin; floor at what finite precision can deliver.
  const double aim =
      std::max({1e-12 * h.inf_norm, 400.0 * std::numeric_limits<double>::epsilon() * h.inf_norm,
                1e-14});
  const double target = std::min(contract_tol, aim);

  std::vector<EigenPair> locked;
  std::vector<std::vector<double>> locked_vecs;  // aliases of locked[i].vector for orthogonalization

  std::vector<std::vector<double>> basis;
  std::vector<double> alpha, beta;
  double best_residual = std::numeric_limits<double>::infinity();

  auto orth_against = [&](std::vector<double>& w, const std::vector<std::vector<double>>& set) {
    for (const auto& u : set) {
      const double c = dot(u, w);
      for (int i = 0; i < n; ++i) w[i] -= c * u[i];
    }
  };

  std::vector<double> start(n);
  int restarts = 0;
  bool warm = false;
  while (static_cast<int>(locked.size()) < count) {
    if (++restarts > 40 + 8 * count)
      fail(errc::convergence_failure,
           "Lanczos stalled after " + std::to_string(restarts - 1) + " restarts; best residual " +
               std::to_string(best_residual) + " (target " + std::to_string(target) + ")");

    if (!warm) {
      SplitMix64 rng = substream(0x5eedba5eull, static_cast<std::uint64_t>(n),
                                 static_cast<std::uint64_t>(restarts));
      for (int i = 0; i < n; ++i) start[i] = 2.0 * rng.next_unit() - 1.0;
    }
    warm = false;
    orth_against(start, locked_vecs);
    orth_against(start, locked_vecs);
    double nrm = norm2(start);
    if (nrm < 1e-8) continue;  // degenerate draw; take a fresh one
    for (double& x : start) x /= nrm;

    basis.assign(1, start);
    alpha.clear();
    beta.clear();

    const int m_cap = std::min(n - static_cast<int>(locked.size()), 300);
    EigenPair candidate;
    bool have_candidate = false;

    for (int j = 0; j < m_cap; ++j) {
      std::vector<double> w(n);
      apply(h, basis[j], w, opts.exec);
      if (j > 0)
        for (int i = 0; i < n; ++i) w[i] -= beta[j - 1] * basis[j - 1][i];
      const double aj = dot(basis[j], w);
      alpha.push_back(aj);
      for (int i = 0; i < n; ++i) w[i] -= aj * basis[j][i];
      // Full reorthogonalization (two passes) against basis and locked set.
      orth_against(w, basis);
      orth_against(w, locked_vecs);
      orth_against(w, basis);
      const double bj = norm2(w);

      const bool breakdown = bj <= 1e-13 * std::max(1.0, h.inf_norm);
      const bool check_now = breakdown || j == m_cap - 1 || (j % 8 == 7);
      if (check_now) {
        // Ritz pairs of the current tridiagonal section.
        const int m = j + 1;
        std::vector<double> td(alpha), te(beta);
        te.resize(m, 0.0);
        std::vector<double> z(static_cast<std::size_t>(m) * m, 0.0);
        for (int i = 0; i < m; ++i) z[static_cast<std::size_t>(i) * m + i] = 1.0;
        detail::tridiag_ql(td, te, z, m, Exec::serial);
        int lowest = 0;
        for (int i = 1; i < m; ++i)
          if (td[i] < td[lowest]) lowest = i;
        candidate.eigenvalue = td[lowest];
        candidate.vector.assign(n, 0.0);
        for (int i = 0; i < m; ++i) {
          const double s = z[static_cast<std::size_t>(i) * m + lowest];
          for (int k = 0; k < n; ++k) candidate.vector[k] += s * basis[i][k];
        }
        const double vn = norm2(candidate.vector);
        if (vn > 0)
          for (double& x : candidate.vector) x /= vn;
        candidate.residual = pair_residual(h, candidate, opts.exec);
        have_candidate = true;
        best_residual = std::min(best_residual, candidate.residual);
        if (candidate.residual <= target || breakdown) break;
      }
      if (breakdown) break;
      for (double& x : w) x /= bj;
      beta.push_back(bj);
      basis.push_back(std::move(w));
    }

    if (have_candidate && candidate.residual <= std::max(target, contract_tol)) {
      detail::fix_sign(candidate.vector);
      locked.push_back(candidate);
      locked_vecs.push_back(locked.back().vector);
    } else if (have_candidate) {
      start = candidate.vector;  // warm restart from the best Ritz vector
      warm = true;
    }
  }

  std::sort(locked.begin(), locked.end(),
            [](const EigenPair& x, const EigenPair& y) { return x.eigenvalue < y.eigenvalue; });
  for (auto& pair : locked)
    if (!(pair.residual <= contract_tol))
      fail(errc::convergence_failure, "locked eigenpair residual " + std::to_string(pair.residual) +
                                          " exceeds tolerance " + std::to_string(contract_tol));
  return locked;
}

}  // namespace agmon

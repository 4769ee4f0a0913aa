// Serial vs. parallel kernel benchmark.  Every parallel kernel in the
// library partitions work so that the floating-point reduction order matches
// the serial reference exactly; this harness times both paths and checks the
// outputs are bit-identical (max |delta| must be exactly 0).  Exits nonzero
// on any mismatch, so it doubles as a determinism smoke test.

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include "agmon/eigensolve.hpp"
#include "agmon/exec.hpp"
#include "agmon/graph.hpp"
#include "agmon/hamiltonian.hpp"
#include "agmon/prng.hpp"
#include "agmon/stochastic.hpp"

namespace {

template <typename F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return a.size() == b.size() ? m : std::numeric_limits<double>::infinity();
}

void row(const char* name, int n, double ts, double tp, double delta) {
  std::printf("%-22s %8d %11.4fs %11.4fs %8.2fx %12.3g\n", name, n, ts, tp,
              ts / tp, delta);
}

agmon::Potential random_potential(const agmon::Graph& g, std::uint64_t seed) {
  agmon::Potential w;
  w.values.resize(g.n);
  agmon::SplitMix64 rng = agmon::substream(seed, 0, 0);
  for (double& x : w.values) x = 20.0 * rng.next_unit();
  return w;
}

}  // namespace

int main() {
  using namespace agmon;
  std::printf("threads available: %d\n\n", omp_get_max_threads());
  std::printf("%-22s %8s %12s %12s %9s %12s\n", "kernel", "n", "serial", "parallel",
              "speedup", "max|delta|");
  bool all_identical = true;

  {  // sparse matvec y = H x on a grid
    const Graph g = gen_grid(250, 250);
    const Potential w = random_potential(g, 17);
    const Hamiltonian h = assemble(g, w);
    std::vector<double> x(g.n), ys(g.n), yp(g.n);
    SplitMix64 rng = substream(18, 0, 0);
    for (double& xi : x) xi = 2.0 * rng.next_unit() - 1.0;
    const int reps = 300;
    const double ts = seconds([&] {
      for (int r = 0; r < reps; ++r) apply(h, x, ys, Exec::serial);
    });
    const double tp = seconds([&] {
      for (int r = 0; r < reps; ++r) apply(h, x, yp, Exec::parallel);
    });
    const double d = max_abs_diff(ys, yp);
    row("spmv x300", g.n, ts, tp, d);
    all_identical = all_identical && d == 0.0;
  }

  {  // full dense spectrum (Householder + QL + accumulation)
    const Graph g = gen_random_connected(600, 0.02, 7);
    const Potential w = random_potential(g, 19);
    const Hamiltonian h = assemble(g, w);
    EigOptions serial_opts, parallel_opts;
    serial_opts.exec = Exec::serial;
    parallel_opts.exec = Exec::parallel;
    std::vector<EigenPair> ps, pp;
    const double ts = seconds([&] { ps = eig_all(h, serial_opts); });
    const double tp = seconds([&] { pp = eig_all(h, parallel_opts); });
    double d = 0.0;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      d = std::max(d, std::abs(ps[i].eigenvalue - pp[i].eigenvalue));
      d = std::max(d, max_abs_diff(ps[i].vector, pp[i].vector));
    }
    row("eig_all", h.size(), ts, tp, d);
    all_identical = all_identical && d == 0.0;
  }

  {  // Monte Carlo arrival-moment sampler
    const Graph g = gen_random_connected(64, 0.15, 11);
    const Potential w = random_potential(g, 23);
    const double energy = 1.0;
    const double delta = compute_delta(g, w, energy);
    const long long samples = 50000;
    McMoment ms, mp;
    const double ts =
        seconds([&] { ms = mc_moment(g, w, energy, delta, samples, 42, kDefaultStepCap,
                                     Exec::serial); });
    const double tp =
        seconds([&] { mp = mc_moment(g, w, energy, delta, samples, 42, kDefaultStepCap,
                                     Exec::parallel); });
    const double d =
        std::max(max_abs_diff(ms.estimate, mp.estimate), max_abs_diff(ms.std_error, mp.std_error));
    row("mc_moment x50000", g.n, ts, tp, d);
    all_identical = all_identical && d == 0.0;
  }

  std::printf("\nserial/parallel outputs bit-identical: %s\n", all_identical ? "yes" : "NO");
  return all_identical ? 0 : 1;
}

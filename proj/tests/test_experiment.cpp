#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "agmon/agmon_metric.hpp"
#include "agmon/errors.hpp"
#include "agmon/tree_experiment.hpp"

using namespace agmon;

namespace {

double max_rate_deviation(const DecayComparison& cmp) {
  double worst = 0.0;
  for (double r : cmp.ratio) worst = std::max(worst, std::abs(r - 1.0));
  return worst;
}

}  // namespace

TEST_CASE("tree-hub experiment passes every band at q=3, k in {2,3}, W up to 1e8") {
  for (int k : {2, 3}) {
    double dev_at_1e4 = 0.0, dev_at_1e8 = 0.0;
    for (double w_mag : {1e4, 1e6, 1e8}) {
      CAPTURE(k);
      CAPTURE(w_mag);
      const TreeExperiment exp = run_tree_experiment(3, k, w_mag);
      const double qk = std::pow(3.0, k);

      // lambda_1 <= q^k, and the quad-precision quotient eigenvalue agrees
      // with the dense cross-check
      CHECK(exp.lambda1 > 0.0);
      CHECK(exp.lambda1 <= qk);
      CHECK(std::abs(exp.lambda1 - exp.lambda1_dense) <= 1e-12 * w_mag);

      // the dense eigenvector is level-constant (equitable partition)
      CHECK(exp.level_spread <= 1e-10);

      // interior level ratios approach q / W
      for (double ratio : exp.ratios) {
        CHECK(ratio > 0.0);
        if (w_mag >= 1e6) {
          CHECK(ratio >= 0.5 * 3.0 / w_mag);
          CHECK(ratio <= 2.0 * 3.0 / w_mag);
        }
      }

      // the level recurrence closes
      CHECK(check_level_recurrence(exp) <= 1e-8);

      // Agmon rate vs empirical rate
      const AgmonField field = agmon_distance(exp.instance.graph, exp.potential, exp.lambda1);
      const DecayComparison cmp = compare_decay_rates(exp, field);
      REQUIRE(cmp.ratio.size() == static_cast<std::size_t>(k - 1));
      if (w_mag >= 1e6)
        for (double r : cmp.ratio) {
          CHECK(r >= 0.8);
          CHECK(r <= 1.25);
        }
      if (w_mag == 1e4) dev_at_1e4 = max_rate_deviation(cmp);
      if (w_mag == 1e8) dev_at_1e8 = max_rate_deviation(cmp);

      // the hub carries the ground state's maximum amplitude
      CHECK(exp.hub_amp == exp.level_profile.back());
      for (double amp : exp.level_profile) CHECK(amp <= exp.hub_amp);
    }
    // rates converge toward the Agmon prediction as W grows
    CHECK(dev_at_1e8 < dev_at_1e4);
  }
}

TEST_CASE("negative control: a shifted energy breaks the level recurrence") {
  const TreeExperiment exp = run_tree_experiment(3, 3, 1e4);
  CHECK(check_level_recurrence(exp) <= 1e-8);
  CHECK(check_level_recurrence(exp, 1.0) > 1e-5);
}

TEST_CASE("profile decays monotonically away from the hub") {
  const TreeExperiment exp = run_tree_experiment(3, 3, 1e6);
  // levels 0..k hold the tree; amplitude grows toward the hub's leaves
  for (int i = 0; i + 1 <= exp.k; ++i)
    CHECK(exp.level_profile[i] < exp.level_profile[i + 1]);
  CHECK(exp.level_profile[exp.k] < exp.hub_amp);
}

TEST_CASE("quotient profile matches the dense per-level means") {
  const TreeExperiment exp = run_tree_experiment(3, 2, 1e6);
  REQUIRE(exp.level_mean.size() == exp.level_profile.size());
  for (std::size_t i = 0; i < exp.level_profile.size(); ++i) {
    // levels whose amplitude sits below double's noise floor can only be
    // compared absolutely; that gap is exactly why the quotient solve runs
    // in quad precision
    if (exp.level_profile[i] >= 1e-8) {
      const double rel = std::abs(exp.level_mean[i] - exp.level_profile[i]) / exp.level_profile[i];
      CHECK(rel <= 1e-6);
    } else {
      CHECK(std::abs(exp.level_mean[i] - exp.level_profile[i]) <= 1e-13);
    }
  }
}

TEST_CASE("experiment argument validation") {
  CHECK_THROWS_AS(run_tree_experiment(1, 2, 1e4), error);
  CHECK_THROWS_AS(run_tree_experiment(3, 1, 1e4), error);
  CHECK_THROWS_AS(run_tree_experiment(3, 2, 5.0), error);  // needs W > q^k
}

TEST_CASE("compare_decay_rates rejects a field at the wrong energy") {
  const TreeExperiment exp = run_tree_experiment(3, 2, 1e4);
  const AgmonField wrong = agmon_distance(exp.instance.graph, exp.potential, 1.0);
  CHECK_THROWS_AS(compare_decay_rates(exp, wrong), error);
}

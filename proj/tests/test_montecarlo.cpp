// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <cmath>
#include <numeric>

#include "gaussggm/montecarlo.hpp"

using namespace gaussggm;

namespace {

EnsembleSpec make_spec(Index n, double nu_bar, std::uint64_t samples, std::uint64_t seed = 42,
                       unsigned workers = 1, GgmMode mode = GgmMode::full) {
  EnsembleSpec spec;
  spec.state = RandomStateSpec{n, nu_bar, seed, UniformGamma{}};
  spec.samples = samples;
  spec.workers = workers;
  spec.mode = mode;
  return spec;
}

}  // namespace

TEST_CASE("histogram bins are right-closed and anchored at zero") {
  Histogram h(0.05);
  CHECK(h.bins() == 20);
  h.add(0.0);
  h.add(0.05);
  h.add(0.050001);
  h.add(0.999);
  h.add(1.0);
  CHECK(h.counts()[0] == 2);
  CHECK(h.counts()[1] == 1);
  CHECK(h.counts()[19] == 2);
  CHECK(h.total() == 5);
  const auto f = h.fractions();
  CHECK(std::accumulate(f.begin(), f.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(h.right_edges().front() == doctest::Approx(0.05));
  CHECK(h.right_edges().back() == doctest::Approx(1.0));

  CHECK(Histogram(0.1).bins() == 10);
  CHECK(Histogram(0.3).bins() == 4);
  CHECK_THROWS_AS(Histogram(0.0), std::invalid_argument);
  Histogram other(0.1);
  CHECK_THROWS_AS(h.merge(other), std::invalid_argument);
  CHECK_THROWS_AS(Histogram::from_counts(0.05, {1, 2}), std::invalid_argument);
}

TEST_CASE("compensated summation") {
  CompensatedSum s;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i) s.add(1e-16);
  s.add(-1.0);
  CHECK(s.value() == doctest::Approx(1e-13).epsilon(1e-6));

  CompensatedSum a, b;
  a.add(1e16);
  b.add(1.0);
  b.add(-1e16);
  a.merge(b);
  CHECK(a.value() == 1.0);
}

TEST_CASE("vacuum ensemble is identically zero") {
  for (Index n : {2, 3, 5}) {
    const EnsembleStats s = run_ensemble(make_spec(n, 1.0, 100));
    CHECK(s.mean == 0.0);
    CHECK(s.stddev == 0.0);
    CHECK(s.histogram.counts()[0] == 100);
  }
}

TEST_CASE("ensemble moments and histogram are consistent") {
  const EnsembleStats s = run_ensemble(make_spec(3, 2.6, 2000));
  CHECK(s.samples == 2000);
  CHECK(s.histogram.total() == 2000);
  const double second = s.sum_sq / 2000.0;
  CHECK(std::abs(s.stddev * s.stddev + s.mean * s.mean - second) <= 1e-10);
  CHECK(s.mean == doctest::Approx(s.sum / 2000.0));
  CHECK(s.mean > 0.0);
  CHECK(s.mean < 1.0);
}

TEST_CASE("ensemble determinism and worker independence") {
  const auto a = run_ensemble_samples(make_spec(3, 2.6, 1500, 7, 3));
  const auto b = run_ensemble_samples(make_spec(3, 2.6, 1500, 7, 3));
  CHECK(a.values == b.values);
  CHECK(a.stats.mean == b.stats.mean);
  CHECK(a.stats.stddev == b.stats.stddev);

  const auto single = run_ensemble(make_spec(3, 2.6, 1500, 7, 1));
  const double se = std::hypot(single.standard_error(), a.stats.standard_error());
  CHECK(std::abs(single.mean - a.stats.mean) <= 5 * se);

  // Uneven split: 1001 samples over 4 workers.
  CHECK(run_ensemble(make_spec(2, 2.0, 1001, 1, 4)).histogram.total() == 1001);
}

TEST_CASE("ensemble validation") {
  CHECK_THROWS_AS(run_ensemble(make_spec(3, 2.6, 0)), std::invalid_argument);
  CHECK_THROWS_AS(run_ensemble(make_spec(3, 2.6, 10, 1, 0)), std::invalid_argument);
  CHECK_THROWS_AS(run_ensemble(make_spec(25, 2.6, 10)), std::invalid_argument);
  CHECK_THROWS_AS(run_ensemble(make_spec(1, 2.6, 10)), std::invalid_argument);
  CHECK_NOTHROW(run_ensemble(make_spec(25, 2.6, 3, 1, 1, GgmMode::single_mode)));
}

TEST_CASE("tail probabilities") {
  SUBCASE("vacuum ensemble never deviates") {
    const auto t = tail_probability(make_spec(3, 1.0, 200), 0.0, {1e-6, 1e-3, 0.1});
    for (double p : t.probabilities) CHECK(p == 0.0);
    CHECK_FALSE(t.fitted_c.has_value());
  }
  SUBCASE("monotone in epsilon, grid sorted") {
    const auto t = tail_probability(make_spec(4, 2.6, 1000), 4.0 / 9.0, {0.01, 0.0001, 0.001, 0.05});
    CHECK(std::is_sorted(t.epsilon_grid.begin(), t.epsilon_grid.end()));
    for (std::size_t i = 1; i < t.probabilities.size(); ++i)
      CHECK(t.probabilities[i] <= t.probabilities[i - 1]);
    for (double p : t.probabilities) {
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
    }
  }
  SUBCASE("exact counts and fit on synthetic values") {
    // Deviations from 0.5: 0.1, 0.2, 0.3, 0.4 -> squares 0.01, 0.04, 0.09, 0.16.
    const std::vector<double> values{0.4, 0.7, 0.2, 0.9};
    const auto t = tail_from_values(values, 10, 0.5, {0.02, 0.005, 0.1});
    CHECK(t.probabilities == std::vector<double>{1.0, 0.75, 0.25});
    REQUIRE(t.fitted_c.has_value());
    // Least-squares reference computed offline with numpy.polyfit.
    CHECK(*t.fitted_c == doctest::Approx(12.764695225163637).epsilon(1e-12));
    CHECK(*t.fitted_intercept == doctest::Approx(-0.11441898544945404).epsilon(1e-12));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(tail_probability(make_spec(3, 2.6, 10), 0.4, {}), std::invalid_argument);
    CHECK_THROWS_AS(tail_from_values({0.1}, 3, 1.0, {0.1}), std::invalid_argument);
    CHECK_THROWS_AS(tail_from_values({0.1}, 3, 0.2, {0.0}), std::invalid_argument);
  }
}

TEST_CASE("Kolmogorov-Smirnov statistic") {
  CHECK(ks_statistic({1, 2, 3}, {1, 2, 3}) == 0.0);
  CHECK(ks_statistic({1, 2, 3}, {4, 5, 6}) == 1.0);
  // F_a jumps at 1,2,3,4; F_b at 2.5 and 3.5: sup gap 0.5 at x = 2.
  CHECK(ks_statistic({1, 2, 3, 4}, {2.5, 3.5}) == doctest::Approx(0.5));
  CHECK(ks_statistic({0, 0, 0}, {0, 0}) == 0.0);
  CHECK(ks_critical_value(10000, 10000) == doctest::Approx(0.0230174).epsilon(1e-5));
  CHECK_THROWS_AS(ks_statistic({}, {1}), std::invalid_argument);
}

TEST_CASE("gamma equivalence reports") {
  const auto same = gamma_equivalence_test(make_spec(3, 2.6, 300), make_spec(3, 2.6, 300));
  CHECK(same.ks_statistic == 0.0);
  CHECK(same.equivalent);

  const auto vac = gamma_equivalence_test(make_spec(3, 1.0, 200, 1), make_spec(3, 1.0, 200, 2));
  CHECK(vac.ks_statistic == 0.0);

  const double z1 = (11.6 + std::sqrt(11.6 * 11.6 - 4.0)) / 2.0;
  EnsembleSpec one_hot = make_spec(3, 2.6, 2000, 43);
  one_hot.state.gamma = std::vector<double>{z1, 1.0, 1.0};
  const auto r = gamma_equivalence_test(make_spec(3, 2.6, 2000), one_hot);
  CHECK(r.critical_value > 0.0);
  MESSAGE("uniform vs one-hot squeezing, n=3: KS=" << r.ks_statistic << " crit=" << r.critical_value
                                                   << " means " << r.mean_a << " / " << r.mean_b);

  CHECK_THROWS_AS(gamma_equivalence_test(make_spec(3, 2.6, 100), make_spec(4, 2.6, 100)),
                  std::invalid_argument);
  CHECK_THROWS_AS(gamma_equivalence_test(make_spec(3, 2.6, 100), make_spec(3, 2.0, 100)),
                  std::invalid_argument);
  CHECK_THROWS_AS(gamma_equivalence_test(make_spec(3, 2.6, 100), make_spec(3, 2.6, 101)),
                  std::invalid_argument);
}

TEST_CASE("symplectic concentration probe") {
  const auto vac = symplectic_concentration_probe(6, 1.0, 3, 50);
  for (double d : vac.mean_deviation) CHECK(d == 0.0);
  for (double d : vac.stddev_deviation) CHECK(d == 0.0);

  const auto small = symplectic_concentration_probe(12, 2.6, 1, 1000);
  const auto large = symplectic_concentration_probe(48, 2.6, 1, 1000);
  CHECK(small.stddev_deviation[0] > large.stddev_deviation[0]);
  CHECK(std::abs(large.mean_deviation[0]) < 0.1 * 2.6);

  const auto two = symplectic_concentration_probe(8, 2.6, 2, 100);
  CHECK(two.mean_deviation.size() == 2);

  CHECK_THROWS_AS(symplectic_concentration_probe(6, 2.6, 4, 10), std::invalid_argument);
  CHECK_THROWS_AS(symplectic_concentration_probe(6, 2.6, 0, 10), std::invalid_argument);
}

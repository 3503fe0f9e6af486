// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo ensembles of Haar-random pure Gaussian states: GGM moments,
// histograms, tail probabilities and two-sample comparisons.
//
// Parallel runs split the N samples into `workers` contiguous chunks; chunk w
// draws from RandomStream::for_worker(seed, w). Partial results are merged in
// worker order, so a fixed (seed, workers) pair reproduces every output bit.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gaussggm/ggm.hpp"
#include "gaussggm/haar.hpp"

namespace gaussggm {

enum class GgmMode { full, single_mode };

struct EnsembleSpec {
  RandomStateSpec state;
  std::uint64_t samples = 100000;
  GgmMode mode = GgmMode::full;
  unsigned workers = 1;
  double bin_width = 0.05;

  void validate() const;
};

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  void merge(const CompensatedSum& other) noexcept;
  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// Right-closed bins (x - w, x] anchored at 0 covering [0, 1]. Zero lands in
/// the first bin.
class Histogram {
 public:
  explicit Histogram(double bin_width = 0.05);

  void add(double value);
  void merge(const Histogram& other);

  double bin_width() const noexcept { return width_; }
  std::size_t bins() const noexcept { return counts_.size(); }
  const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }
  std::uint64_t total() const noexcept;
  std::vector<double> right_edges() const;
  std::vector<double> fractions() const;

  /// Rebuild from serialized counts.
  static Histogram from_counts(double bin_width, std::vector<std::uint64_t> counts);

 private:
  double width_;
  std::vector<std::uint64_t> counts_;
};

struct EnsembleStats {
  Index n = 0;
  double nu_bar = 1.0;
  std::uint64_t samples = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double sum = 0.0;     ///< sum of G
  double sum_sq = 0.0;  ///< sum of G^2
  Histogram histogram;

  /// Standard error of the mean, stddev / sqrt(N).
  double standard_error() const;
};

struct EnsembleSamples {
  EnsembleStats stats;
  std::vector<double> values;  ///< GGM per sample, worker-major order
};

EnsembleStats run_ensemble(const EnsembleSpec& spec);
EnsembleSamples run_ensemble_samples(const EnsembleSpec& spec);

/// GGM of one state under the requested enumeration mode.
GgmResult evaluate_ggm(const Covariance& sigma, GgmMode mode);

struct TailEstimate {
  Index n = 0;
  std::uint64_t samples = 0;
  double reference = 0.0;
  std::vector<double> epsilon_grid;   ///< ascending
  std::vector<double> probabilities;  ///< Prob{(G - reference)^2 > eps}
  /// Least-squares fit ln p = intercept - c * eps^2 * n over points with p > 0;
  /// empty when fewer than two such points exist.
  std::optional<double> fitted_c;
  std::optional<double> fitted_intercept;
};

TailEstimate tail_probability(const EnsembleSpec& spec, double reference,
                              std::vector<double> epsilon_grid);
TailEstimate tail_from_values(const std::vector<double>& values, Index n, double reference,
                              std::vector<double> epsilon_grid);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::vector<double> a, std::vector<double> b);
/// Asymptotic critical value sqrt(-ln(alpha/2)/2) * sqrt((na + nb)/(na nb)).
double ks_critical_value(std::size_t na, std::size_t nb, double alpha = 0.01);

struct GammaEquivalenceReport {
  Index n = 0;
  double nu_bar = 1.0;
  std::uint64_t samples = 0;
  double ks_statistic = 0.0;
  double critical_value = 0.0;
  double alpha = 0.01;
  double mean_a = 0.0, mean_b = 0.0;
  double stddev_a = 0.0, stddev_b = 0.0;
  bool equivalent = true;  ///< ks_statistic <= critical_value
};

/// Compares GGM distributions of two ensembles that differ only in their
/// squeezing spectrum (or seed). Reports; does not assume equality.
GammaEquivalenceReport gamma_equivalence_test(const EnsembleSpec& spec_a,
                                              const EnsembleSpec& spec_b);

struct ConcentrationSummary {
  Index n = 0;
  double nu_bar = 1.0;
  Index k = 1;
  std::uint64_t samples = 0;
  std::vector<double> mean_deviation;    ///< E[nu_i - nu_bar] per rank i
  std::vector<double> stddev_deviation;  ///< spread of nu_i per rank i
};

/// Symplectic spectrum of the reduction to modes {1..k} across random states.
ConcentrationSummary symplectic_concentration_probe(Index n, double nu_bar, Index k,
                                                    std::uint64_t samples,
                                                    std::uint64_t seed = 42);

}  // namespace gaussggm

// SPDX-License-Identifier: Apache-2.0
#include "gaussggm/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace gaussggm {

void EnsembleSpec::validate() const {
  state.validate();
  if (samples < 1) throw std::invalid_argument("ensemble: samples must be >= 1");
  if (workers < 1) throw std::invalid_argument("ensemble: workers must be >= 1");
  if (!(bin_width > 0.0 && bin_width <= 1.0))
    throw std::invalid_argument("ensemble: bin width must lie in (0, 1]");
  if (mode == GgmMode::full && state.n > kMaxFullGgmModes)
    throw std::invalid_argument("ensemble: full GGM mode is limited to " +
                                std::to_string(kMaxFullGgmModes) + " modes");
  if (state.n < 2) throw std::invalid_argument("ensemble: GGM needs at least two modes");
}

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    compensation_ += (sum_ - t) + x;
  else
    compensation_ += (x - t) + sum_;
  sum_ = t;
}

void CompensatedSum::merge(const CompensatedSum& other) noexcept {
  add(other.sum_);
  add(other.compensation_);
}

Histogram::Histogram(double bin_width) : width_(bin_width) {
  if (!(bin_width > 0.0 && bin_width <= 1.0))
    throw std::invalid_argument("histogram: bin width must lie in (0, 1]");
  const auto bins = static_cast<std::size_t>(std::ceil(1.0 / bin_width - 1e-9));
  counts_.assign(std::max<std::size_t>(bins, 1), 0);
}

void Histogram::add(double value) {
  std::size_t bin = 0;
  if (value > 0.0) {
    const double slot = std::ceil(value / width_) - 1.0;
    bin = slot <= 0.0 ? 0 : std::min(static_cast<std::size_t>(slot), counts_.size() - 1);
  }
  ++counts_[bin];
}

void Histogram::merge(const Histogram& other) {
  if (other.width_ != width_ || other.counts_.size() != counts_.size())
    throw std::invalid_argument("histogram: cannot merge different binnings");
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
}

std::uint64_t Histogram::total() const noexcept {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

std::vector<double> Histogram::right_edges() const {
  std::vector<double> edges(counts_.size());
  for (std::size_t i = 0; i < edges.size(); ++i) edges[i] = static_cast<double>(i + 1) * width_;
  return edges;
}

std::vector<double> Histogram::fractions() const {
  const auto n = total();
  std::vector<double> out(counts_.size(), 0.0);
  if (n == 0) return out;
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<double>(counts_[i]) / static_cast<double>(n);
  return out;
}

Histogram Histogram::from_counts(double bin_width, std::vector<std::uint64_t> counts) {
  Histogram h(bin_width);
  if (counts.size() != h.counts_.size())
    throw std::invalid_argument("histogram: count list does not match the bin width");
  h.counts_ = std::move(counts);
  return h;
}

double EnsembleStats::standard_error() const {
  return samples == 0 ? 0.0 : stddev / std::sqrt(static_cast<double>(samples));
}

GgmResult evaluate_ggm(const Covariance& sigma, GgmMode mode) {
  return mode == GgmMode::full ? compute_ggm(sigma) : compute_ggm_single_mode(sigma);
}

namespace {

struct Partial {
  CompensatedSum sum;
  CompensatedSum sum_sq;
  Histogram histogram;
  std::vector<double> values;
};

void run_chunk(const EnsembleSpec& spec, const SqueezingSpectrum& squeezing, unsigned worker,
               std::uint64_t count, bool keep_values, Partial& out) {
  RandomStream stream = RandomStream::for_worker(spec.state.seed, worker);
  if (keep_values) out.values.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const double g = evaluate_ggm(sample_state(squeezing, stream), spec.mode).value;
    out.sum.add(g);
    out.sum_sq.add(g * g);
    out.histogram.add(g);
    if (keep_values) out.values.push_back(g);
  }
}

EnsembleSamples run(const EnsembleSpec& spec, bool keep_values) {
  spec.validate();
  const SqueezingSpectrum squeezing = spec.state.squeezing();
  const unsigned workers = spec.workers;
  std::vector<Partial> partials(workers, Partial{{}, {}, Histogram(spec.bin_width), {}});

  auto chunk = [&](unsigned w) {
    return spec.samples * (w + 1) / workers - spec.samples * w / workers;
  };

  if (workers == 1) {
    run_chunk(spec, squeezing, 0, spec.samples, keep_values, partials[0]);
  } else {
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        try {
          run_chunk(spec, squeezing, w, chunk(w), keep_values, partials[w]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  EnsembleSamples out{{}, {}};
  CompensatedSum sum, sum_sq;
  Histogram histogram(spec.bin_width);
  for (auto& p : partials) {
    sum.merge(p.sum);
    sum_sq.merge(p.sum_sq);
    histogram.merge(p.histogram);
    if (keep_values) out.values.insert(out.values.end(), p.values.begin(), p.values.end());
  }

  auto& st = out.stats;
  st.n = spec.state.n;
  st.nu_bar = spec.state.nu_bar;
  st.samples = spec.samples;
  st.sum = sum.value();
  st.sum_sq = sum_sq.value();
  const double N = static_cast<double>(spec.samples);
  st.mean = st.sum / N;
  st.stddev = std::sqrt(std::max(0.0, st.sum_sq / N - st.mean * st.mean));
  st.histogram = std::move(histogram);
  return out;
}

}  // namespace

EnsembleStats run_ensemble(const EnsembleSpec& spec) { return run(spec, false).stats; }

EnsembleSamples run_ensemble_samples(const EnsembleSpec& spec) { return run(spec, true); }

TailEstimate tail_from_values(const std::vector<double>& values, Index n, double reference,
                              std::vector<double> epsilon_grid) {
  if (epsilon_grid.empty()) throw std::invalid_argument("tail: empty epsilon grid");
  if (!(reference >= 0.0 && reference < 1.0))
    throw std::invalid_argument("tail: reference must lie in [0, 1)");
  for (double eps : epsilon_grid)
    if (!(eps > 0.0)) throw std::invalid_argument("tail: epsilon values must be positive");
  if (values.empty()) throw std::invalid_argument("tail: no samples");
  std::sort(epsilon_grid.begin(), epsilon_grid.end());

  std::vector<double> sq(values.size());
  std::transform(values.begin(), values.end(), sq.begin(),
                 [&](double g) { return (g - reference) * (g - reference); });
  std::sort(sq.begin(), sq.end());

  TailEstimate est;
  est.n = n;
  est.samples = values.size();
  est.reference = reference;
  est.epsilon_grid = epsilon_grid;
  const double N = static_cast<double>(values.size());
  for (double eps : epsilon_grid) {
    const auto above = sq.end() - std::upper_bound(sq.begin(), sq.end(), eps);
    est.probabilities.push_back(static_cast<double>(above) / N);
  }

  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < epsilon_grid.size(); ++i) {
    if (est.probabilities[i] > 0.0) {
      xs.push_back(epsilon_grid[i] * epsilon_grid[i] * static_cast<double>(n));
      ys.push_back(std::log(est.probabilities[i]));
    }
  }
  if (xs.size() >= 2) {
    const double m = static_cast<double>(xs.size());
    const double xbar = std::accumulate(xs.begin(), xs.end(), 0.0) / m;
    const double ybar = std::accumulate(ys.begin(), ys.end(), 0.0) / m;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxx += (xs[i] - xbar) * (xs[i] - xbar);
      sxy += (xs[i] - xbar) * (ys[i] - ybar);
    }
    if (sxx > 0.0) {
      const double slope = sxy / sxx;
      est.fitted_c = -slope;
      est.fitted_intercept = ybar - slope * xbar;
    }
  }
  return est;
}

TailEstimate tail_probability(const EnsembleSpec& spec, double reference,
                              std::vector<double> epsilon_grid) {
  if (epsilon_grid.empty()) throw std::invalid_argument("tail: empty epsilon grid");
  const auto samples = run_ensemble_samples(spec);
  return tail_from_values(samples.values, spec.state.n, reference, std::move(epsilon_grid));
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_critical_value(std::size_t na, std::size_t nb, double alpha) {
  if (na == 0 || nb == 0) throw std::invalid_argument("ks_critical_value: empty sample");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("ks_critical_value: bad alpha");
  const double a = static_cast<double>(na), b = static_cast<double>(nb);
  return std::sqrt(-0.5 * std::log(alpha / 2.0)) * std::sqrt((a + b) / (a * b));
}

GammaEquivalenceReport gamma_equivalence_test(const EnsembleSpec& spec_a,
                                              const EnsembleSpec& spec_b) {
  if (spec_a.state.n != spec_b.state.n || spec_a.state.nu_bar != spec_b.state.nu_bar ||
      spec_a.samples != spec_b.samples)
    throw std::invalid_argument("gamma_equivalence_test: specs must share n, nu_bar and samples");
  const auto a = run_ensemble_samples(spec_a);
  const auto b = run_ensemble_samples(spec_b);

  GammaEquivalenceReport r;
  r.n = spec_a.state.n;
  r.nu_bar = spec_a.state.nu_bar;
  r.samples = spec_a.samples;
  r.ks_statistic = ks_statistic(a.values, b.values);
  r.critical_value = ks_critical_value(a.values.size(), b.values.size(), r.alpha);
  r.mean_a = a.stats.mean;
  r.mean_b = b.stats.mean;
  r.stddev_a = a.stats.stddev;
  r.stddev_b = b.stats.stddev;
  r.equivalent = r.ks_statistic <= r.critical_value;
  return r;
}

ConcentrationSummary symplectic_concentration_probe(Index n, double nu_bar, Index k,
                                                    std::uint64_t samples, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("concentration probe: n must be >= 2");
  if (k < 1 || k > n / 2)
    throw std::invalid_argument("concentration probe: k must lie in [1, floor(n/2)]");
  if (samples < 1) throw std::invalid_argument("concentration probe: samples must be >= 1");

  const SqueezingSpectrum squeezing = uniform_squeezing(n, nu_bar);
  std::vector<Index> first_k(static_cast<std::size_t>(k));
  std::iota(first_k.begin(), first_k.end(), Index{1});
  const ModeSubset subset(n, first_k);

  std::vector<CompensatedSum> sum(static_cast<std::size_t>(k)), sum_sq(static_cast<std::size_t>(k));
  RandomStream stream(seed);
  for (std::uint64_t s = 0; s < samples; ++s) {
    const Covariance sigma = sample_state(squeezing, stream);
    const auto nu = symplectic_spectrum(reduce(sigma.matrix(), subset)).values;
    for (Index i = 0; i < k; ++i) {
      const double dev = nu(i) - nu_bar;
      sum[static_cast<std::size_t>(i)].add(dev);
      sum_sq[static_cast<std::size_t>(i)].add(dev * dev);
    }
  }

  ConcentrationSummary out;
  out.n = n;
  out.nu_bar = nu_bar;
  out.k = k;
  out.samples = samples;
  const double N = static_cast<double>(samples);
  for (Index i = 0; i < k; ++i) {
    const double mean = sum[static_cast<std::size_t>(i)].value() / N;
    const double second = sum_sq[static_cast<std::size_t>(i)].value() / N;
    out.mean_deviation.push_back(mean);
    out.stddev_deviation.push_back(std::sqrt(std::max(0.0, second - mean * mean)));
  }
  return out;
}

}  // namespace gaussggm

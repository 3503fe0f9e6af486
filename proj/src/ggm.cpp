// SPDX-License-Identifier: Apache-2.0
#include "gaussggm/ggm.hpp"

#include <optional>
#include <stdexcept>

namespace gaussggm {
namespace {

struct Candidate {
  double lambda;
  std::vector<Index> modes;
  Eigen::VectorXd spectrum;
};

void require_ggm_input(const Covariance& sigma, const Tolerances& tol) {
  if (sigma.modes() < 2) throw std::invalid_argument("GGM needs at least two modes");
  if (!is_pure(sigma, tol))
    throw UnsupportedStateError("GGM is only defined here for pure states");
}

// Visits all k-subsets of {1..n} in lexicographic order.
template <typename Visit>
void for_each_subset(Index n, Index k, Visit&& visit) {
  std::vector<Index> idx(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    visit(idx);
    Index pos = k - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - k + pos + 1) --pos;
    if (pos < 0) return;
    ++idx[static_cast<std::size_t>(pos)];
    for (Index j = pos + 1; j < k; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

GgmResult search(const Covariance& sigma, Index max_size, const Tolerances& tol) {
  const Index n = sigma.modes();
  std::optional<Candidate> best;
  for (Index k = 1; k <= max_size; ++k) {
    for_each_subset(n, k, [&](const std::vector<Index>& modes) {
      const ModeSubset subset(n, modes);
      const auto spectrum = symplectic_spectrum(reduce(sigma.matrix(), subset), tol);
      const double lambda = schmidt_product(spectrum.values);
      const bool better = !best || lambda > best->lambda ||
                          (lambda == best->lambda && modes < best->modes);
      if (better) best = Candidate{lambda, modes, spectrum.values};
    });
  }
  GgmResult result{1.0 - best->lambda, best->lambda, ModeSubset(n, best->modes),
                   std::vector<double>(best->spectrum.begin(), best->spectrum.end())};
  for (double& nu : result.argmax_spectrum)
    if (nu - 1.0 <= kUnitClamp) nu = 1.0;
  return result;
}

}  // namespace

double schmidt_product(const Eigen::Ref<const Eigen::VectorXd>& nu) {
  double product = 1.0;
  for (Index i = 0; i < nu.size(); ++i) {
    const double v = nu(i) - 1.0 <= kUnitClamp ? 1.0 : nu(i);
    product *= 2.0 / (1.0 + v);
  }
  return product;
}

double bipartition_max_schmidt(const Covariance& sigma, const ModeSubset& subset,
                               const Tolerances& tol) {
  if (subset.is_full())
    throw std::invalid_argument("bipartition_max_schmidt: subset covers every mode");
  return schmidt_product(symplectic_spectrum(reduce(sigma.matrix(), subset), tol).values);
}

GgmResult compute_ggm(const Covariance& sigma, const Tolerances& tol) {
  require_ggm_input(sigma, tol);
  if (sigma.modes() > kMaxFullGgmModes)
    throw std::invalid_argument("compute_ggm: full enumeration is limited to " +
                                std::to_string(kMaxFullGgmModes) +
                                " modes; use the single-mode variant");
  return search(sigma, sigma.modes() / 2, tol);
}

GgmResult compute_ggm_single_mode(const Covariance& sigma, const Tolerances& tol) {
  require_ggm_input(sigma, tol);
  return search(sigma, 1, tol);
}

double asymptotic_ggm(double nu_bar) {
  if (!(nu_bar >= 1.0)) throw std::invalid_argument("asymptotic_ggm: nu_bar must be >= 1");
  return 1.0 - 2.0 / (nu_bar + 1.0);
}

}  // namespace gaussggm

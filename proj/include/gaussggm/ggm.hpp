// SPDX-License-Identifier: Apache-2.0
//
// Generalized geometric measure (GGM) of pure Gaussian states.
//
// For a pure state the largest Schmidt coefficient across the bipartition
// S | S^c is prod_i 2 / (1 + nu_i) over the symplectic spectrum of the
// reduction to S; each factor is the top eigenvalue of a thermal mode with
// inverse temperature beta_i = ln((nu_i + 1) / (nu_i - 1)). The GGM is one minus
// the maximum of that product over all subsets of size 1 .. floor(n/2).
#pragma once

#include <vector>

#include "gaussggm/symplectic.hpp"

namespace gaussggm {

/// Full subset enumeration is refused above this many modes.
inline constexpr Index kMaxFullGgmModes = 24;
/// Symplectic eigenvalues this close to 1 count as exactly 1.
inline constexpr double kUnitClamp = 1e-9;

struct GgmResult {
  double value = 0.0;
  double lambda_max = 1.0;
  ModeSubset argmax_subset;
  std::vector<double> argmax_spectrum;
};

/// prod 2 / (1 + nu_i) over a given symplectic spectrum, after clamping.
double schmidt_product(const Eigen::Ref<const Eigen::VectorXd>& nu);

/// Largest Schmidt coefficient of the bipartition subset | complement.
/// `sigma` is assumed pure; the subset must be proper.
double bipartition_max_schmidt(const Covariance& sigma, const ModeSubset& subset,
                               const Tolerances& tol = kDefaultTolerances);

/// Exact GGM by enumerating every subset of size 1 .. floor(n/2).
/// Ties in the maximum go to the lexicographically smallest subset.
GgmResult compute_ggm(const Covariance& sigma, const Tolerances& tol = kDefaultTolerances);

/// GGM restricted to single-mode bipartitions. Never below compute_ggm; equal for
/// n = 2 and a close approximation for many modes.
GgmResult compute_ggm_single_mode(const Covariance& sigma,
                                  const Tolerances& tol = kDefaultTolerances);

/// Large-n typical value (nu_bar - 1) / (nu_bar + 1).
double asymptotic_ggm(double nu_bar);

}  // namespace gaussggm

// SPDX-License-Identifier: Apache-2.0
//
// Phase-space linear algebra for zero-mean Gaussian states.
//
// All 2n x 2n matrices use the quadrature ordering (q_1 ... q_n, p_1 ... p_n).
// The vacuum covariance matrix is the identity, so symplectic eigenvalues of
// physical states are >= 1 and equal to 1 exactly for pure states.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gaussggm/errors.hpp"

namespace gaussggm {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Eigen::Index;

/// Numerical thresholds shared by the validity checks.
struct Tolerances {
  double symmetry = 1e-10;  ///< max |sigma - sigma^T| entry
  double physical = 1e-8;   ///< allowed undershoot of nu below 1
  double purity = 1e-8;     ///< Frobenius norm of (J sigma)^2 + I
};

inline constexpr Tolerances kDefaultTolerances{};

/// J = [[0, -I], [I, 0]] for n modes.
template <typename Scalar = double>
Matrix<Scalar> symplectic_form(Index n) {
  if (n < 1) throw std::invalid_argument("symplectic_form: mode count must be >= 1");
  Matrix<Scalar> J = Matrix<Scalar>::Zero(2 * n, 2 * n);
  J.topRightCorner(n, n).diagonal().setConstant(Scalar(-1));
  J.bottomLeftCorner(n, n).diagonal().setConstant(Scalar(1));
  return J;
}

namespace detail {

inline Index modes_of(Index dim, const char* who) {
  if (dim < 2 || dim % 2 != 0)
    throw std::invalid_argument(std::string(who) + ": matrix dimension must be even and positive");
  return dim / 2;
}

template <typename Derived>
typename Derived::RealScalar max_asymmetry(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.transpose()).cwiseAbs().maxCoeff();
}

}  // namespace detail

/// Real symmetric 2n x 2n covariance matrix of an n-mode Gaussian state.
///
/// Construction checks shape and symmetry only; physicality is established by
/// symplectic_spectrum, purity by is_pure.
template <typename Scalar = double>
class CovarianceMatrix {
 public:
  using MatrixType = Matrix<Scalar>;

  explicit CovarianceMatrix(MatrixType sigma, const Tolerances& tol = kDefaultTolerances)
      : sigma_(std::move(sigma)) {
    if (sigma_.rows() != sigma_.cols())
      throw std::invalid_argument("covariance matrix must be square");
    n_ = detail::modes_of(sigma_.rows(), "covariance matrix");
    if (!sigma_.allFinite()) throw std::invalid_argument("covariance matrix has non-finite entries");
    const auto asym = detail::max_asymmetry(sigma_);
    if (asym > Scalar(tol.symmetry))
      throw std::invalid_argument("covariance matrix is not symmetric (max asymmetry " +
                                  std::to_string(static_cast<double>(asym)) + ")");
  }

  static CovarianceMatrix vacuum(Index n) {
    if (n < 1) throw std::invalid_argument("vacuum: mode count must be >= 1");
    return CovarianceMatrix(MatrixType::Identity(2 * n, 2 * n));
  }

  Index modes() const noexcept { return n_; }
  const MatrixType& matrix() const noexcept { return sigma_; }

 private:
  MatrixType sigma_;
  Index n_ = 0;
};

using Covariance = CovarianceMatrix<double>;

/// Strictly increasing, 1-based list of mode indices drawn from {1, ..., n}.
class ModeSubset {
 public:
  ModeSubset(Index n, std::vector<Index> indices) : n_(n), indices_(std::move(indices)) {
    if (n_ < 1) throw std::invalid_argument("ModeSubset: ambient mode count must be >= 1");
    if (indices_.empty()) throw std::invalid_argument("ModeSubset: empty subset");
    for (std::size_t i = 0; i < indices_.size(); ++i) {
      if (indices_[i] < 1 || indices_[i] > n_)
        throw std::invalid_argument("ModeSubset: index " + std::to_string(indices_[i]) +
                                    " out of range [1, " + std::to_string(n_) + "]");
      if (i > 0 && indices_[i] <= indices_[i - 1])
        throw std::invalid_argument("ModeSubset: indices must be strictly increasing");
    }
  }

  Index ambient_modes() const noexcept { return n_; }
  Index size() const noexcept { return static_cast<Index>(indices_.size()); }
  const std::vector<Index>& indices() const noexcept { return indices_; }
  bool is_full() const noexcept { return size() == n_; }

  /// Remaining modes; throws if this subset already covers every mode.
  ModeSubset complement() const {
    std::vector<Index> rest;
    for (Index m = 1, j = 0; m <= n_; ++m) {
      if (j < size() && indices_[static_cast<std::size_t>(j)] == m) {
        ++j;
        continue;
      }
      rest.push_back(m);
    }
    return ModeSubset(n_, std::move(rest));
  }

  friend bool operator==(const ModeSubset&, const ModeSubset&) = default;
  friend bool operator<(const ModeSubset& a, const ModeSubset& b) {
    return std::lexicographical_compare(a.indices_.begin(), a.indices_.end(), b.indices_.begin(),
                                        b.indices_.end());
  }

 private:
  Index n_;
  std::vector<Index> indices_;
};

/// Restriction of sigma to the modes in `subset`, repacked as (q..., p...).
template <typename Derived>
Matrix<typename Derived::Scalar> reduce(const Eigen::MatrixBase<Derived>& sigma,
                                        const ModeSubset& subset) {
  const Index n = detail::modes_of(sigma.rows(), "reduce");
  if (subset.ambient_modes() != n)
    throw std::invalid_argument("reduce: subset was built for " +
                                std::to_string(subset.ambient_modes()) + " modes, matrix has " +
                                std::to_string(n));
  const Index k = subset.size();
  std::vector<Index> rows(static_cast<std::size_t>(2 * k));
  for (Index i = 0; i < k; ++i) {
    const Index m = subset.indices()[static_cast<std::size_t>(i)] - 1;
    rows[static_cast<std::size_t>(i)] = m;
    rows[static_cast<std::size_t>(i + k)] = m + n;
  }
  return sigma(rows, rows);
}

template <typename Scalar>
CovarianceMatrix<Scalar> reduce(const CovarianceMatrix<Scalar>& sigma, const ModeSubset& subset) {
  return CovarianceMatrix<Scalar>(reduce(sigma.matrix(), subset));
}

/// Symplectic eigenvalues, descending.
template <typename Scalar = double>
struct SymplecticSpectrum {
  Vector<Scalar> values;
};

/// Williamson spectrum of a symmetric matrix in (q, p) ordering.
///
/// The eigenvalues of J sigma come in pairs +-i nu; their moduli are sorted and
/// each pair is averaged. A single mode uses nu = sqrt(det sigma) directly.
/// Values within tol.physical below 1 are clamped to 1.
template <typename Derived>
SymplecticSpectrum<typename Derived::Scalar> symplectic_spectrum(
    const Eigen::MatrixBase<Derived>& sigma, const Tolerances& tol = kDefaultTolerances) {
  using Scalar = typename Derived::Scalar;
  if (sigma.rows() != sigma.cols())
    throw std::invalid_argument("symplectic_spectrum: matrix must be square");
  const Index n = detail::modes_of(sigma.rows(), "symplectic_spectrum");
  if (detail::max_asymmetry(sigma) > Scalar(tol.symmetry))
    throw std::invalid_argument("symplectic_spectrum: matrix is not symmetric");

  Vector<Scalar> nu(n);
  if (n == 1) {
    const Scalar det = sigma(0, 0) * sigma(1, 1) - sigma(0, 1) * sigma(1, 0);
    if (det < Scalar(0))
      throw UnphysicalStateError("symplectic_spectrum: negative determinant");
    nu(0) = std::sqrt(det);
  } else {
    const Matrix<Scalar> Jsigma = symplectic_form<Scalar>(n) * sigma;
    Eigen::EigenSolver<Matrix<Scalar>> solver(Jsigma, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
      throw std::runtime_error("symplectic_spectrum: eigensolver did not converge");
    Vector<Scalar> moduli = solver.eigenvalues().cwiseAbs();
    std::sort(moduli.begin(), moduli.end(), std::greater<Scalar>());
    for (Index i = 0; i < n; ++i) nu(i) = Scalar(0.5) * (moduli(2 * i) + moduli(2 * i + 1));
  }

  for (Index i = 0; i < n; ++i) {
    if (nu(i) < Scalar(1) - Scalar(tol.physical))
      throw UnphysicalStateError("symplectic_spectrum: symplectic eigenvalue " +
                                 std::to_string(static_cast<double>(nu(i))) + " < 1");
    if (nu(i) < Scalar(1)) nu(i) = Scalar(1);
  }
  return {std::move(nu)};
}

template <typename Scalar>
SymplecticSpectrum<Scalar> symplectic_spectrum(const CovarianceMatrix<Scalar>& sigma,
                                               const Tolerances& tol = kDefaultTolerances) {
  return symplectic_spectrum(sigma.matrix(), tol);
}

/// Tr(sigma) / 2n.
template <typename Derived>
typename Derived::Scalar average_energy_per_mode(const Eigen::MatrixBase<Derived>& sigma) {
  return sigma.trace() / typename Derived::Scalar(sigma.rows());
}

template <typename Scalar>
Scalar average_energy_per_mode(const CovarianceMatrix<Scalar>& sigma) {
  return average_energy_per_mode(sigma.matrix());
}

/// True iff ||(J sigma)^2 + I||_F <= tol.purity.
template <typename Derived>
bool is_pure(const Eigen::MatrixBase<Derived>& sigma, const Tolerances& tol = kDefaultTolerances) {
  using Scalar = typename Derived::Scalar;
  const Index n = detail::modes_of(sigma.rows(), "is_pure");
  const Matrix<Scalar> Jsigma = symplectic_form<Scalar>(n) * sigma;
  const Matrix<Scalar> residual = Jsigma * Jsigma + Matrix<Scalar>::Identity(2 * n, 2 * n);
  return residual.norm() <= Scalar(tol.purity);
}

template <typename Scalar>
bool is_pure(const CovarianceMatrix<Scalar>& sigma, const Tolerances& tol = kDefaultTolerances) {
  return is_pure(sigma.matrix(), tol);
}

/// Membership in K(n) = Sp(2n, R) intersected with O(2n).
template <typename Derived>
bool is_orthosymplectic(const Eigen::MatrixBase<Derived>& M,
                        const Tolerances& tol = kDefaultTolerances) {
  using Scalar = typename Derived::Scalar;
  if (M.rows() != M.cols()) throw std::invalid_argument("is_orthosymplectic: matrix must be square");
  const Index n = detail::modes_of(M.rows(), "is_orthosymplectic");
  const Matrix<Scalar> J = symplectic_form<Scalar>(n);
  const Scalar orth = (M * M.transpose() - Matrix<Scalar>::Identity(2 * n, 2 * n)).norm();
  const Scalar symp = (M * J * M.transpose() - J).norm();
  return orth <= Scalar(tol.symmetry) && symp <= Scalar(tol.symmetry);
}

}  // namespace gaussggm

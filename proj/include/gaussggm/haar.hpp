// SPDX-License-Identifier: Apache-2.0
//
// Haar-uniform pure Gaussian states on a fixed average-energy-per-mode shell.
//
// A pure state is sigma = O Gamma O^T with O a passive (orthogonal symplectic)
// transformation and Gamma = diag(z_1..z_n) (+) diag(1/z_1..1/z_n). O is the
// real image of a Haar-random unitary, and Gamma is fixed by the energy shell
// (1/2n) sum(z_i + 1/z_i) = nu_bar.
#pragma once

#include <complex>
#include <cstdint>
#include <variant>
#include <vector>

#include "gaussggm/random.hpp"
#include "gaussggm/symplectic.hpp"

namespace gaussggm {

using Complex = std::complex<double>;
using UnitaryMatrix = Eigen::MatrixXcd;

inline constexpr double kUnitaryTolerance = 1e-10;
inline constexpr double kShellTolerance = 1e-10;

/// Haar-random n x n unitary.
///
/// Stream consumption order: the Ginibre matrix is filled column by column,
/// real part then imaginary part of each entry. The QR factor is phase-fixed
/// so that R has a positive real diagonal.
UnitaryMatrix sample_haar_unitary(Index n, RandomStream& stream);

/// Real 2n x 2n image [[Re U, Im U], [-Im U, Re U]] of a unitary.
template <typename Derived>
Matrix<typename Derived::RealScalar> embed_unitary(const Eigen::MatrixBase<Derived>& U,
                                                   double tol = kUnitaryTolerance) {
  using Real = typename Derived::RealScalar;
  if (U.rows() != U.cols() || U.rows() < 1)
    throw std::invalid_argument("embed_unitary: matrix must be square and non-empty");
  const Index n = U.rows();
  const auto defect = (U.adjoint() * U - Derived::PlainObject::Identity(n, n)).norm();
  if (defect > Real(tol))
    throw std::invalid_argument("embed_unitary: input is not unitary (defect " +
                                std::to_string(static_cast<double>(defect)) + ")");
  Matrix<Real> O(2 * n, 2 * n);
  O.topLeftCorner(n, n) = U.real();
  O.topRightCorner(n, n) = U.imag();
  O.bottomLeftCorner(n, n) = -U.imag();
  O.bottomRightCorner(n, n) = U.real();
  return O;
}

/// Squeezing parameters z_i >= 1 lying on the energy shell nu_bar.
struct SqueezingSpectrum {
  Eigen::VectorXd z;
  double nu_bar = 1.0;

  Index modes() const noexcept { return z.size(); }
  /// Diagonal of Gamma: (z_1..z_n, 1/z_1..1/z_n).
  Eigen::VectorXd gamma_diagonal() const;
};

/// Energy residual (1/2n) sum(z_i + 1/z_i) - nu_bar.
double shell_residual(const Eigen::VectorXd& z, double nu_bar);

/// Root z >= 1 of (z + 1/z)/2 = nu_bar.
double shell_squeezing(double nu_bar);

/// Every mode squeezed by the same z* = nu_bar + sqrt(nu_bar^2 - 1).
SqueezingSpectrum uniform_squeezing(Index n, double nu_bar);

/// Accepts a user spectrum on the shell. Entries in (0, 1) are replaced by their
/// reciprocal; entries <= 0 are invalid. Throws ConstraintViolation when the
/// shell residual exceeds kShellTolerance.
SqueezingSpectrum validate_squeezing(std::vector<double> z, double nu_bar);

struct UniformGamma {
  friend bool operator==(const UniformGamma&, const UniformGamma&) = default;
};
using GammaPolicy = std::variant<UniformGamma, std::vector<double>>;

struct RandomStateSpec {
  Index n = 3;
  double nu_bar = 2.6;
  std::uint64_t seed = 42;
  GammaPolicy gamma = UniformGamma{};

  /// Throws std::invalid_argument on n < 1 or nu_bar < 1.
  void validate() const;
  SqueezingSpectrum squeezing() const;
};

/// Haar-random element of K(n).
Eigen::MatrixXd sample_orthosymplectic(Index n, RandomStream& stream);

/// O Gamma O^T, symmetrized.
Covariance pure_state(const Eigen::MatrixXd& O, const SqueezingSpectrum& squeezing);

Covariance sample_state(const SqueezingSpectrum& squeezing, RandomStream& stream);
Covariance sample_state(const RandomStateSpec& spec, RandomStream& stream);
/// Draw from the root stream of spec.seed.
Covariance sample_state(const RandomStateSpec& spec);

}  // namespace gaussggm

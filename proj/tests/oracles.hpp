// SPDX-License-Identifier: Apache-2.0
//
// Reference computations used only by the tests. None of these call into the
// library's spectrum or GGM code.
#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <vector>

namespace oracle {

/// Two-mode squeezed vacuum in (q1, q2, p1, p2) ordering.
inline Eigen::MatrixXd tmsv_covariance(double r) {
  const double c = std::cosh(2 * r), s = std::sinh(2 * r);
  Eigen::MatrixXd sigma(4, 4);
  sigma << c, s, 0, 0,  //
      s, c, 0, 0,       //
      0, 0, c, -s,      //
      0, 0, -s, c;
  return sigma;
}

/// Largest Schmidt coefficient of exp(r (a^dag b^dag - a b)) |0,0> computed in
/// a truncated Fock space. The two-mode squeeze generator only couples |k,k>
/// to |k+-1,k+-1>, so the state lives in that ladder; the coefficient matrix
/// C_{jk} = <j,k|psi> is assembled on the full grid and its singular values
/// give the Schmidt coefficients.
inline double tmsv_max_schmidt_fock(double r, int cutoff = 400) {
  Eigen::MatrixXd generator = Eigen::MatrixXd::Zero(cutoff, cutoff);
  for (int k = 0; k + 1 < cutoff; ++k) {
    generator(k + 1, k) = r * (k + 1);  // a^dag b^dag |k,k> = (k+1)|k+1,k+1>
    generator(k, k + 1) = -r * (k + 1);  // a b |k+1,k+1> = (k+1)|k,k>
  }
  Eigen::VectorXd vacuum = Eigen::VectorXd::Zero(cutoff);
  vacuum(0) = 1.0;
  const Eigen::VectorXd ladder = generator.exp() * vacuum;

  Eigen::MatrixXd coeff = Eigen::MatrixXd::Zero(cutoff, cutoff);
  for (int k = 0; k < cutoff; ++k) coeff(k, k) = ladder(k);
  coeff /= coeff.norm();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(coeff);
  const double top = svd.singularValues()(0);
  return top * top;
}

/// Symplectic eigenvalues via the Hermitian matrix sqrt(sigma) (iJ) sqrt(sigma),
/// whose eigenvalues are +-nu_i. Requires sigma positive definite.
inline std::vector<double> symplectic_eigenvalues_hermitian(const Eigen::MatrixXd& sigma) {
  const Eigen::Index n = sigma.rows() / 2;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  J.topRightCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  J.bottomLeftCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma);
  const Eigen::MatrixXd root = es.operatorSqrt();
  const Eigen::MatrixXcd h =
      root.cast<std::complex<double>>() * (std::complex<double>(0, 1) * J.cast<std::complex<double>>()) *
      root.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> hs(0.5 * (h + h.adjoint()));
  std::vector<double> nu;
  for (Eigen::Index i = 0; i < 2 * n; ++i)
    if (hs.eigenvalues()(i) > 0) nu.push_back(hs.eigenvalues()(i));
  std::sort(nu.rbegin(), nu.rend());
  nu.resize(static_cast<std::size_t>(n), 1.0);
  return nu;
}

/// GGM by brute force over every proper bipartition (bitmask), using the
/// Hermitian spectrum route.
inline double ggm_brute_force(const Eigen::MatrixXd& sigma) {
  const int n = static_cast<int>(sigma.rows() / 2);
  double best = 0.0;
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    std::vector<int> rows;
    for (int m = 0; m < n; ++m)
      if (mask & (1u << m)) rows.push_back(m);
    const int k = static_cast<int>(rows.size());
    for (int i = 0; i < k; ++i) rows.push_back(rows[static_cast<std::size_t>(i)] + n);
    const Eigen::MatrixXd sub = sigma(rows, rows);
    double product = 1.0;
    for (double nu : symplectic_eigenvalues_hermitian(sub)) product *= 2.0 / (1.0 + std::max(nu, 1.0));
    best = std::max(best, product);
  }
  return 1.0 - best;
}

}  // namespace oracle

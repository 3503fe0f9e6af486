// SPDX-License-Identifier: Apache-2.0
#include "gaussggm/haar.hpp"

#include <cmath>
#include <sstream>

namespace gaussggm {

UnitaryMatrix sample_haar_unitary(Index n, RandomStream& stream) {
  if (n < 1) throw std::invalid_argument("sample_haar_unitary: dimension must be >= 1");
  UnitaryMatrix ginibre(n, n);
  for (Index col = 0; col < n; ++col) {
    for (Index row = 0; row < n; ++row) {
      const double re = stream.normal();
      const double im = stream.normal();
      ginibre(row, col) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<UnitaryMatrix> qr(ginibre);
  UnitaryMatrix q = qr.householderQ();
  const auto& r = qr.matrixQR();
  for (Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    // A zero pivot has probability zero; leave the column as is.
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

Eigen::VectorXd SqueezingSpectrum::gamma_diagonal() const {
  Eigen::VectorXd diag(2 * z.size());
  diag.head(z.size()) = z;
  diag.tail(z.size()) = z.cwiseInverse();
  return diag;
}

double shell_residual(const Eigen::VectorXd& z, double nu_bar) {
  const double energy = (z.sum() + z.cwiseInverse().sum()) / (2.0 * static_cast<double>(z.size()));
  return energy - nu_bar;
}

double shell_squeezing(double nu_bar) {
  if (!(nu_bar >= 1.0)) throw std::invalid_argument("nu_bar must be >= 1");
  return nu_bar + std::sqrt(nu_bar * nu_bar - 1.0);
}

SqueezingSpectrum uniform_squeezing(Index n, double nu_bar) {
  if (n < 1) throw std::invalid_argument("uniform_squeezing: mode count must be >= 1");
  return {Eigen::VectorXd::Constant(n, shell_squeezing(nu_bar)), nu_bar};
}

SqueezingSpectrum validate_squeezing(std::vector<double> z, double nu_bar) {
  if (z.empty()) throw std::invalid_argument("validate_squeezing: empty spectrum");
  if (!(nu_bar >= 1.0)) throw std::invalid_argument("validate_squeezing: nu_bar must be >= 1");
  for (double& zi : z) {
    if (!(zi > 0.0) || !std::isfinite(zi))
      throw std::invalid_argument("validate_squeezing: squeezing values must be positive");
    if (zi < 1.0) zi = 1.0 / zi;
  }
  Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(z.data(), static_cast<Index>(z.size()));
  const double residual = shell_residual(v, nu_bar);
  if (std::abs(residual) > kShellTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "squeezing spectrum is off the energy shell nu_bar=" << nu_bar
        << " (residual " << residual << ")";
    throw ConstraintViolation(msg.str(), residual);
  }
  return {std::move(v), nu_bar};
}

void RandomStateSpec::validate() const {
  if (n < 1) throw std::invalid_argument("state spec: n must be >= 1");
  if (!(nu_bar >= 1.0)) throw std::invalid_argument("state spec: nu_bar must be >= 1");
  if (const auto* z = std::get_if<std::vector<double>>(&gamma)) {
    if (static_cast<Index>(z->size()) != n)
      throw std::invalid_argument("state spec: gamma list has " + std::to_string(z->size()) +
                                  " entries, expected " + std::to_string(n));
  }
}

SqueezingSpectrum RandomStateSpec::squeezing() const {
  validate();
  if (const auto* z = std::get_if<std::vector<double>>(&gamma)) return validate_squeezing(*z, nu_bar);
  return uniform_squeezing(n, nu_bar);
}

Eigen::MatrixXd sample_orthosymplectic(Index n, RandomStream& stream) {
  return embed_unitary(sample_haar_unitary(n, stream));
}

Covariance pure_state(const Eigen::MatrixXd& O, const SqueezingSpectrum& squeezing) {
  const Eigen::VectorXd diag = squeezing.gamma_diagonal();
  if (O.rows() != diag.size() || O.cols() != diag.size())
    throw std::invalid_argument("pure_state: passive transform and squeezing disagree on n");
  if ((diag.array() == 1.0).all()) return Covariance::vacuum(squeezing.modes());
  Eigen::MatrixXd sigma = (O * diag.asDiagonal()) * O.transpose();
  sigma = 0.5 * (sigma + sigma.transpose()).eval();
  return Covariance(std::move(sigma));
}

Covariance sample_state(const SqueezingSpectrum& squeezing, RandomStream& stream) {
  return pure_state(sample_orthosymplectic(squeezing.modes(), stream), squeezing);
}

Covariance sample_state(const RandomStateSpec& spec, RandomStream& stream) {
  return sample_state(spec.squeezing(), stream);
}

Covariance sample_state(const RandomStateSpec& spec) {
  RandomStream stream(spec.seed);
  return sample_state(spec, stream);
}

}  // namespace gaussggm

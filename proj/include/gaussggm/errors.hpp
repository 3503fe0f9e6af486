// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace gaussggm {

/// Raised when a covariance matrix has a symplectic eigenvalue below one.
class UnphysicalStateError : public std::domain_error {
 public:
  explicit UnphysicalStateError(const std::string& what) : std::domain_error(what) {}
};

/// Raised when a squeezing spectrum is off the requested energy shell.
class ConstraintViolation : public std::domain_error {
 public:
  ConstraintViolation(const std::string& what, double residual)
      : std::domain_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Raised when an operation defined only for pure states receives a mixed one.
class UnsupportedStateError : public std::domain_error {
 public:
  explicit UnsupportedStateError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace gaussggm

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace d2dmimo {

/// A parameter lies outside the domain of the model (alpha_d <= 2, N < 2, ...).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// The requested D2D ASE cannot be reached at any transmit power for the given
/// density. Carries the interference-limited ceiling at that density (per m^2).
class InfeasibleAse : public std::runtime_error {
 public:
  InfeasibleAse(const std::string& what, double limit_ase)
      : std::runtime_error(what), limit_ase_(limit_ase) {}

  double limit_ase() const noexcept { return limit_ase_; }

 private:
  double limit_ase_;
};

/// No positive CUE SE survives the dense-network limit at this D2D ASE.
class NoPositiveLimit : public std::runtime_error {
 public:
  explicit NoPositiveLimit(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace d2dmimo

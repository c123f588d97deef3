// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace ssct {

/// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A documented precondition of an operation was violated by the caller.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Detector or experiment configuration violates an invariant.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a recursion loses too many digits to be trusted.
///
/// `certified_n()` is the largest sample index for which every quantity
/// stayed inside its rounding-error budget.
class InstabilityError : public std::runtime_error {
 public:
  InstabilityError(const std::string& what, int certified_n)
      : std::runtime_error(what), certified_n_(certified_n) {}

  int certified_n() const noexcept { return certified_n_; }

 private:
  int certified_n_;
};

/// Grid recursion did not converge between n and 2n-1 points.
class RefinementError : public std::runtime_error {
 public:
  RefinementError(const std::string& what, double drift)
      : std::runtime_error(what), drift_(drift) {}

  double drift() const noexcept { return drift_; }

 private:
  double drift_;
};

/// An energy stream ran dry before the detector reached a decision.
class StreamExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ssct

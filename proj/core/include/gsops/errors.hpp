#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gsops {

/// Argument outside the mathematical domain of an operation (x outside [0,1],
/// a singular T_{n,k} evaluation, an index out of range).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Requested quantity has no closed form housed in the library.
class UnsupportedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A lemma or theorem was asked to run on a function outside its hypotheses.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two routes that must agree exactly (or an identity that must vanish) did
/// not. Always a bug, never a numerical accident.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Non-finite integrand or a solver that failed to converge.
class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A function evaluated to NaN or infinity where a finite value is required.
class NonFiniteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive integration gave up before reaching the requested tolerance.
class ToleranceError : public std::runtime_error {
 public:
  ToleranceError(const std::string& what, std::vector<double> best_estimate, double achieved)
      : std::runtime_error(what), best_estimate_(std::move(best_estimate)), achieved_(achieved) {}

  const std::vector<double>& best_estimate() const noexcept { return best_estimate_; }
  double achieved() const noexcept { return achieved_; }

 private:
  std::vector<double> best_estimate_;
  double achieved_;
};

}  // namespace gsops

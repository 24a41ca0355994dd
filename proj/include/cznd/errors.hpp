#pragma once

#include <stdexcept>
#include <string>

namespace cznd {

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Query needs data the problem does not carry (e.g. residual without X*).
class UnsupportedQueryError : public Error {
 public:
  using Error::Error;
};

// Non-finite values or a failed factorization. Carries the time at which it
// happened when one is known.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what, double tau = 0.0, bool has_tau = false)
      : Error(has_tau ? what + " (tau=" + std::to_string(tau) + ")" : what),
        tau_(tau),
        has_tau_(has_tau) {}

  double tau() const noexcept { return tau_; }
  bool has_tau() const noexcept { return has_tau_; }

  // Same error with `prefix` prepended to the message.
  NumericalError with_context(const std::string& prefix) const {
    return NumericalError(prefix + what(), tau_, has_tau_, Verbatim{});
  }

 private:
  struct Verbatim {};
  NumericalError(const std::string& what, double tau, bool has_tau, Verbatim)
      : Error(what), tau_(tau), has_tau_(has_tau) {}

  double tau_;
  bool has_tau_;
};

class StiffnessError : public NumericalError {
 public:
  StiffnessError(const std::string& what, double tau) : NumericalError(what, tau, true) {}
};

class BudgetError : public NumericalError {
 public:
  BudgetError(const std::string& what, double tau) : NumericalError(what, tau, true) {}
};

// An exact solution that does not satisfy its own equation.
class TranscriptionError : public Error {
 public:
  TranscriptionError(const std::string& example, double worst_tau, double worst_residual)
      : Error("example '" + example + "' fails self-consistency: residual " +
              std::to_string(worst_residual) + " at tau=" + std::to_string(worst_tau)),
        example_(example),
        worst_tau_(worst_tau),
        worst_residual_(worst_residual) {}

  const std::string& example() const noexcept { return example_; }
  double worst_tau() const noexcept { return worst_tau_; }
  double worst_residual() const noexcept { return worst_residual_; }

 private:
  std::string example_;
  double worst_tau_;
  double worst_residual_;
};

class ComparabilityError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace cznd

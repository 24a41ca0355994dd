#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cznd/clinalg.hpp"

namespace cznd {

using clinalg::ComplexMatrix;
using clinalg::Index;

using MatrixFunction = std::function<ComplexMatrix(double)>;

// Coefficients of X F - A conj(X) = C and their time derivatives at one tau.
struct Coefficients {
  ComplexMatrix f, a, c;
  ComplexMatrix df, da, dc;
};

// Everything needed to build a TimeVariantProblem. Missing derivatives are
// filled in with central differences (step kDerivativeStep).
struct ProblemDefinition {
  std::string name;
  Index m = 0;  // rows of X
  Index n = 0;  // cols of X
  MatrixFunction f, a, c;
  MatrixFunction df, da, dc;
  MatrixFunction exact;  // optional X*(tau)
};

inline constexpr double kDerivativeStep = 1e-6;

// A time-variant Sylvester-conjugate equation X(τ)F(τ) - A(τ)conj(X(τ)) = C(τ).
//
// Immutable after construction. The constructor spot-checks that every
// supplied function returns the declared shape on a few τ in [0, 10]; it
// does not check that X* solves the equation, see check_consistency().
class TimeVariantProblem {
 public:
  explicit TimeVariantProblem(ProblemDefinition def);

  const std::string& name() const { return def_.name; }
  Index m() const { return def_.m; }
  Index n() const { return def_.n; }
  bool has_exact() const { return static_cast<bool>(def_.exact); }
  bool has_analytic_derivatives() const { return analytic_derivatives_; }

  /// Throws DomainError for tau < 0.
  Coefficients evaluate(double tau) const;

  /// X*(tau). Throws UnsupportedQueryError when no exact solution is known.
  ComplexMatrix exact(double tau) const;

  /// ||X - X*(tau)||_F.
  double residual(const ComplexMatrix& x, double tau) const;

  /// X F - A conj(X) - C at tau.
  ComplexMatrix equation_error(const ComplexMatrix& x, double tau) const;
  double equation_residual(const ComplexMatrix& x, double tau) const;

 private:
  void check_shape(const ComplexMatrix& x, const char* what) const;

  ProblemDefinition def_;
  bool analytic_derivatives_ = true;
};

// Central difference of f at tau with step h; switches to a second-order
// one-sided stencil when tau < h so f is never sampled at negative time.
ComplexMatrix numeric_derivative(const MatrixFunction& f, double tau, double h = kDerivativeStep);

struct ConsistencyReport {
  std::string name;
  double worst_tau = 0.0;
  double worst_residual = 0.0;
  bool passed = false;
};

/// Evaluates ||X* F - A conj(X*) - C||_F at `samples` equispaced points of
/// [t0, t1] and reports the worst one.
ConsistencyReport check_consistency(const TimeVariantProblem& problem, int samples = 101,
                                    double tolerance = 1e-9, double t0 = 0.0, double t1 = 10.0);

struct DerivativeReport {
  double max_abs_error = 0.0;
  double worst_tau = 0.0;
};

/// Max-abs gap between evaluate()'s derivatives and central differences of
/// F, A, C over the given sample times.
DerivativeReport check_derivatives(const TimeVariantProblem& problem,
                                   const std::vector<double>& taus, double h = kDerivativeStep);

// Builds a problem with a prescribed solution: C := X* F - A conj(X*), with
// dC from the product rule. Useful for synthetic tests.
TimeVariantProblem manufactured_problem(std::string name, MatrixFunction f, MatrixFunction df,
                                        MatrixFunction a, MatrixFunction da,
                                        MatrixFunction exact, MatrixFunction dexact);

}  // namespace cznd

#include "cznd/problem.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <utility>

namespace cznd {

using clinalg::conj;
using clinalg::frobenius;

namespace {

void expect_shape(const MatrixFunction& fn, const std::string& problem, const char* what,
                  Index rows, Index cols) {
  constexpr std::array<double, 3> kProbe = {0.0, 1.3, 10.0};
  for (double tau : kProbe) {
    const ComplexMatrix value = fn(tau);
    if (value.rows() != rows || value.cols() != cols) {
      std::ostringstream os;
      os << "problem '" << problem << "': " << what << "(" << tau << ") is " << value.rows()
         << "x" << value.cols() << ", expected " << rows << "x" << cols;
      throw ShapeError(os.str());
    }
  }
}

MatrixFunction differentiated(MatrixFunction f) {
  return [f = std::move(f)](double tau) { return numeric_derivative(f, tau); };
}

}  // namespace

ComplexMatrix numeric_derivative(const MatrixFunction& f, double tau, double h) {
  if (tau >= h) {
    return (f(tau + h) - f(tau - h)) / (2.0 * h);
  }
  return (-3.0 * f(tau) + 4.0 * f(tau + h) - f(tau + 2.0 * h)) / (2.0 * h);
}

TimeVariantProblem::TimeVariantProblem(ProblemDefinition def) : def_(std::move(def)) {
  if (def_.m <= 0 || def_.n <= 0) {
    throw ShapeError("problem '" + def_.name + "': dimensions must be positive");
  }
  if (!def_.f || !def_.a || !def_.c) {
    throw Error("problem '" + def_.name + "': F, A and C are required");
  }
  if (!def_.df || !def_.da || !def_.dc) analytic_derivatives_ = false;
  if (!def_.df) def_.df = differentiated(def_.f);
  if (!def_.da) def_.da = differentiated(def_.a);
  if (!def_.dc) def_.dc = differentiated(def_.c);

  const Index m = def_.m;
  const Index n = def_.n;
  expect_shape(def_.f, def_.name, "F", n, n);
  expect_shape(def_.a, def_.name, "A", m, m);
  expect_shape(def_.c, def_.name, "C", m, n);
  expect_shape(def_.df, def_.name, "dF", n, n);
  expect_shape(def_.da, def_.name, "dA", m, m);
  expect_shape(def_.dc, def_.name, "dC", m, n);
  if (def_.exact) expect_shape(def_.exact, def_.name, "X*", m, n);
}

Coefficients TimeVariantProblem::evaluate(double tau) const {
  if (!(tau >= 0.0)) {
    throw DomainError("problem '" + def_.name + "': tau must be >= 0, got " +
                      std::to_string(tau));
  }
  return Coefficients{def_.f(tau), def_.a(tau), def_.c(tau),
                      def_.df(tau), def_.da(tau), def_.dc(tau)};
}

ComplexMatrix TimeVariantProblem::exact(double tau) const {
  if (!def_.exact) {
    throw UnsupportedQueryError("problem '" + def_.name + "' has no exact solution");
  }
  if (!(tau >= 0.0)) {
    throw DomainError("problem '" + def_.name + "': tau must be >= 0");
  }
  return def_.exact(tau);
}

void TimeVariantProblem::check_shape(const ComplexMatrix& x, const char* what) const {
  if (x.rows() != def_.m || x.cols() != def_.n) {
    std::ostringstream os;
    os << what << ": X is " << x.rows() << "x" << x.cols() << ", problem '" << def_.name
       << "' expects " << def_.m << "x" << def_.n;
    throw ShapeError(os.str());
  }
}

double TimeVariantProblem::residual(const ComplexMatrix& x, double tau) const {
  check_shape(x, "residual");
  return frobenius(ComplexMatrix(x - exact(tau)));
}

ComplexMatrix TimeVariantProblem::equation_error(const ComplexMatrix& x, double tau) const {
  check_shape(x, "equation_error");
  if (!(tau >= 0.0)) {
    throw DomainError("problem '" + def_.name + "': tau must be >= 0");
  }
  return x * def_.f(tau) - def_.a(tau) * conj(x) - def_.c(tau);
}

double TimeVariantProblem::equation_residual(const ComplexMatrix& x, double tau) const {
  return frobenius(equation_error(x, tau));
}

ConsistencyReport check_consistency(const TimeVariantProblem& problem, int samples,
                                    double tolerance, double t0, double t1) {
  ConsistencyReport report;
  report.name = problem.name();
  if (!problem.has_exact()) {
    throw UnsupportedQueryError("problem '" + problem.name() + "' has no exact solution");
  }
  if (samples < 2) samples = 2;
  for (int k = 0; k < samples; ++k) {
    const double tau = t0 + (t1 - t0) * static_cast<double>(k) / (samples - 1);
    const double r = problem.equation_residual(problem.exact(tau), tau);
    if (!(r <= report.worst_residual) || k == 0) {
      report.worst_residual = r;
      report.worst_tau = tau;
    }
  }
  report.passed = report.worst_residual <= tolerance;
  return report;
}

DerivativeReport check_derivatives(const TimeVariantProblem& problem,
                                   const std::vector<double>& taus, double h) {
  DerivativeReport report;
  auto track = [&](const ComplexMatrix& analytic, const ComplexMatrix& fd, double tau) {
    const double gap = (analytic - fd).cwiseAbs().maxCoeff();
    if (gap > report.max_abs_error) {
      report.max_abs_error = gap;
      report.worst_tau = tau;
    }
  };
  for (double tau : taus) {
    const Coefficients at = problem.evaluate(tau);
    const Coefficients hi = problem.evaluate(tau + h);
    const Coefficients lo = problem.evaluate(tau - h);
    track(at.df, (hi.f - lo.f) / (2.0 * h), tau);
    track(at.da, (hi.a - lo.a) / (2.0 * h), tau);
    track(at.dc, (hi.c - lo.c) / (2.0 * h), tau);
  }
  return report;
}

TimeVariantProblem manufactured_problem(std::string name, MatrixFunction f, MatrixFunction df,
                                        MatrixFunction a, MatrixFunction da,
                                        MatrixFunction exact, MatrixFunction dexact) {
  ProblemDefinition def;
  def.name = std::move(name);
  const ComplexMatrix x0 = exact(0.0);
  def.m = x0.rows();
  def.n = x0.cols();
  def.c = [f, a, exact](double tau) {
    const ComplexMatrix x = exact(tau);
    return ComplexMatrix(x * f(tau) - a(tau) * conj(x));
  };
  def.dc = [f, df, a, da, exact, dexact](double tau) {
    const ComplexMatrix x = exact(tau);
    const ComplexMatrix dx = dexact(tau);
    return ComplexMatrix(dx * f(tau) + x * df(tau) - da(tau) * conj(x) - a(tau) * conj(dx));
  };
  def.f = std::move(f);
  def.df = std::move(df);
  def.a = std::move(a);
  def.da = std::move(da);
  def.exact = std::move(exact);
  return TimeVariantProblem(std::move(def));
}

}  // namespace cznd

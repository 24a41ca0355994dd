#include "cznd/integrator.hpp"

#include <cmath>
#include <cstring>
#include <limits>

#include "doctest.h"

using namespace cznd;

namespace {

RealVector scalar(double v) { return RealVector::Constant(1, v); }

const DerivativeField decay = [](double, const RealVector& y) { return RealVector(-y); };

double decay_error(double rel_tol, double abs_tol) {
  IntegratorConfig c;
  c.rel_tol = rel_tol;
  c.abs_tol = abs_tol;
  c.max_step = 1.0;
  const Trajectory t = integrate(decay, scalar(1.0), 0.0, 1.0, c, {});
  return std::abs(t.states.back()(0) - std::exp(-1.0));
}

}  // namespace

TEST_CASE("config validation") {
  IntegratorConfig c;
  CHECK_NOTHROW(c.validate());
  c.rel_tol = 1e-15;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.abs_tol = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.max_step = -1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.max_steps = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("linspace") {
  const auto g = linspace(0.0, 10.0, 1001);
  REQUIRE(g.size() == 1001);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 10.0);
  CHECK(g[500] == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(linspace(2.0, 3.0, 1) == std::vector<double>{2.0});
}

TEST_CASE("exponential decay oracle") {
  const Trajectory t = integrate(decay, scalar(1.0), 0.0, 1.0, {}, {});
  REQUIRE(t.times.size() == 2);
  CHECK(t.times.front() == 0.0);
  CHECK(t.times.back() == 1.0);
  CHECK(std::abs(t.states.back()(0) - std::exp(-1.0)) <= 1e-6);
  CHECK(t.stats.accepted_steps >= 10);
  CHECK(t.stats.rhs_evaluations > 6 * t.stats.accepted_steps);
}

TEST_CASE("constant field") {
  const DerivativeField zero = [](double, const RealVector& y) { return RealVector::Zero(y.size()); };
  RealVector y0(3);
  y0 << 1.5, -2.25, 1e-300;
  const Trajectory t = integrate(zero, y0, 0.0, 10.0, {}, linspace(0.0, 10.0, 101));
  for (const RealVector& s : t.states) CHECK(s == y0);
}

TEST_CASE("sine oracle at sample points") {
  const DerivativeField cosine = [](double tau, const RealVector&) { return scalar(std::cos(tau)); };
  const auto times = linspace(0.0, 10.0, 1001);
  const Trajectory t = integrate(cosine, scalar(0.0), 0.0, 10.0, {}, times);
  REQUIRE(t.times == times);
  double worst = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    worst = std::max(worst, std::abs(t.states[k](0) - std::sin(times[k])));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("tightening tolerances reduces error") {
  std::vector<double> errors;
  for (int k = 0; k <= 10; ++k) {
    const double scale = std::ldexp(1.0, -k);
    errors.push_back(decay_error(1e-6 * scale, 1e-9 * scale));
  }
  for (std::size_t k = 1; k < errors.size(); ++k) {
    INFO("halving ", k, ": ", errors[k - 1], " -> ", errors[k]);
    CHECK(errors[k] < errors[k - 1]);
    if (k >= 2) CHECK(errors[k] * 2.0 <= errors[k - 2]);
  }
  CHECK(errors.back() * 256.0 <= errors.front());
}

TEST_CASE("determinism") {
  const DerivativeField rot = [](double tau, const RealVector& y) {
    RealVector d(2);
    d << -y(1) + 0.1 * std::sin(3 * tau), y(0) - 0.05 * y(1) * y(1);
    return d;
  };
  RealVector y0(2);
  y0 << 1.0, 0.0;
  const auto times = linspace(0.0, 10.0, 257);
  const Trajectory a = integrate(rot, y0, 0.0, 10.0, {}, times);
  const Trajectory b = integrate(rot, y0, 0.0, 10.0, {}, times);
  REQUIRE(a.states.size() == b.states.size());
  for (std::size_t k = 0; k < a.states.size(); ++k) {
    CHECK(std::memcmp(a.states[k].data(), b.states[k].data(), sizeof(double) * 2) == 0);
  }
  CHECK(a.stats.accepted_steps == b.stats.accepted_steps);
  CHECK(a.stats.rejected_steps == b.stats.rejected_steps);
}

TEST_CASE("samples on step boundaries return the stepped state") {
  IntegratorConfig c;
  c.record_steps = true;
  c.max_step = 0.25;
  c.rel_tol = 1.0;
  c.abs_tol = 1.0;
  c.initial_step = 0.25;
  const Trajectory steps = integrate(decay, scalar(1.0), 0.0, 2.0, c, {});
  REQUIRE(steps.step_times.size() >= 3);
  std::vector<double> interior(steps.step_times.begin() + 1, steps.step_times.end() - 1);
  const Trajectory t = integrate(decay, scalar(1.0), 0.0, 2.0, c, interior);
  REQUIRE(t.times.size() == steps.step_times.size());
  for (std::size_t k = 0; k < t.times.size(); ++k) {
    CHECK(t.times[k] == steps.step_times[k]);
    CHECK(t.states[k](0) == steps.step_states[k](0));
  }
}

TEST_CASE("dense output between steps") {
  IntegratorConfig c;
  c.max_step = 1.0;
  c.rel_tol = 1e-8;
  c.abs_tol = 1e-10;
  const auto times = linspace(0.0, 3.0, 301);
  const Trajectory t = integrate(decay, scalar(1.0), 0.0, 3.0, c, times);
  CHECK(t.stats.accepted_steps < 100);
  double worst = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    worst = std::max(worst, std::abs(t.states[k](0) - std::exp(-times[k])));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("argument errors") {
  CHECK_THROWS_AS(integrate(decay, scalar(1.0), 1.0, 1.0, {}, {}), ConfigError);
  CHECK_THROWS_AS(integrate(decay, scalar(1.0), 0.0, 1.0, {}, {0.5, 0.4}), ConfigError);
  CHECK_THROWS_AS(integrate(decay, scalar(1.0), 0.0, 1.0, {}, {1.5}), ConfigError);
  CHECK_THROWS_AS(integrate(decay, scalar(NAN), 0.0, 1.0, {}, {}), NumericalError);
}

TEST_CASE("budget exhaustion") {
  IntegratorConfig c;
  c.max_steps = 5;
  CHECK_THROWS_AS(integrate(decay, scalar(1.0), 0.0, 10.0, c, {}), BudgetError);
}

TEST_CASE("step underflow") {
  // Finite-time blow-up at tau = 1.
  const DerivativeField blowup = [](double, const RealVector& y) { return RealVector(y.array().square()); };
  try {
    integrate(blowup, scalar(1.0), 0.0, 2.0, {}, {});
    FAIL("expected StiffnessError");
  } catch (const StiffnessError& e) {
    CHECK(e.has_tau());
    CHECK(e.tau() == doctest::Approx(1.0).epsilon(1e-2));
  } catch (const NumericalError&) {
    // Overflow before underflow would also be a failure to detect stiffness.
    FAIL("blow-up reported as non-finite instead of stiffness");
  }
}

TEST_CASE("non-finite derivative") {
  const DerivativeField bad = [](double tau, const RealVector& y) {
    return tau > 0.5 ? RealVector::Constant(1, std::numeric_limits<double>::quiet_NaN()) : RealVector(-y);
  };
  try {
    integrate(bad, scalar(1.0), 0.0, 1.0, {}, {});
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(e.has_tau());
    CHECK(e.tau() > 0.5);
  }
}

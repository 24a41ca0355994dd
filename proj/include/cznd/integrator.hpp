#pragma once

#include <cstdint>
#include <vector>

#include "cznd/dynamics.hpp"

namespace cznd {

struct IntegratorConfig {
  double rel_tol = 1e-3;
  double abs_tol = 1e-6;
  double max_step = 0.1;
  double initial_step = 1e-3;
  std::int64_t max_steps = 10'000'000;
  // Keep every accepted step (time and state) in the trajectory.
  bool record_steps = false;

  void validate() const;  // throws ConfigError
};

struct IntegratorStats {
  std::int64_t accepted_steps = 0;
  std::int64_t rejected_steps = 0;
  std::int64_t rhs_evaluations = 0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<RealVector> states;
  IntegratorStats stats;
  // Only filled when IntegratorConfig::record_steps is set.
  std::vector<double> step_times;
  std::vector<RealVector> step_states;
};

/// Equispaced grid of `count` points on [t0, t1], endpoints exact.
std::vector<double> linspace(double t0, double t1, std::size_t count);

/// Dormand-Prince 5(4) with PI step control and 4th-order dense output.
///
/// States are reported at `sample_times` (ascending, inside [t0, t1]; the
/// endpoints are added if missing). A sample that coincides with an accepted
/// step boundary gets the stepped state itself, not an interpolant.
///
/// Throws StiffnessError when the step falls below 1e-14, BudgetError when
/// max_steps is exhausted, and NumericalError on a non-finite derivative.
Trajectory integrate(const DerivativeField& field, const RealVector& y0, double t0, double t1,
                     const IntegratorConfig& config, std::vector<double> sample_times);

}  // namespace cznd

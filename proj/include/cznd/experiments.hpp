#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cznd/integrator.hpp"
#include "cznd/problem.hpp"

namespace cznd {

// --- examples -------------------------------------------------------------

// The three built-in test problems, without the registration gate applied.
TimeVariantProblem example1();  // F 2x2 (600/400 diagonal), A 3x3, X 3x2
TimeVariantProblem example2();  // F 3x3 (400/200/300 diagonal), A 2x2, X 2x3
TimeVariantProblem example3();  // Example 1's structure at 2x2 with F diagonal 6/4

class ProblemRegistry {
 public:
  void add(TimeVariantProblem problem);
  const TimeVariantProblem& get(const std::string& name) const;  // throws ConfigError
  bool contains(const std::string& name) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, TimeVariantProblem> problems_;
};

/// Registry holding example1..3. Each must satisfy its exact solution to 1e-9
/// on 101 points of [0, 10]; throws TranscriptionError otherwise.
ProblemRegistry register_examples();

// --- runs -----------------------------------------------------------------

struct RunConfig {
  std::string example = "example1";
  Model model = Model::con_cznd1;
  double gamma = 1.0;
  std::uint64_t seed = 0;
  double init_lo = -5.0;
  double init_hi = 5.0;
  double t0 = 0.0;
  double t1 = 10.0;
  IntegratorConfig integrator;
  std::size_t samples = 1001;

  void validate() const;  // throws ConfigError
};

inline constexpr double kThreshold = 1e-2;  // time-to-threshold level
inline constexpr double kLateWindowStart = 5.0;

struct RunSummary {
  std::optional<double> terminal_residual;
  std::optional<double> max_residual_late;  // max over tau in [5, t1]
  std::optional<double> time_to_threshold;  // first tau with residual <= 1e-2
  double terminal_equation_residual = 0.0;
};

struct RunResult {
  RunConfig config;
  Trajectory trajectory;
  std::vector<double> residuals;  // ||X - X*||_F per sample; empty without X*
  std::vector<double> equation_residuals;  // ||E_M1||_F per sample
  RunSummary summary;
};

/// Initial state: entry k of the 2mn real state is draw k of CounterRng(seed)
/// mapped to [init_lo, init_hi).
RealVector initial_state(const RunConfig& config, Index m, Index n);

RunResult run(const TimeVariantProblem& problem, const RunConfig& config);
RunResult run(const ProblemRegistry& registry, const RunConfig& config);

RunSummary summarize(const std::vector<double>& times, const std::vector<double>& residuals,
                     const std::vector<double>& equation_residuals);

// --- comparison -----------------------------------------------------------

struct ComparisonEntry {
  std::string label;
  RunSummary summary;
  std::vector<double> residuals;
  // Relative to the first entry; nullopt when either side is undefined.
  std::optional<double> terminal_ratio;
  std::optional<double> shock_ratio;
  std::optional<double> time_to_threshold_delta;
};

struct ComparisonTable {
  std::string example;
  std::uint64_t seed = 0;
  std::vector<double> times;
  std::vector<ComparisonEntry> entries;
};

/// Throws ComparabilityError unless there are >= 2 configs sharing example,
/// seed, span and sample count.
void check_comparable(const std::vector<RunConfig>& configs);
ComparisonTable compare(const ProblemRegistry& registry, const std::vector<RunConfig>& configs);
ComparisonTable compare_results(const std::vector<RunResult>& results);

std::string run_label(const RunConfig& config);  // e.g. "con-cznd1 gamma=10"

// --- diagnostics ----------------------------------------------------------

inline constexpr double kDominanceEpsilon = 1e-12;
inline constexpr double kDominanceCap = 1e12;

/// min_i |W[i,i]| / (sum_{j != i} |W[i,j]| + 1e-12), capped at 1e12.
double diagonal_dominance_metric(const RealMatrix& w);
double diagonal_dominance_metric(const TimeVariantProblem& problem, double tau);

/// Least-squares slope of log(values) against times over [lo, hi].
double log_slope(const std::vector<double>& times, const std::vector<double>& values, double lo,
                 double hi);

}  // namespace cznd

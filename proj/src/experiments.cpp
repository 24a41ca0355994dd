#include "cznd/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cznd/rng.hpp"

namespace cznd {

void ProblemRegistry::add(TimeVariantProblem problem) {
  const std::string name = problem.name();
  problems_.insert_or_assign(name, std::move(problem));
}

const TimeVariantProblem& ProblemRegistry::get(const std::string& name) const {
  const auto it = problems_.find(name);
  if (it == problems_.end()) {
    std::string known;
    for (const auto& [key, value] : problems_) known += (known.empty() ? "" : ", ") + key;
    throw ConfigError("unknown example '" + name + "' (known: " + known + ")");
  }
  return it->second;
}

bool ProblemRegistry::contains(const std::string& name) const {
  return problems_.count(name) != 0;
}

std::vector<std::string> ProblemRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [key, value] : problems_) out.push_back(key);
  return out;
}

ProblemRegistry register_examples() {
  ProblemRegistry registry;
  for (auto&& problem : {example1(), example2(), example3()}) {
    const ConsistencyReport report = check_consistency(problem, 101, 1e-9);
    if (!report.passed) {
      throw TranscriptionError(report.name, report.worst_tau, report.worst_residual);
    }
    registry.add(problem);
  }
  return registry;
}

void RunConfig::validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw ConfigError("gamma must be positive, got " + std::to_string(gamma));
  }
  if (!(init_lo < init_hi)) throw ConfigError("init range must be nonempty");
  if (!(t0 < t1)) throw ConfigError("span start must be below span end");
  if (t0 < 0.0) throw ConfigError("span must start at tau >= 0");
  if (samples < 2) throw ConfigError("samples must be at least 2");
  integrator.validate();
}

RealVector initial_state(const RunConfig& config, Index m, Index n) {
  const CounterRng rng(config.seed);
  RealVector z(2 * m * n);
  for (Index k = 0; k < z.size(); ++k) {
    z(k) = rng.uniform(static_cast<std::uint64_t>(k), config.init_lo, config.init_hi);
  }
  return z;
}

RunSummary summarize(const std::vector<double>& times, const std::vector<double>& residuals,
                     const std::vector<double>& equation_residuals) {
  RunSummary summary;
  if (!equation_residuals.empty()) summary.terminal_equation_residual = equation_residuals.back();
  if (residuals.empty()) return summary;
  summary.terminal_residual = residuals.back();
  for (std::size_t k = 0; k < residuals.size(); ++k) {
    if (times[k] >= kLateWindowStart) {
      summary.max_residual_late = std::max(summary.max_residual_late.value_or(0.0), residuals[k]);
    }
    if (!summary.time_to_threshold && residuals[k] <= kThreshold) {
      summary.time_to_threshold = times[k];
    }
  }
  return summary;
}

std::string run_label(const RunConfig& config) {
  std::ostringstream os;
  os << model_name(config.model) << " gamma=" << config.gamma;
  return os.str();
}

RunResult run(const TimeVariantProblem& problem, const RunConfig& config) {
  config.validate();
  RunResult result;
  result.config = config;

  const RealVector y0 = initial_state(config, problem.m(), problem.n());
  const DerivativeField field = build_field(config.model, problem, config.gamma);
  try {
    result.trajectory = integrate(field, y0, config.t0, config.t1, config.integrator,
                                  linspace(config.t0, config.t1, config.samples));
  } catch (const NumericalError& e) {
    throw e.with_context(problem.name() + " " + run_label(config) +
                         " seed=" + std::to_string(config.seed) + ": ");
  }

  const auto& times = result.trajectory.times;
  result.equation_residuals.reserve(times.size());
  if (problem.has_exact()) result.residuals.reserve(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    const ComplexMatrix x = decode_state(result.trajectory.states[k], problem.m(), problem.n());
    result.equation_residuals.push_back(problem.equation_residual(x, times[k]));
    if (problem.has_exact()) result.residuals.push_back(problem.residual(x, times[k]));
  }
  result.summary = summarize(times, result.residuals, result.equation_residuals);
  return result;
}

RunResult run(const ProblemRegistry& registry, const RunConfig& config) {
  return run(registry.get(config.example), config);
}

void check_comparable(const std::vector<RunConfig>& configs) {
  if (configs.size() < 2) throw ComparabilityError("compare needs at least two runs");
  const RunConfig& base = configs.front();
  for (const RunConfig& other : configs) {
    if (other.example != base.example) {
      throw ComparabilityError("cannot compare runs on different examples ('" + base.example +
                               "' vs '" + other.example + "')");
    }
    if (other.seed != base.seed) {
      throw ComparabilityError("cannot compare runs with different seeds");
    }
    if (other.t0 != base.t0 || other.t1 != base.t1 || other.samples != base.samples) {
      throw ComparabilityError("cannot compare runs with different spans or sample counts");
    }
  }
}

namespace {

std::optional<double> ratio(std::optional<double> num, std::optional<double> den) {
  if (!num || !den) return std::nullopt;
  if (*den == 0.0) return *num == 0.0 ? std::optional<double>(1.0) : std::nullopt;
  return *num / *den;
}

}  // namespace

ComparisonTable compare_results(const std::vector<RunResult>& results) {
  std::vector<RunConfig> configs;
  for (const RunResult& r : results) configs.push_back(r.config);
  check_comparable(configs);

  ComparisonTable table;
  table.example = configs.front().example;
  table.seed = configs.front().seed;
  table.times = results.front().trajectory.times;
  const RunSummary& base = results.front().summary;
  for (const RunResult& r : results) {
    ComparisonEntry entry;
    entry.label = run_label(r.config);
    entry.summary = r.summary;
    entry.residuals = r.residuals;
    entry.terminal_ratio = ratio(r.summary.terminal_residual, base.terminal_residual);
    entry.shock_ratio = ratio(r.summary.max_residual_late, base.max_residual_late);
    if (r.summary.time_to_threshold && base.time_to_threshold) {
      entry.time_to_threshold_delta = *r.summary.time_to_threshold - *base.time_to_threshold;
    }
    table.entries.push_back(std::move(entry));
  }
  return table;
}

ComparisonTable compare(const ProblemRegistry& registry, const std::vector<RunConfig>& configs) {
  check_comparable(configs);
  std::vector<RunResult> results;
  results.reserve(configs.size());
  for (const RunConfig& config : configs) results.push_back(run(registry, config));
  return compare_results(results);
}

double diagonal_dominance_metric(const RealMatrix& w) {
  double metric = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < w.rows(); ++i) {
    const double diag = std::abs(w(i, i));
    const double off = w.row(i).cwiseAbs().sum() - diag;
    metric = std::min(metric, diag / (std::max(off, 0.0) + kDominanceEpsilon));
  }
  return std::min(metric, kDominanceCap);
}

double diagonal_dominance_metric(const TimeVariantProblem& problem, double tau) {
  const Coefficients k = problem.evaluate(tau);
  return diagonal_dominance_metric(m2_block_matrix(k.f, k.a));
}

double log_slope(const std::vector<double>& times, const std::vector<double>& values, double lo,
                 double hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t count = 0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (times[k] < lo || times[k] > hi || !(values[k] > 0.0)) continue;
    const double x = times[k];
    const double y = std::log(values[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 2) throw DomainError("log_slope: fewer than two usable points");
  const double nn = static_cast<double>(count);
  return (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
}

}  // namespace cznd

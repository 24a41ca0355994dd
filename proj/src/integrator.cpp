#include "cznd/integrator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace cznd {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// b - b_hat (5th minus embedded 4th order weights).
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

// Shampine's continuous extension: y(t + th*h) = y + h * sum_j k_j * P_j(th),
// P_j(th) = sum_q dense[j][q] * th^(q+1).
constexpr std::array<std::array<double, 4>, 7> kDense = {{
    {1.0, -8048581381.0 / 2820520608.0, 8663915743.0 / 2820520608.0,
     -12715105075.0 / 11282082432.0},
    {0.0, 0.0, 0.0, 0.0},
    {0.0, 131558114200.0 / 32700410799.0, -68118460800.0 / 10900136933.0,
     87487479700.0 / 32700410799.0},
    {0.0, -1754552775.0 / 470086768.0, 14199869525.0 / 1410260304.0,
     -10690763975.0 / 1880347072.0},
    {0.0, 127303824393.0 / 49829197408.0, -318862633887.0 / 49829197408.0,
     701980252875.0 / 199316789632.0},
    {0.0, -282668133.0 / 205662961.0, 2019193451.0 / 616988883.0, -1453857185.0 / 822651844.0},
    {0.0, 40617522.0 / 29380423.0, -110615467.0 / 29380423.0, 69997945.0 / 29380423.0},
}};

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;
constexpr double kAlpha = 0.17;  // 1/5 - 0.75 * kBeta
constexpr double kBeta = 0.04;
constexpr double kMinStep = 1e-14;

RealVector checked(RealVector v, double tau) {
  if (!v.allFinite()) throw NumericalError("non-finite derivative", tau, true);
  return v;
}

}  // namespace

void IntegratorConfig::validate() const {
  if (!(rel_tol >= 1e-14) || !(abs_tol > 0.0) || !(max_step > 0.0) || !(initial_step > 0.0) ||
      max_steps <= 0) {
    throw ConfigError("integrator: tolerances and step limits must be positive (rel_tol >= 1e-14)");
  }
}

std::vector<double> linspace(double t0, double t1, std::size_t count) {
  std::vector<double> out;
  if (count == 0) return out;
  if (count == 1) return {t0};
  out.reserve(count);
  const double span = t1 - t0;
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back(t0 + span * static_cast<double>(k) / static_cast<double>(count - 1));
  }
  out.back() = t1;
  return out;
}

Trajectory integrate(const DerivativeField& field, const RealVector& y0, double t0, double t1,
                     const IntegratorConfig& config, std::vector<double> sample_times) {
  config.validate();
  if (!(t0 < t1)) throw ConfigError("integrate: span start must be below span end");
  if (!y0.allFinite()) throw NumericalError("integrate: initial state is not finite", t0, true);
  for (std::size_t k = 0; k < sample_times.size(); ++k) {
    const double s = sample_times[k];
    if (!(s >= t0 && s <= t1) || (k > 0 && !(s > sample_times[k - 1]))) {
      throw ConfigError("integrate: sample times must be strictly ascending inside the span");
    }
  }
  if (sample_times.empty() || sample_times.front() != t0) {
    sample_times.insert(sample_times.begin(), t0);
  }
  if (sample_times.back() != t1) sample_times.push_back(t1);

  Trajectory out;
  out.times = sample_times;
  out.states.reserve(sample_times.size());
  out.states.push_back(y0);
  if (config.record_steps) {
    out.step_times.push_back(t0);
    out.step_states.push_back(y0);
  }
  std::size_t next_sample = 1;

  const Index dim = y0.size();
  std::array<RealVector, 7> k;
  RealVector y = y0;
  double t = t0;
  k[0] = checked(field(t, y), t);
  out.stats.rhs_evaluations = 1;

  double h = std::min({config.initial_step, config.max_step, t1 - t0});
  double err_prev = 1e-4;
  bool last_rejected = false;
  RealVector y_stage(dim), y_new(dim), err(dim);

  while (t < t1) {
    if (out.stats.accepted_steps + out.stats.rejected_steps >= config.max_steps) {
      throw BudgetError("integrate: step budget exhausted", t);
    }
    if (h < kMinStep) {
      throw StiffnessError("integrate: step size underflow", t);
    }
    bool final_step = false;
    if (t + h >= t1) {
      h = t1 - t;
      final_step = true;
    }

    y_stage = y + h * (a21 * k[0]);
    k[1] = checked(field(t + c2 * h, y_stage), t + c2 * h);
    y_stage = y + h * (a31 * k[0] + a32 * k[1]);
    k[2] = checked(field(t + c3 * h, y_stage), t + c3 * h);
    y_stage = y + h * (a41 * k[0] + a42 * k[1] + a43 * k[2]);
    k[3] = checked(field(t + c4 * h, y_stage), t + c4 * h);
    y_stage = y + h * (a51 * k[0] + a52 * k[1] + a53 * k[2] + a54 * k[3]);
    k[4] = checked(field(t + c5 * h, y_stage), t + c5 * h);
    y_stage = y + h * (a61 * k[0] + a62 * k[1] + a63 * k[2] + a64 * k[3] + a65 * k[4]);
    const double t_new = final_step ? t1 : t + h;
    k[5] = checked(field(t_new, y_stage), t_new);
    y_new = y + h * (b1 * k[0] + b3 * k[2] + b4 * k[3] + b5 * k[4] + b6 * k[5]);
    k[6] = checked(field(t_new, y_new), t_new);
    out.stats.rhs_evaluations += 6;

    err = h * (e1 * k[0] + e3 * k[2] + e4 * k[3] + e5 * k[4] + e6 * k[5] + e7 * k[6]);
    double err_norm = 0.0;
    for (Index i = 0; i < dim; ++i) {
      const double scale =
          config.abs_tol + config.rel_tol * std::max(std::abs(y(i)), std::abs(y_new(i)));
      err_norm = std::max(err_norm, std::abs(err(i)) / scale);
    }
    if (!std::isfinite(err_norm)) {
      throw NumericalError("integrate: non-finite error estimate", t, true);
    }

    if (err_norm <= 1.0) {
      // Emit samples inside (t, t_new].
      while (next_sample < sample_times.size() && sample_times[next_sample] <= t_new) {
        const double s = sample_times[next_sample];
        if (s == t_new) {
          out.states.push_back(y_new);
        } else {
          const double theta = (s - t) / h;
          RealVector ys = y;
          for (std::size_t j = 0; j < 7; ++j) {
            const auto& p = kDense[j];
            const double w =
                theta * (p[0] + theta * (p[1] + theta * (p[2] + theta * p[3])));
            if (w != 0.0) ys += (h * w) * k[j];
          }
          out.states.push_back(std::move(ys));
        }
        ++next_sample;
      }

      double factor = err_norm == 0.0
                          ? kMaxFactor
                          : kSafety * std::pow(err_norm, -kAlpha) * std::pow(err_prev, kBeta);
      factor = std::clamp(factor, kMinFactor, kMaxFactor);
      if (last_rejected) factor = std::min(factor, 1.0);
      err_prev = std::max(err_norm, 1e-4);
      last_rejected = false;

      t = t_new;
      y = y_new;
      k[0] = k[6];
      ++out.stats.accepted_steps;
      if (config.record_steps) {
        out.step_times.push_back(t);
        out.step_states.push_back(y);
      }
      h = std::min(h * factor, config.max_step);
    } else {
      const double factor =
          std::max(kMinFactor, kSafety * std::pow(err_norm, -kAlpha));
      h *= factor;
      last_rejected = true;
      ++out.stats.rejected_steps;
    }
  }
  return out;
}

}  // namespace cznd

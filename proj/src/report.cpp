#include "cznd/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "cznd/version.hpp"

namespace cznd::report {

namespace {

constexpr double kLogFloor = 1e-16;

nlohmann::ordered_json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string fixed(double value, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::vector<std::string> trajectory_header(Index m, Index n) {
  std::vector<std::string> header{"tau"};
  for (const char* part : {"x_r_", "x_i_"}) {
    for (Index t = 1; t <= n; ++t) {
      for (Index s = 1; s <= m; ++s) {
        header.push_back(std::string(part) + std::to_string(s) + std::to_string(t));
      }
    }
  }
  header.emplace_back("residual");
  header.emplace_back("eq_residual");
  return header;
}

void write_trajectory_csv(std::ostream& os, const RunResult& result, Index m, Index n) {
  const auto header = trajectory_header(m, n);
  for (std::size_t k = 0; k < header.size(); ++k) os << (k ? "," : "") << header[k];
  os << '\n';
  const auto& traj = result.trajectory;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    os << format_double(traj.times[k]);
    for (Index j = 0; j < traj.states[k].size(); ++j) os << ',' << format_double(traj.states[k](j));
    os << ',' << (result.residuals.empty() ? std::string("nan") : format_double(result.residuals[k]));
    os << ',' << format_double(result.equation_residuals[k]) << '\n';
  }
}

CsvTable read_csv(std::istream& is) {
  CsvTable table;
  std::string line;
  if (!std::getline(is, line)) throw Error("csv: empty input");
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) table.header.push_back(cell);
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw Error("csv: bad number '" + cell + "'");
      }
    }
    if (row.size() != table.header.size()) throw Error("csv: ragged row");
    table.rows.push_back(std::move(row));
  }
  return table;
}

nlohmann::ordered_json config_json(const RunConfig& config) {
  nlohmann::ordered_json j;
  j["example"] = config.example;
  j["model"] = std::string(model_name(config.model));
  j["gamma"] = config.gamma;
  j["seed"] = config.seed;
  j["init_range"] = {config.init_lo, config.init_hi};
  j["span"] = {config.t0, config.t1};
  j["samples"] = config.samples;
  j["rng"] = "splitmix64-counter";
  j["integrator"] = {{"method", "dormand-prince-5(4)"},
                     {"rel_tol", config.integrator.rel_tol},
                     {"abs_tol", config.integrator.abs_tol},
                     {"max_step", config.integrator.max_step},
                     {"initial_step", config.integrator.initial_step},
                     {"max_steps", config.integrator.max_steps}};
  return j;
}

nlohmann::ordered_json summary_json(const RunResult& result) {
  nlohmann::ordered_json j;
  j["version"] = kVersion;
  j["config"] = config_json(result.config);
  j["summary"] = {{"terminal_residual", optional_json(result.summary.terminal_residual)},
                  {"max_residual_late", optional_json(result.summary.max_residual_late)},
                  {"time_to_threshold", optional_json(result.summary.time_to_threshold)},
                  {"threshold", kThreshold},
                  {"terminal_equation_residual", result.summary.terminal_equation_residual}};
  const auto& stats = result.trajectory.stats;
  j["integrator_stats"] = {{"accepted_steps", stats.accepted_steps},
                           {"rejected_steps", stats.rejected_steps},
                           {"rhs_evaluations", stats.rhs_evaluations}};
  return j;
}

nlohmann::ordered_json comparison_json(const ComparisonTable& table) {
  nlohmann::ordered_json j;
  j["version"] = kVersion;
  j["example"] = table.example;
  j["seed"] = table.seed;
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : table.entries) {
    j["entries"].push_back({{"label", e.label},
                            {"terminal_residual", optional_json(e.summary.terminal_residual)},
                            {"max_residual_late", optional_json(e.summary.max_residual_late)},
                            {"time_to_threshold", optional_json(e.summary.time_to_threshold)},
                            {"terminal_ratio", optional_json(e.terminal_ratio)},
                            {"shock_ratio", optional_json(e.shock_ratio)},
                            {"time_to_threshold_delta", optional_json(e.time_to_threshold_delta)}});
  }
  return j;
}

void write_compare_csv(std::ostream& os, const ComparisonTable& table) {
  os << "tau";
  std::vector<std::string> seen;
  for (const auto& e : table.entries) {
    std::string name = e.label;
    std::replace(name.begin(), name.end(), ' ', '_');
    const auto repeats = std::count(seen.begin(), seen.end(), name);
    seen.push_back(name);
    os << ",residual_" << name;
    if (repeats > 0) os << '#' << repeats + 1;
  }
  os << '\n';
  for (std::size_t k = 0; k < table.times.size(); ++k) {
    os << format_double(table.times[k]);
    for (const auto& e : table.entries) {
      os << ',' << (e.residuals.empty() ? std::string("nan") : format_double(e.residuals[k]));
    }
    os << '\n';
  }
}

std::string residual_svg(const std::vector<double>& times, const std::vector<Series>& series,
                         const std::string& title) {
  constexpr double kWidth = 800, kHeight = 500;
  constexpr double kLeft = 80, kRight = 30, kTop = 50, kBottom = 60;
  constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd"};

  const double t_lo = times.empty() ? 0.0 : times.front();
  double t_hi = times.empty() ? 1.0 : times.back();
  if (t_hi <= t_lo) t_hi = t_lo + 1.0;

  double log_lo = 0.0, log_hi = 0.0;
  bool any = false;
  for (const auto& s : series) {
    for (double v : s.values) {
      if (!std::isfinite(v)) continue;
      const double lv = std::log10(std::max(v, kLogFloor));
      log_lo = any ? std::min(log_lo, lv) : lv;
      log_hi = any ? std::max(log_hi, lv) : lv;
      any = true;
    }
  }
  log_lo = std::floor(log_lo);
  log_hi = std::ceil(log_hi);
  if (log_hi <= log_lo) log_hi = log_lo + 1.0;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double t) { return kLeft + plot_w * (t - t_lo) / (t_hi - t_lo); };
  auto py = [&](double v) {
    const double lv = std::log10(std::max(v, kLogFloor));
    return kTop + plot_h * (log_hi - lv) / (log_hi - log_lo);
  };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" fill=\"white\"/>\n"
     << "<text x=\"" << kWidth / 2 << "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\""
     << " font-size=\"16\">" << xml_escape(title) << "</text>\n"
     << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\""
     << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";

  const int step = static_cast<int>(std::max(1.0, std::ceil((log_hi - log_lo) / 10.0)));
  for (int d = static_cast<int>(log_lo); d <= static_cast<int>(log_hi); d += step) {
    const double y = kTop + plot_h * (log_hi - d) / (log_hi - log_lo);
    os << "<line x1=\"" << kLeft << "\" y1=\"" << fixed(y) << "\" x2=\"" << kLeft + plot_w
       << "\" y2=\"" << fixed(y) << "\" stroke=\"#dddddd\"/>\n"
       << "<text x=\"" << kLeft - 8 << "\" y=\"" << fixed(y + 4)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">1e" << d
       << "</text>\n";
  }
  for (int k = 0; k <= 10; ++k) {
    const double t = t_lo + (t_hi - t_lo) * k / 10.0;
    os << "<text x=\"" << fixed(px(t)) << "\" y=\"" << kTop + plot_h + 18
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << fixed(t, 1)
       << "</text>\n";
  }
  os << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 15
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">tau (s)</text>\n"
     << "<text x=\"20\" y=\"" << kTop + plot_h / 2 << "\" text-anchor=\"middle\""
     << " font-family=\"sans-serif\" font-size=\"14\" transform=\"rotate(-90 20 "
     << kTop + plot_h / 2 << ")\">residual</text>\n";

  for (std::size_t c = 0; c < series.size(); ++c) {
    const char* color = kColors[c % std::size(kColors)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    const auto& values = series[c].values;
    bool first = true;
    for (std::size_t k = 0; k < std::min(values.size(), times.size()); ++k) {
      if (!std::isfinite(values[k])) continue;
      os << (first ? "" : " ") << fixed(px(times[k])) << ',' << fixed(py(values[k]));
      first = false;
    }
    os << "\"/>\n";
  }
  if (series.size() > 1) {
    for (std::size_t c = 0; c < series.size(); ++c) {
      const double y = kTop + 20 + 18 * static_cast<double>(c);
      const double x = kLeft + plot_w - 200;
      os << "<line x1=\"" << x << "\" y1=\"" << y << "\" x2=\"" << x + 24 << "\" y2=\"" << y
         << "\" stroke=\"" << kColors[c % std::size(kColors)] << "\" stroke-width=\"2\"/>\n"
         << "<text x=\"" << x + 30 << "\" y=\"" << y + 4
         << "\" font-family=\"sans-serif\" font-size=\"12\">" << xml_escape(series[c].label)
         << "</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace cznd::report

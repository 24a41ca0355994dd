#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cznd/experiments.hpp"
#include "json.hpp"

namespace cznd::report {

// Doubles are written with 17 significant digits so they parse back exactly.
std::string format_double(double value);

// Header: tau, x_r_<s><t>..., x_i_<s><t>..., residual, eq_residual. State
// columns follow vec() order (column by column).
std::vector<std::string> trajectory_header(Index m, Index n);
void write_trajectory_csv(std::ostream& os, const RunResult& result, Index m, Index n);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
CsvTable read_csv(std::istream& is);  // throws Error on malformed input

nlohmann::ordered_json config_json(const RunConfig& config);
nlohmann::ordered_json summary_json(const RunResult& result);
nlohmann::ordered_json comparison_json(const ComparisonTable& table);

void write_compare_csv(std::ostream& os, const ComparisonTable& table);

struct Series {
  std::string label;
  std::vector<double> values;
};

// Standalone SVG: linear tau axis, log10 residual axis (values clamped at
// 1e-16), one polyline per series, legend when there is more than one.
std::string residual_svg(const std::vector<double>& times, const std::vector<Series>& series,
                         const std::string& title);

}  // namespace cznd::report

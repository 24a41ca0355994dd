#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cznd/experiments.hpp"

namespace cznd::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kNumericalFailure = 1;
inline constexpr int kUsageError = 2;

/// Entry point of the `cznd` tool. `args` excludes the program name.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// `validate` against an arbitrary registry; prints one PASS/FAIL line per check.
int validate(const ProblemRegistry& registry, int tau_samples, std::ostream& out);

}  // namespace cznd::cli

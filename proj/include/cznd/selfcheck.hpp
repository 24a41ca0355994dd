#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cznd/experiments.hpp"

// Built-in numerical self-checks run by `cznd validate`.
namespace cznd::selfcheck {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// vec(A X B) against kron(conj(herm(B)), A) vec(X) on random complex
// triples with dimensions in 1..4.
CheckResult vec_axb_identity(int triples = 100, std::uint64_t seed = 20240601,
                             double tolerance = 1e-12);

// The four Penrose conditions for pinv on random square matrices with
// condition number below 1e6, relative residual <= tolerance.
CheckResult penrose_conditions(int matrices = 25, Index size = 6,
                               std::uint64_t seed = 20240602, double tolerance = 1e-9);

// One consistency check per registered problem that has an exact solution.
std::vector<CheckResult> registry_consistency(const ProblemRegistry& registry, int tau_samples,
                                              double tolerance = 1e-9);

// A counter-driven source of random test matrices.
class MatrixSource {
 public:
  explicit MatrixSource(std::uint64_t seed) : seed_(seed) {}
  double uniform(double lo, double hi);
  Index dim(Index lo, Index hi);
  clinalg::ComplexMatrix complex(Index rows, Index cols, double lo = -1.0, double hi = 1.0);
  clinalg::RealMatrix real(Index rows, Index cols, double lo = -1.0, double hi = 1.0);

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace cznd::selfcheck

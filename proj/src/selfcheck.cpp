#include "cznd/selfcheck.hpp"

#include <sstream>

#include "cznd/rng.hpp"

namespace cznd::selfcheck {

using clinalg::ComplexMatrix;
using clinalg::RealMatrix;

double MatrixSource::uniform(double lo, double hi) {
  return CounterRng(seed_).uniform(counter_++, lo, hi);
}

Index MatrixSource::dim(Index lo, Index hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<Index>(CounterRng(seed_).bits(counter_++) % span);
}

ComplexMatrix MatrixSource::complex(Index rows, Index cols, double lo, double hi) {
  ComplexMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = uniform(lo, hi);
      const double im = uniform(lo, hi);
      m(i, j) = {re, im};
    }
  }
  return m;
}

RealMatrix MatrixSource::real(Index rows, Index cols, double lo, double hi) {
  RealMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = uniform(lo, hi);
  }
  return m;
}

CheckResult vec_axb_identity(int triples, std::uint64_t seed, double tolerance) {
  MatrixSource source(seed);
  double worst = 0.0;
  for (int k = 0; k < triples; ++k) {
    const Index m = source.dim(1, 4), n = source.dim(1, 4), s = source.dim(1, 4),
                t = source.dim(1, 4);
    const ComplexMatrix a = source.complex(m, n);
    const ComplexMatrix x = source.complex(n, s);
    const ComplexMatrix b = source.complex(s, t);
    const ComplexMatrix direct = a * x * b;
    const auto lhs = clinalg::vec(direct);
    const auto rhs = clinalg::vec_axb(a, x, b);
    worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  std::ostringstream os;
  os << triples << " triples, max-abs error " << worst;
  return {"vec(AXB) kron identity", worst <= tolerance, os.str()};
}

CheckResult penrose_conditions(int matrices, Index size, std::uint64_t seed, double tolerance) {
  MatrixSource source(seed);
  double worst = 0.0;
  int checked = 0;
  while (checked < matrices) {
    const RealMatrix w = source.real(size, size);
    const Eigen::JacobiSVD<RealMatrix> svd(w);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= 0.0 || sv(0) / sv(sv.size() - 1) >= 1e6) continue;
    const RealMatrix p = clinalg::pinv(w);
    const double nw = w.norm(), np = p.norm();
    worst = std::max({worst, (w * p * w - w).norm() / nw, (p * w * p - p).norm() / np,
                      (RealMatrix(w * p).transpose() - w * p).norm() / (nw * np),
                      (RealMatrix(p * w).transpose() - p * w).norm() / (nw * np)});
    ++checked;
  }
  std::ostringstream os;
  os << matrices << " matrices " << size << "x" << size << ", worst relative residual " << worst;
  return {"pinv Penrose conditions", worst <= tolerance, os.str()};
}

std::vector<CheckResult> registry_consistency(const ProblemRegistry& registry, int tau_samples,
                                              double tolerance) {
  std::vector<CheckResult> out;
  for (const auto& name : registry.names()) {
    const auto& problem = registry.get(name);
    if (!problem.has_exact()) continue;
    const ConsistencyReport r = check_consistency(problem, tau_samples, tolerance);
    std::ostringstream os;
    os << "worst residual " << r.worst_residual << " at tau=" << r.worst_tau << " over "
       << tau_samples << " samples";
    out.push_back({name + " exact solution", r.passed, os.str()});
  }
  return out;
}

}  // namespace cznd::selfcheck

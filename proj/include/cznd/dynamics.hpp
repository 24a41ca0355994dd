#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <utility>

#include "cznd/clinalg.hpp"
#include "cznd/problem.hpp"

namespace cznd {

using clinalg::RealMatrix;
using clinalg::RealVector;

enum class Model { con_cznd1, con_cznd2 };

std::string_view model_name(Model model);  // "con-cznd1" / "con-cznd2"
Model parse_model(std::string_view name);  // throws ConfigError

// Real state of length 2mn: [vec(X_r); vec(X_i)]. Shared by both models.
RealVector encode_state(const ComplexMatrix& x);
ComplexMatrix decode_state(const RealVector& z, Index m, Index n);

// W and B of a real linear system W * y = B.
struct RealEmbedding {
  RealMatrix w;
  RealVector b;
};

// Elementwise error activation Phi. Must be odd and monotonically increasing;
// only the linear one ships, custom() is the extension point.
class Activation {
 public:
  static Activation linear();
  static Activation custom(std::string name, std::function<double(double)> phi);

  double operator()(double x) const { return linear_ ? x : phi_(x); }
  RealVector apply(const RealVector& v) const;
  ComplexMatrix apply(const ComplexMatrix& e) const;  // Phi(E_r) + i Phi(E_i)

  bool is_linear() const { return linear_; }
  const std::string& name() const { return name_; }

 private:
  Activation(std::string name, std::function<double(double)> phi, bool linear)
      : name_(std::move(name)), phi_(std::move(phi)), linear_(linear) {}

  std::string name_;
  std::function<double(double)> phi_;
  bool linear_;
};

using DerivativeField = std::function<RealVector(double tau, const RealVector& z)>;

/// E_M1 = X F - A conj(X) - C.
ComplexMatrix error_m1(const TimeVariantProblem& problem, const ComplexMatrix& x, double tau);

/// E_M2 = W_M2 z - B_M2.
RealVector error_m2(const TimeVariantProblem& problem, const RealVector& z, double tau);

/// U = kron(conj(herm(F)), I_m) and V = kron(I_n, A), the operators of
/// U vec(dX) - V vec(conj(dX)) = G.
struct ComplexOperators {
  ComplexMatrix u, v;
};
ComplexOperators m1_operators(const ComplexMatrix& f, const ComplexMatrix& a);

/// [[U_r - V_r, -(U_i + V_i)], [U_i - V_i, U_r + V_r]] and [G_r; G_i] at (tau, z).
RealEmbedding m1_embedding(const TimeVariantProblem& problem, const RealVector& z, double tau,
                           double gamma, const Activation& phi = Activation::linear());

/// The K-block matrix [[K11, K12], [K21, K22]] built from F and A. Linear in
/// (F, A), so applying it to (dF, dA) gives dW_M2/dtau.
RealMatrix m2_block_matrix(const ComplexMatrix& f, const ComplexMatrix& a);
RealVector split_vec(const ComplexMatrix& c);  // [vec(C_r); vec(C_i)]

/// W_M2 and B_M2 at tau.
RealEmbedding m2_embedding(const TimeVariantProblem& problem, double tau);
/// dW_M2/dtau and dB_M2/dtau at tau.
RealEmbedding m2_embedding_rate(const TimeVariantProblem& problem, double tau);

// Both fields throw NumericalError (with tau) if W or B turn non-finite.
// gamma must be positive (ConfigError otherwise).
DerivativeField build_con_cznd1(const TimeVariantProblem& problem, double gamma,
                                Activation phi = Activation::linear());
DerivativeField build_con_cznd2(const TimeVariantProblem& problem, double gamma,
                                Activation phi = Activation::linear());
DerivativeField build_field(Model model, const TimeVariantProblem& problem, double gamma,
                            Activation phi = Activation::linear());

}  // namespace cznd

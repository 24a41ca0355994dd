#include "cznd/dynamics.hpp"

#include <cmath>
#include <memory>
#include <sstream>
#include <utility>

namespace cznd {

using clinalg::conj;
using clinalg::herm;
using clinalg::identity;
using clinalg::kron;
using clinalg::pinv;
using clinalg::vec;

std::string_view model_name(Model model) {
  switch (model) {
    case Model::con_cznd1:
      return "con-cznd1";
    case Model::con_cznd2:
      return "con-cznd2";
  }
  return "unknown";
}

Model parse_model(std::string_view name) {
  if (name == "con-cznd1" || name == "con_cznd1") return Model::con_cznd1;
  if (name == "con-cznd2" || name == "con_cznd2") return Model::con_cznd2;
  throw ConfigError("unknown model '" + std::string(name) + "' (expected con-cznd1 or con-cznd2)");
}

RealVector encode_state(const ComplexMatrix& x) {
  const Index mn = x.size();
  RealVector z(2 * mn);
  const auto v = vec(x);
  z.head(mn) = v.real();
  z.tail(mn) = v.imag();
  return z;
}

ComplexMatrix decode_state(const RealVector& z, Index m, Index n) {
  const Index mn = m * n;
  if (z.size() != 2 * mn) {
    std::ostringstream os;
    os << "state of length " << z.size() << " does not encode a " << m << "x" << n
       << " matrix";
    throw ShapeError(os.str());
  }
  ComplexMatrix x(m, n);
  x.real() = Eigen::Map<const RealMatrix>(z.data(), m, n);
  x.imag() = Eigen::Map<const RealMatrix>(z.data() + mn, m, n);
  return x;
}

Activation Activation::linear() { return Activation("linear", nullptr, true); }

Activation Activation::custom(std::string name, std::function<double(double)> phi) {
  if (!phi) throw ConfigError("activation '" + name + "' has no function");
  return Activation(std::move(name), std::move(phi), false);
}

RealVector Activation::apply(const RealVector& v) const {
  if (linear_) return v;
  return v.unaryExpr(phi_);
}

ComplexMatrix Activation::apply(const ComplexMatrix& e) const {
  if (linear_) return e;
  ComplexMatrix out(e.rows(), e.cols());
  out.real() = e.real().unaryExpr(phi_);
  out.imag() = e.imag().unaryExpr(phi_);
  return out;
}

ComplexMatrix error_m1(const TimeVariantProblem& problem, const ComplexMatrix& x, double tau) {
  return problem.equation_error(x, tau);
}

RealVector split_vec(const ComplexMatrix& c) { return encode_state(c); }

RealMatrix m2_block_matrix(const ComplexMatrix& f, const ComplexMatrix& a) {
  const Index n = f.rows();
  const Index m = a.rows();
  const RealMatrix i_m = RealMatrix::Identity(m, m);
  const RealMatrix i_n = RealMatrix::Identity(n, n);
  const RealMatrix fr_t = f.real().transpose();
  const RealMatrix fi_t = f.imag().transpose();
  const RealMatrix fr_part = kron(fr_t, i_m);
  const RealMatrix fi_part = kron(fi_t, i_m);
  const RealMatrix ar_part = kron(i_n, RealMatrix(a.real()));
  const RealMatrix ai_part = kron(i_n, RealMatrix(a.imag()));

  const Index mn = m * n;
  RealMatrix w(2 * mn, 2 * mn);
  w.topLeftCorner(mn, mn) = fr_part - ar_part;
  w.topRightCorner(mn, mn) = -(fi_part + ai_part);
  w.bottomLeftCorner(mn, mn) = fi_part - ai_part;
  w.bottomRightCorner(mn, mn) = fr_part + ar_part;
  return w;
}

RealVector error_m2(const TimeVariantProblem& problem, const RealVector& z, double tau) {
  if (z.size() != 2 * problem.m() * problem.n()) {
    throw ShapeError("error_m2: state length " + std::to_string(z.size()) + ", expected " +
                     std::to_string(2 * problem.m() * problem.n()));
  }
  const RealEmbedding e = m2_embedding(problem, tau);
  return e.w * z - e.b;
}

ComplexOperators m1_operators(const ComplexMatrix& f, const ComplexMatrix& a) {
  const Index n = f.rows();
  const Index m = a.rows();
  return ComplexOperators{kron(conj(herm(f)), identity(m)), kron(identity(n), a)};
}

namespace {

void require_finite(const RealEmbedding& e, double tau, const std::string& name,
                    const char* model) {
  if (!e.w.allFinite() || !e.b.allFinite()) {
    throw NumericalError(std::string(model) + ": non-finite embedding for problem '" + name + "'",
                         tau, true);
  }
}

void require_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw ConfigError("gamma must be a positive finite number, got " + std::to_string(gamma));
  }
}

}  // namespace

RealEmbedding m1_embedding(const TimeVariantProblem& problem, const RealVector& z, double tau,
                           double gamma, const Activation& phi) {
  const Coefficients k = problem.evaluate(tau);
  const ComplexMatrix x = decode_state(z, problem.m(), problem.n());
  const ComplexMatrix x_bar = conj(x);
  const ComplexOperators ops = m1_operators(k.f, k.a);

  const ComplexMatrix error = x * k.f - k.a * x_bar - k.c;
  const ComplexMatrix drift = k.dc + k.da * x_bar - x * k.df;
  const ComplexMatrix g = drift - gamma * phi.apply(error);

  const Index mn = problem.m() * problem.n();
  const RealMatrix ur = ops.u.real();
  const RealMatrix ui = ops.u.imag();
  const RealMatrix vr = ops.v.real();
  const RealMatrix vi = ops.v.imag();

  RealEmbedding out;
  out.w.resize(2 * mn, 2 * mn);
  out.w.topLeftCorner(mn, mn) = ur - vr;
  out.w.topRightCorner(mn, mn) = -(ui + vi);
  out.w.bottomLeftCorner(mn, mn) = ui - vi;
  out.w.bottomRightCorner(mn, mn) = ur + vr;
  out.b = split_vec(g);
  return out;
}

RealEmbedding m2_embedding(const TimeVariantProblem& problem, double tau) {
  const Coefficients k = problem.evaluate(tau);
  return RealEmbedding{m2_block_matrix(k.f, k.a), split_vec(k.c)};
}

RealEmbedding m2_embedding_rate(const TimeVariantProblem& problem, double tau) {
  const Coefficients k = problem.evaluate(tau);
  return RealEmbedding{m2_block_matrix(k.df, k.da), split_vec(k.dc)};
}

DerivativeField build_con_cznd1(const TimeVariantProblem& problem, double gamma,
                                Activation phi) {
  require_gamma(gamma);
  auto shared = std::make_shared<const TimeVariantProblem>(problem);
  return [shared, gamma, phi = std::move(phi)](double tau, const RealVector& z) -> RealVector {
    const RealEmbedding e = m1_embedding(*shared, z, tau, gamma, phi);
    require_finite(e, tau, shared->name(), "con-cznd1");
    return pinv(e.w) * e.b;
  };
}

DerivativeField build_con_cznd2(const TimeVariantProblem& problem, double gamma,
                                Activation phi) {
  require_gamma(gamma);
  auto shared = std::make_shared<const TimeVariantProblem>(problem);
  return [shared, gamma, phi = std::move(phi)](double tau, const RealVector& z) -> RealVector {
    if (z.size() != 2 * shared->m() * shared->n()) {
      throw ShapeError("con-cznd2: state length mismatch");
    }
    const Coefficients k = shared->evaluate(tau);
    const RealMatrix w = m2_block_matrix(k.f, k.a);
    const RealMatrix w_dot = m2_block_matrix(k.df, k.da);
    const RealVector b = split_vec(k.c);
    const RealVector b_dot = split_vec(k.dc);
    const RealEmbedding e{w, b_dot - w_dot * z - gamma * phi.apply(RealVector(w * z - b))};
    require_finite(e, tau, shared->name(), "con-cznd2");
    return pinv(e.w) * e.b;
  };
}

DerivativeField build_field(Model model, const TimeVariantProblem& problem, double gamma,
                            Activation phi) {
  switch (model) {
    case Model::con_cznd1:
      return build_con_cznd1(problem, gamma, std::move(phi));
    case Model::con_cznd2:
      return build_con_cznd2(problem, gamma, std::move(phi));
  }
  throw ConfigError("unknown model");
}

}  // namespace cznd

#include "cznd/dynamics.hpp"

#include <cmath>
#include <limits>

#include "cznd/experiments.hpp"
#include "cznd/integrator.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace cznd;
using cznd::selfcheck::MatrixSource;
using oracle::max_abs;

namespace {

RealVector column(const Eigen::VectorXcd& v, bool imag) {
  return imag ? RealVector(v.imag()) : RealVector(v.real());
}

IntegratorConfig tight() {
  IntegratorConfig c;
  c.rel_tol = 1e-11;
  c.abs_tol = 1e-13;
  return c;
}

}  // namespace

TEST_CASE("state encoding") {
  MatrixSource src(31);
  const ComplexMatrix x = src.complex(3, 2);
  const RealVector z = encode_state(x);
  REQUIRE(z.size() == 12);
  for (Index t = 0; t < 2; ++t) {
    for (Index s = 0; s < 3; ++s) {
      CHECK(z(t * 3 + s) == x(s, t).real());
      CHECK(z(6 + t * 3 + s) == x(s, t).imag());
    }
  }
  CHECK(decode_state(z, 3, 2) == x);
  CHECK_THROWS_AS(decode_state(z, 2, 2), ShapeError);
}

TEST_CASE("activation") {
  const Activation lin = Activation::linear();
  CHECK(lin.is_linear());
  MatrixSource src(32);
  for (int k = 0; k < 100; ++k) {
    const double x = src.uniform(-1e3, 1e3);
    CHECK(lin(-x) == -lin(x));
    CHECK(x * lin(x) >= 0.0);
  }
  const Activation cubic = Activation::custom("cubic", [](double x) { return x * x * x; });
  CHECK_FALSE(cubic.is_linear());
  CHECK(cubic(2.0) == 8.0);
  ComplexMatrix e(1, 1);
  e(0, 0) = {2.0, -1.0};
  CHECK(cubic.apply(e)(0, 0) == clinalg::Complex(8.0, -1.0));
  CHECK_THROWS_AS(Activation::custom("empty", nullptr), ConfigError);
}

TEST_CASE("error_m1") {
  const TimeVariantProblem p = example1();
  CHECK(max_abs(error_m1(p, p.exact(2.0), 2.0)) <= 1e-10);

  MatrixSource src(33);
  for (int k = 0; k < 10; ++k) {
    const double tau = src.uniform(0, 10);
    const ComplexMatrix x = src.complex(3, 2, -5, 5);
    const Coefficients c = p.evaluate(tau);
    const ComplexMatrix naive = oracle::naive_matmul(x, c.f) -
                                oracle::naive_matmul(c.a, oracle::elementwise_conj(x)) - c.c;
    CHECK(max_abs(ComplexMatrix(error_m1(p, x, tau) - naive)) <= 1e-11);
    CHECK(clinalg::frobenius(error_m1(p, x, tau)) == p.equation_residual(x, tau));
  }
  CHECK_THROWS_AS(error_m1(p, ComplexMatrix::Zero(2, 2), 0.0), ShapeError);
}

TEST_CASE("error_m2") {
  const TimeVariantProblem p = example1();
  CHECK(max_abs(RealMatrix(error_m2(p, encode_state(p.exact(4.0)), 4.0))) <= 1e-10);

  MatrixSource src(34);
  for (int k = 0; k < 20; ++k) {
    const double tau = src.uniform(0, 10);
    const RealVector z = src.real(12, 1, -5, 5);
    const double m2 = error_m2(p, z, tau).norm();
    const double m1 = clinalg::frobenius(error_m1(p, decode_state(z, 3, 2), tau));
    CHECK(std::abs(m2 - m1) <= 1e-12 * std::max(1.0, m1));
  }
  CHECK_THROWS_AS(error_m2(p, RealVector::Zero(5), 0.0), ShapeError);

  // gamma only enters the fields, not the error.
  const RealVector z = src.real(12, 1, -5, 5);
  const RealVector before = error_m2(p, z, 1.0);
  const RealVector d1 = build_con_cznd2(p, 1.0)(1.0, z);
  const RealVector d2 = build_con_cznd2(p, 2.0)(1.0, z);
  CHECK(error_m2(p, z, 1.0) == before);
  CHECK((d1 - d2).norm() > 0.0);
}

TEST_CASE("W_M1 realises U vec(dX) - V vec(conj(dX))") {
  const TimeVariantProblem p = example1();
  MatrixSource src(35);
  for (int k = 0; k < 10; ++k) {
    const double tau = src.uniform(0, 10);
    const RealVector z = src.real(12, 1, -5, 5);
    const ComplexMatrix dz = src.complex(6, 1);
    const Coefficients c = p.evaluate(tau);
    const ComplexOperators ops = m1_operators(c.f, c.a);
    const Eigen::VectorXcd direct = oracle::naive_matmul(ops.u, dz) -
                                    oracle::naive_matmul(ops.v, oracle::elementwise_conj(dz));
    RealVector stacked(12);
    stacked << dz.real(), dz.imag();
    const RealEmbedding e = m1_embedding(p, z, tau, 1.0);
    const RealVector lhs = e.w * stacked;
    CHECK(max_abs(RealMatrix(lhs.head(6) - column(direct, false))) <= 1e-12 * 600);
    CHECK(max_abs(RealMatrix(lhs.tail(6) - column(direct, true))) <= 1e-12 * 600);
  }
}

TEST_CASE("U and V follow their Kronecker definitions") {
  MatrixSource src(36);
  const ComplexMatrix f = src.complex(2, 2), a = src.complex(3, 3);
  const ComplexOperators ops = m1_operators(f, a);
  CHECK(ops.u == oracle::block_kron(oracle::index_swap(f), ComplexMatrix::Identity(3, 3)));
  CHECK(ops.v == oracle::block_kron(ComplexMatrix::Identity(2, 2), a));
}

TEST_CASE("Con-CZND1 derivative at the exact solution of Example 3") {
  const TimeVariantProblem p = example3();
  const ComplexMatrix xs = p.exact(0.0);
  const RealVector d = build_con_cznd1(p, 1.0)(0.0, encode_state(xs));
  CHECK(d.norm() > 0.1);

  const ComplexMatrix dx = decode_state(d, 2, 2);
  const Coefficients c = p.evaluate(0.0);
  const ComplexOperators ops = m1_operators(c.f, c.a);
  const Eigen::VectorXcd lhs = ops.u * oracle::column_stack(dx) -
                               ops.v * oracle::column_stack(oracle::elementwise_conj(dx));
  const Eigen::VectorXcd rhs = oracle::column_stack(c.dc + c.da * clinalg::conj(xs) - xs * c.df);
  CHECK(max_abs(ComplexMatrix(lhs - rhs)) <= 1e-10);

  // It is also the derivative of X*: the exact solution tracks itself.
  const ComplexMatrix dx_exact = (p.exact(1e-6) - p.exact(0.0)) / 1e-6;
  CHECK(max_abs(ComplexMatrix(dx - dx_exact)) <= 1e-5);
}

TEST_CASE("fixed point of a static problem") {
  const TimeVariantProblem p = synthetic::static_problem();
  const RealVector z = encode_state(p.exact(0.0));
  CHECK(build_con_cznd1(p, 3.0)(0.7, z).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(build_con_cznd2(p, 3.0)(0.7, z).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("W_M2 block system is consistent with X*") {
  for (const auto& p : {example1(), example2(), example3()}) {
    for (double tau : {0.0, 3.3, 7.1, 10.0}) {
      const RealEmbedding e = m2_embedding(p, tau);
      CHECK((e.w * encode_state(p.exact(tau)) - e.b).norm() <= 1e-10);
    }
  }
}

TEST_CASE("real problems give decoupled K blocks") {
  const TimeVariantProblem p = synthetic::real_problem();
  const RealMatrix w = m2_embedding(p, 1.3).w;
  CHECK(w.topRightCorner(4, 4).cwiseAbs().maxCoeff() == 0.0);
  CHECK(w.bottomLeftCorner(4, 4).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("K blocks match their Kronecker definitions") {
  MatrixSource src(37);
  const ComplexMatrix f = src.complex(3, 3), a = src.complex(2, 2);
  const RealMatrix w = m2_block_matrix(f, a);
  const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2), i3 = ComplexMatrix::Identity(3, 3);
  const ComplexMatrix fr_t = oracle::index_swap(clinalg::from_real(f.real()));
  const ComplexMatrix fi_t = oracle::index_swap(clinalg::from_real(f.imag()));
  const ComplexMatrix ar = clinalg::from_real(a.real()), ai = clinalg::from_real(a.imag());
  const RealMatrix k11 = (oracle::block_kron(fr_t, i2) - oracle::block_kron(i3, ar)).real();
  const RealMatrix k12 = (-(oracle::block_kron(fi_t, i2) + oracle::block_kron(i3, ai))).real();
  const RealMatrix k21 = (oracle::block_kron(fi_t, i2) - oracle::block_kron(i3, ai)).real();
  const RealMatrix k22 = (oracle::block_kron(fr_t, i2) + oracle::block_kron(i3, ar)).real();
  CHECK(w.topLeftCorner(6, 6) == k11);
  CHECK(w.topRightCorner(6, 6) == k12);
  CHECK(w.bottomLeftCorner(6, 6) == k21);
  CHECK(w.bottomRightCorner(6, 6) == k22);
}

TEST_CASE("dW_M2 matches central differences") {
  MatrixSource src(38);
  for (const auto& p : {example1(), example2(), example3()}) {
    for (int k = 0; k < 5; ++k) {
      const double tau = src.uniform(0.01, 10);
      const RealMatrix fd =
          (m2_embedding(p, tau + 1e-6).w - m2_embedding(p, tau - 1e-6).w) / 2e-6;
      const RealEmbedding rate = m2_embedding_rate(p, tau);
      CHECK(max_abs(RealMatrix(rate.w - fd)) <= 1e-7);
    }
  }
}

TEST_CASE("the two embeddings share W") {
  // U_r - V_r = K11, -(U_i + V_i) = K12, U_i - V_i = K21, U_r + V_r = K22.
  MatrixSource src(39);
  for (const auto& p : {example1(), example2(), example3()}) {
    const double tau = src.uniform(0, 10);
    const RealVector z = src.real(2 * p.m() * p.n(), 1, -5, 5);
    CHECK(m1_embedding(p, z, tau, 1.0).w == m2_embedding(p, tau).w);
  }
}

TEST_CASE("fields reject bad gamma and non-finite coefficients") {
  CHECK_THROWS_AS(build_con_cznd1(example1(), 0.0), ConfigError);
  CHECK_THROWS_AS(build_con_cznd2(example1(), -1.0), ConfigError);

  ProblemDefinition def;
  def.name = "blowup";
  def.m = 1;
  def.n = 1;
  def.f = [](double t) {
    return ComplexMatrix::Constant(1, 1, t > 2.0 ? std::numeric_limits<double>::infinity() : 2.0);
  };
  def.a = [](double) { return ComplexMatrix::Constant(1, 1, 0.5); };
  def.c = [](double) { return ComplexMatrix::Constant(1, 1, 1.0); };
  const TimeVariantProblem p(def);
  for (Model model : {Model::con_cznd1, Model::con_cznd2}) {
    const DerivativeField field = build_field(model, p, 1.0);
    CHECK_NOTHROW(field(1.0, RealVector::Zero(2)));
    try {
      field(3.0, RealVector::Zero(2));
      FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
      CHECK(e.has_tau());
      CHECK(e.tau() == 3.0);
    }
  }
}

TEST_CASE("linear activation: error decays as exp(-gamma tau)") {
  for (Model model : {Model::con_cznd1, Model::con_cznd2}) {
    for (const auto& p : {example1(), example3()}) {
      for (double gamma : {1.0, 10.0}) {
        RunConfig rc;
        rc.seed = 5;
        const RealVector z0 = initial_state(rc, p.m(), p.n());
        const auto times = linspace(0.0, 10.0, 201);
        const Trajectory traj = integrate(build_field(model, p, gamma), z0, 0.0, 10.0, tight(), times);
        auto err = [&](std::size_t k) {
          return model == Model::con_cznd1
                     ? clinalg::frobenius(error_m1(p, decode_state(traj.states[k], p.m(), p.n()), traj.times[k]))
                     : error_m2(p, traj.states[k], traj.times[k]).norm();
        };
        const double e0 = err(0);
        double worst = 0.0;
        for (std::size_t k = 1; k < traj.times.size(); ++k) {
          const double expected = std::exp(-gamma * traj.times[k]);
          if (expected < 1e-8) break;
          worst = std::max(worst, std::abs(err(k) / e0 / expected - 1.0));
        }
        INFO(model_name(model), " ", p.name(), " gamma=", gamma);
        CHECK(worst <= 0.02);
      }
    }
  }
}

TEST_CASE("real problems stay real and the models agree") {
  const TimeVariantProblem p = synthetic::real_problem();
  RunConfig rc;
  rc.seed = 11;
  RealVector z0 = initial_state(rc, 2, 2);
  z0.tail(4).setZero();
  const auto times = linspace(0.0, 10.0, 201);
  const Trajectory t1 = integrate(build_con_cznd1(p, 1.0), z0, 0.0, 10.0, {}, times);
  const Trajectory t2 = integrate(build_con_cznd2(p, 1.0), z0, 0.0, 10.0, {}, times);
  double imag = 0.0, gap = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    imag = std::max({imag, t1.states[k].tail(4).cwiseAbs().maxCoeff(),
                     t2.states[k].tail(4).cwiseAbs().maxCoeff()});
    gap = std::max(gap, (t1.states[k].head(4) - t2.states[k].head(4)).cwiseAbs().maxCoeff());
  }
  CHECK(imag <= 1e-9);
  CHECK(gap <= 1e-6);
}

#include "cznd/clinalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace cznd::clinalg {

RealMatrix real_part(const ComplexMatrix& m) { return m.real(); }

RealMatrix imag_part(const ComplexMatrix& m) { return m.imag(); }

ComplexMatrix compose(const RealMatrix& re, const RealMatrix& im) {
  if (re.rows() != im.rows() || re.cols() != im.cols()) {
    throw ShapeError("compose: real and imaginary parts differ in shape");
  }
  ComplexMatrix out(re.rows(), re.cols());
  out.real() = re;
  out.imag() = im;
  return out;
}

ComplexMatrix from_real(const RealMatrix& re) {
  return compose(re, RealMatrix::Zero(re.rows(), re.cols()));
}

ComplexMatrix identity(Index n) { return ComplexMatrix::Identity(n, n); }

ComplexMatrix conj(const ComplexMatrix& m) {
  ComplexMatrix out(m.rows(), m.cols());
  out.real() = m.real();
  out.imag() = -m.imag();
  return out;
}

ComplexMatrix herm(const ComplexMatrix& m) {
  ComplexMatrix out(m.cols(), m.rows());
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index k = 0; k < m.rows(); ++k) {
      out(j, k) = std::conj(m(k, j));
    }
  }
  return out;
}

ComplexMatrix transpose(const ComplexMatrix& m) { return conj(herm(m)); }

ComplexVector vec(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvec(const ComplexVector& v, Index rows, Index cols) {
  if (rows <= 0 || cols <= 0 || v.size() != rows * cols) {
    std::ostringstream os;
    os << "unvec: vector of length " << v.size() << " cannot fill a " << rows << "x" << cols
       << " matrix";
    throw ShapeError(os.str());
  }
  return Eigen::Map<const ComplexMatrix>(v.data(), rows, cols);
}

namespace {

template <typename Mat>
Mat kron_impl(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index j = 0; j < a.rows(); ++j) {
    for (Index k = 0; k < a.cols(); ++k) {
      out.block(j * b.rows(), k * b.cols(), b.rows(), b.cols()) = a(j, k) * b;
    }
  }
  return out;
}

}  // namespace

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) { return kron_impl(a, b); }

RealMatrix kron(const RealMatrix& a, const RealMatrix& b) { return kron_impl(a, b); }

ComplexVector vec_axb(const ComplexMatrix& a, const ComplexMatrix& x, const ComplexMatrix& b) {
  if (a.cols() != x.rows() || x.cols() != b.rows()) {
    std::ostringstream os;
    os << "vec_axb: shapes " << a.rows() << "x" << a.cols() << ", " << x.rows() << "x"
       << x.cols() << ", " << b.rows() << "x" << b.cols() << " do not conform";
    throw ShapeError(os.str());
  }
  return kron(conj(herm(b)), a) * vec(x);
}

double frobenius(const ComplexMatrix& m) { return m.norm(); }

double frobenius(const RealMatrix& m) { return m.norm(); }

bool all_finite(const RealMatrix& m) { return m.allFinite(); }

bool all_finite(const ComplexMatrix& m) { return m.real().allFinite() && m.imag().allFinite(); }

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    std::ostringstream os;
    os << "matmul: " << a.rows() << "x" << a.cols() << " times " << b.rows() << "x" << b.cols();
    throw ShapeError(os.str());
  }
  return a * b;
}

RealMatrix pinv(const RealMatrix& w) {
  if (!w.allFinite()) {
    std::ostringstream os;
    os << "pinv: " << w.rows() << "x" << w.cols() << " matrix has non-finite entries";
    throw NumericalError(os.str());
  }
  if (w.size() == 0) {
    return RealMatrix(w.cols(), w.rows());
  }

  Eigen::JacobiSVD<RealMatrix> svd(w, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    std::ostringstream os;
    os << "pinv: SVD did not converge for " << w.rows() << "x" << w.cols()
       << " matrix (frobenius " << w.norm() << ")";
    throw NumericalError(os.str());
  }

  const RealVector& sigma = svd.singularValues();
  const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
  const double cutoff = static_cast<double>(std::max(w.rows(), w.cols())) *
                        std::numeric_limits<double>::epsilon() * sigma_max;

  RealVector inv = RealVector::Zero(sigma.size());
  for (Index k = 0; k < sigma.size(); ++k) {
    if (sigma(k) > cutoff) inv(k) = 1.0 / sigma(k);
  }
  RealMatrix out = svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
  if (!out.allFinite()) {
    std::ostringstream os;
    os << "pinv: result non-finite (sigma range [" << sigma.minCoeff() << ", " << sigma_max
       << "])";
    throw NumericalError(os.str());
  }
  return out;
}

}  // namespace cznd::clinalg

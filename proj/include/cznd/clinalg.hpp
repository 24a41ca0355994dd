#pragma once

#include <Eigen/Dense>
#include <complex>

#include "cznd/errors.hpp"

// Dense complex linear algebra over column-major storage.
//
// A ComplexMatrix M = M_r + i*M_i. vec() stacks columns first-to-last, so
// with column-major storage it is a reshape of the coefficient array.
namespace cznd::clinalg {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

RealMatrix real_part(const ComplexMatrix& m);
RealMatrix imag_part(const ComplexMatrix& m);
ComplexMatrix compose(const RealMatrix& re, const RealMatrix& im);
ComplexMatrix from_real(const RealMatrix& re);
ComplexMatrix identity(Index n);

ComplexMatrix conj(const ComplexMatrix& m);

/// Conjugate (Hermitian) transpose. This is the primitive; transpose() is
/// defined through it as conj(herm(M)).
ComplexMatrix herm(const ComplexMatrix& m);
ComplexMatrix transpose(const ComplexMatrix& m);

ComplexVector vec(const ComplexMatrix& m);

/// Inverse of vec(). Throws ShapeError if v.size() != rows * cols.
ComplexMatrix unvec(const ComplexVector& v, Index rows, Index cols);

/// Block Kronecker product: block (j,k) of the result is a(j,k) * b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
RealMatrix kron(const RealMatrix& a, const RealMatrix& b);

/// vec(A X B) evaluated as kron(conj(herm(B)), A) * vec(X).
ComplexVector vec_axb(const ComplexMatrix& a, const ComplexMatrix& x, const ComplexMatrix& b);

double frobenius(const ComplexMatrix& m);
double frobenius(const RealMatrix& m);

bool all_finite(const RealMatrix& m);
bool all_finite(const ComplexMatrix& m);

/// Checked product; throws ShapeError on inner-dimension mismatch.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

/// Moore-Penrose pseudo-inverse through the SVD. Singular values at or below
/// max(rows, cols) * eps * sigma_max are dropped.
///
/// Throws NumericalError if W has non-finite entries or the SVD fails; the
/// message carries the matrix shape and the singular-value range when known.
RealMatrix pinv(const RealMatrix& w);

}  // namespace cznd::clinalg

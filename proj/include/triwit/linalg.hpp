// Copyright 2026 The triwit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense complex linear algebra shared by every other module. All
// routines are pure functions of their arguments.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>

#include <Eigen/Dense>

#include "triwit/errors.hpp"

namespace triwit {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

/// Numerical cutoffs. rank_rel is relative to the largest singular
/// value; psd_abs is scaled by the operator norm of the matrix it is
/// applied to; ineq_abs is the slack granted to scalar inequalities.
struct Tolerance {
  double rank_rel = 1e-9;
  double psd_abs = 1e-9;
  double ineq_abs = 1e-9;

  void validate() const {
    if (!(rank_rel > 0.0) || !(psd_abs > 0.0) || !(ineq_abs > 0.0)) {
      throw InvalidArgument("tolerance fields must be positive");
    }
  }
};

/// Kronecker product. Column vectors give a column vector (a CMat with
/// one column, which converts to CVec).
template <typename DA, typename DB>
CMat kron(const Eigen::MatrixBase<DA>& a_expr, const Eigen::MatrixBase<DB>& b_expr) {
  const CMat a = a_expr.template cast<cplx>();
  const CMat b = b_expr.template cast<cplx>();
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Singular values in descending order.
inline RVec singular_values(const CMat& m) {
  if (m.size() == 0) return RVec();
  Eigen::JacobiSVD<CMat> svd(m);
  return svd.singularValues();
}

/// Spectral norm (largest singular value); 0 for empty matrices.
inline double op_norm(const CMat& m) {
  RVec sv = singular_values(m);
  return sv.size() == 0 ? 0.0 : sv(0);
}

inline std::size_t svd_rank(const CMat& m, const Tolerance& tol = {}) {
  RVec sv = singular_values(m);
  if (sv.size() == 0 || !(sv(0) > 0.0)) return 0;
  const double cut = tol.rank_rel * sv(0);
  return static_cast<std::size_t>((sv.array() > cut).count());
}

inline bool is_hermitian(const CMat& m, const Tolerance& tol = {}) {
  if (m.rows() != m.cols()) return false;
  // Frobenius norms on both sides keep the gate cheap.
  return (m - m.adjoint()).norm() <= tol.psd_abs * m.norm();
}

inline CMat hermitian_part(const CMat& m) { return (m + m.adjoint()) / 2.0; }

/// Rotates v by a global phase so that its first entry of non-negligible
/// magnitude is real and non-negative.
inline void fix_phase(Eigen::Ref<CVec> v) {
  const double scale = v.cwiseAbs().maxCoeff();
  if (!(scale > 0.0)) return;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-12 * scale) {
      v *= std::conj(v(i)) / std::abs(v(i));
      v(i) = std::abs(v(i));
      return;
    }
  }
}

struct EigenSystem {
  RVec values;   // ascending
  CMat vectors;  // columns, unitary
};

inline EigenSystem hermitian_eig(const CMat& m, const Tolerance& tol = {}) {
  if (m.rows() != m.cols()) {
    throw NotHermitian("hermitian_eig: matrix is not square");
  }
  if (!is_hermitian(m, tol)) {
    throw NotHermitian("hermitian_eig: matrix is not Hermitian within tolerance");
  }
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(m));
  if (es.info() != Eigen::Success) {
    throw Error("hermitian_eig: eigensolver did not converge");
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

struct GenEigResult {
  double value;
  CVec vector;  // normalized so that x* b x = 1
};

/// Minimizes the Rayleigh quotient x*ax / x*bx over the numerical range
/// of b. Directions in which b is below psd_abs * ||b|| are discarded.
inline GenEigResult min_gen_eig(const CMat& a, const CMat& b,
                                const Tolerance& tol = {}) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw DimMismatch("min_gen_eig: a and b must be square of equal size");
  }
  if (!is_hermitian(a, tol)) {
    throw NotHermitian("min_gen_eig: a is not Hermitian");
  }
  EigenSystem be = hermitian_eig(b, tol);
  const double bnorm = be.values.cwiseAbs().maxCoeff();
  if (!(bnorm > 0.0)) {
    throw DegeneratePencil("min_gen_eig: b is numerically zero");
  }
  const double cut = tol.psd_abs * bnorm;
  Eigen::Index keep = 0;
  for (Eigen::Index i = 0; i < be.values.size(); ++i) {
    if (be.values(i) > cut) ++keep;
  }
  if (keep == 0) {
    throw DegeneratePencil("min_gen_eig: b has no positive directions");
  }
  // Whitening basis Q with Q* b Q = I on the retained subspace.
  CMat q(b.rows(), keep);
  Eigen::Index col = 0;
  for (Eigen::Index i = 0; i < be.values.size(); ++i) {
    if (be.values(i) > cut) {
      q.col(col++) = be.vectors.col(i) / std::sqrt(be.values(i));
    }
  }
  CMat reduced = hermitian_part(q.adjoint() * a * q);
  Eigen::SelfAdjointEigenSolver<CMat> es(reduced);
  CVec x = q * es.eigenvectors().col(0);
  fix_phase(x);
  return {es.eigenvalues()(0), x};
}

}  // namespace triwit

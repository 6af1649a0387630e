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

// Bi-linear maps M_A x M_B -> M_C, held as their Choi matrix
//   C = sum_{i,j,k,l} |i><j| (x) |k><l| (x) phi(|i><j|, |k><l|).

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "triwit/errors.hpp"
#include "triwit/linalg.hpp"
#include "triwit/tensor.hpp"

namespace triwit {

class BiLinearMap {
 public:
  BiLinearMap() = default;
  explicit BiLinearMap(TriOperator choi) : choi_(std::move(choi)) {}
  BiLinearMap(TriDims dims, CMat choi) : choi_(dims, std::move(choi)) {}

  /// Populates the Choi matrix once from phi(|i><j|, |k><l|), which
  /// must return a c x c matrix.
  template <typename F>
  static BiLinearMap from_matrix_units(const TriDims& d, F&& phi) {
    const auto n = static_cast<Eigen::Index>(d.total());
    const auto c = static_cast<Eigen::Index>(d.c);
    CMat choi = CMat::Zero(n, n);
    for (std::size_t i = 0; i < d.a; ++i)
      for (std::size_t j = 0; j < d.a; ++j)
        for (std::size_t k = 0; k < d.b; ++k)
          for (std::size_t l = 0; l < d.b; ++l) {
            CMat block = phi(i, j, k, l);
            if (block.rows() != c || block.cols() != c) {
              throw DimMismatch("from_matrix_units: callback must return c x c");
            }
            choi.block(static_cast<Eigen::Index>(d.index(i, k, 0)),
                       static_cast<Eigen::Index>(d.index(j, l, 0)), c, c) = block;
          }
    return {d, std::move(choi)};
  }

  const TriDims& dims() const { return choi_.dims(); }
  const CMat& choi() const { return choi_.mat(); }
  const TriOperator& choi_operator() const { return choi_; }

 private:
  TriOperator choi_;
};

using KrausSet = std::vector<CMat>;

/// Entrywise (Hadamard) product on M_n; its Choi matrix is the projector
/// onto sum_i |iii>.
inline BiLinearMap hadamard_map(std::size_t n) {
  TriDims d(n, n, n);
  CVec v = CVec::Zero(static_cast<Eigen::Index>(d.total()));
  for (std::size_t i = 0; i < n; ++i) v(static_cast<Eigen::Index>(d.index(i, i, i))) = 1.0;
  return {d, v * v.adjoint()};
}

inline CMat apply(const BiLinearMap& phi, const CMat& x, const CMat& y) {
  const TriDims& d = phi.dims();
  const auto a = static_cast<Eigen::Index>(d.a);
  const auto b = static_cast<Eigen::Index>(d.b);
  const auto c = static_cast<Eigen::Index>(d.c);
  if (x.rows() != a || x.cols() != a || y.rows() != b || y.cols() != b) {
    throw DimMismatch("apply: argument sizes do not match the map's dims");
  }
  CMat out = CMat::Zero(c, c);
  for (Eigen::Index i = 0; i < a; ++i)
    for (Eigen::Index j = 0; j < a; ++j) {
      if (x(i, j) == cplx(0.0)) continue;
      for (Eigen::Index k = 0; k < b; ++k)
        for (Eigen::Index l = 0; l < b; ++l) {
          const cplx w = x(i, j) * y(k, l);
          if (w == cplx(0.0)) continue;
          out += w * phi.choi().block((i * b + k) * c, (j * b + l) * c, c, c);
        }
    }
  return out;
}

/// phi_V(x, y) = V (x (x) y) V*, V of size c x ab. Its Choi matrix is
/// the rank-one projector onto sum_{(i,k)} |i>|k>|V_(i,k)>.
inline BiLinearMap elementary(const CMat& v, const TriDims& d) {
  const auto ab = static_cast<Eigen::Index>(d.a * d.b);
  const auto c = static_cast<Eigen::Index>(d.c);
  if (v.rows() != c || v.cols() != ab) {
    throw DimMismatch("elementary: V must be c x ab");
  }
  CVec range(ab * c);
  for (Eigen::Index col = 0; col < ab; ++col) range.segment(col * c, c) = v.col(col);
  return {d, range * range.adjoint()};
}

inline bool is_completely_positive(const BiLinearMap& phi, const Tolerance& tol = {}) {
  const CMat& ch = phi.choi();
  if (!is_hermitian(ch, tol)) return false;
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(ch), Eigen::EigenvaluesOnly);
  const RVec& ev = es.eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();
  return ev(0) >= -tol.psd_abs * scale;
}

/// Kraus form of a map with PSD Choi matrix: factors ordered by
/// descending weight, each the reshaped eigenvector scaled by sqrt(lambda).
inline KrausSet kraus_decompose(const BiLinearMap& phi, const Tolerance& tol = {}) {
  const TriDims& d = phi.dims();
  const auto ab = static_cast<Eigen::Index>(d.a * d.b);
  const auto c = static_cast<Eigen::Index>(d.c);
  EigenSystem es = hermitian_eig(phi.choi(), tol);
  const double scale = es.values.cwiseAbs().maxCoeff();
  if (es.values(0) < -tol.psd_abs * scale) {
    throw NotPSD("kraus_decompose: Choi matrix has eigenvalue " +
                     std::to_string(es.values(0)),
                 es.values(0));
  }
  KrausSet out;
  for (Eigen::Index idx = es.values.size() - 1; idx >= 0; --idx) {
    const double lam = es.values(idx);
    if (!(lam > tol.psd_abs * scale)) break;
    CVec vec = es.vectors.col(idx);
    fix_phase(vec);
    CMat v(c, ab);
    for (Eigen::Index col = 0; col < ab; ++col) v.col(col) = vec.segment(col * c, c);
    out.push_back(std::sqrt(lam) * v);
  }
  return out;
}

inline CMat kraus_choi(const KrausSet& kraus, const TriDims& d) {
  const auto n = static_cast<Eigen::Index>(d.total());
  CMat sum = CMat::Zero(n, n);
  for (const CMat& v : kraus) sum += elementary(v, d).choi();
  return sum;
}

/// <rho, phi> = Tr(C_phi rho^t).
inline cplx pair(const TriOperator& rho, const BiLinearMap& phi) {
  if (!(rho.dims() == phi.dims())) {
    throw DimMismatch("pair: state and map dims differ");
  }
  // Tr(C rho^t) = sum_{r,s} C_rs rho_rs.
  return phi.choi().cwiseProduct(rho.mat()).sum();
}

/// Dual with respect to a relabeling of the parties: the Choi matrix is
/// conjugated by the flip unitary.
inline BiLinearMap permute_dual(const BiLinearMap& phi, const Permutation3& sigma) {
  return BiLinearMap(flip(phi.choi_operator(), sigma));
}

/// E_phi : M_A -> M_BC, x -> sum_{i,j} x_ij C_{i,j}.
inline CMat e_map(const BiLinearMap& phi, const CMat& x) {
  const TriDims& d = phi.dims();
  const auto a = static_cast<Eigen::Index>(d.a);
  const auto bc = static_cast<Eigen::Index>(d.b * d.c);
  if (x.rows() != a || x.cols() != a) throw DimMismatch("e_map: x must be a x a");
  CMat out = CMat::Zero(bc, bc);
  for (Eigen::Index i = 0; i < a; ++i)
    for (Eigen::Index j = 0; j < a; ++j)
      if (x(i, j) != cplx(0.0)) out += x(i, j) * phi.choi().block(i * bc, j * bc, bc, bc);
  return out;
}

/// D_phi : M_AB -> M_C, z -> sum z_{(i,k),(j,l)} C_{(i,k),(j,l)}.
inline CMat d_map(const BiLinearMap& phi, const CMat& z) {
  const TriDims& d = phi.dims();
  const auto ab = static_cast<Eigen::Index>(d.a * d.b);
  const auto c = static_cast<Eigen::Index>(d.c);
  if (z.rows() != ab || z.cols() != ab) throw DimMismatch("d_map: z must be ab x ab");
  CMat out = CMat::Zero(c, c);
  for (Eigen::Index r = 0; r < ab; ++r)
    for (Eigen::Index s = 0; s < ab; ++s)
      if (z(r, s) != cplx(0.0)) out += z(r, s) * phi.choi().block(r * c, s * c, c, c);
  return out;
}

}  // namespace triwit

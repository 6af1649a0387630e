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

#include <algorithm>
#include <array>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "triwit/errors.hpp"
#include "triwit/linalg.hpp"
#include "triwit/tensor.hpp"

namespace triwit {

/// Schmidt rank (alpha, beta, gamma): the ranks of the three mode
/// unfoldings, equivalently the least (p,q,r) admitting a p x q x r
/// product expansion.
struct SchmidtRank {
  std::size_t alpha = 0;
  std::size_t beta = 0;
  std::size_t gamma = 0;

  std::array<std::size_t, 3> as_array() const { return {alpha, beta, gamma}; }
  static SchmidtRank from_array(const std::array<std::size_t, 3>& t) {
    return {t[0], t[1], t[2]};
  }
  SchmidtRank permuted(const Permutation3& sigma) const {
    return from_array(sigma.apply(as_array()));
  }
  std::string str() const {
    return "(" + std::to_string(alpha) + "," + std::to_string(beta) + "," +
           std::to_string(gamma) + ")";
  }
  bool operator==(const SchmidtRank&) const = default;
};

/// Triplet (p,q,r) of positive counts under the product order.
struct PosTriple {
  std::size_t p = 1;
  std::size_t q = 1;
  std::size_t r = 1;

  PosTriple() = default;
  PosTriple(std::size_t p_, std::size_t q_, std::size_t r_) : p(p_), q(q_), r(r_) {
    if (p == 0 || q == 0 || r == 0) {
      throw InvalidArgument("PosTriple components must be at least 1");
    }
  }

  std::array<std::size_t, 3> as_array() const { return {p, q, r}; }
  PosTriple permuted(const Permutation3& sigma) const {
    auto t = sigma.apply(as_array());
    return {t[0], t[1], t[2]};
  }
  bool fits(const TriDims& d) const { return p <= d.a && q <= d.b && r <= d.c; }
  std::string str() const {
    return "(" + std::to_string(p) + "," + std::to_string(q) + "," +
           std::to_string(r) + ")";
  }
  bool operator==(const PosTriple&) const = default;
};

/// Product partial order.
inline bool leq(const PosTriple& x, const PosTriple& y) {
  return x.p <= y.p && x.q <= y.q && x.r <= y.r;
}

inline bool leq(const SchmidtRank& x, const PosTriple& y) {
  return x.alpha <= y.p && x.beta <= y.q && x.gamma <= y.r;
}

namespace detail {

inline void require_nonzero(const CVec& v, const char* who) {
  if (!(v.norm() > 0.0)) throw ZeroVector(std::string(who) + ": vector is zero");
}

}  // namespace detail

inline SchmidtRank schmidt_rank(const TriVector& xi, const Tolerance& tol = {}) {
  detail::require_nonzero(xi.data(), "schmidt_rank");
  return {svd_rank(unfold(xi, Party::A), tol), svd_rank(unfold(xi, Party::B), tol),
          svd_rank(unfold(xi, Party::C), tol)};
}

/// Singular values of the three unfoldings, for gap diagnostics.
inline std::array<RVec, 3> mode_spectra(const TriVector& xi) {
  return {singular_values(unfold(xi, Party::A)),
          singular_values(unfold(xi, Party::B)),
          singular_values(unfold(xi, Party::C))};
}

/// Evaluates Lambda_xi(u) in L(H_B, H_C) as a c x b matrix, following the
/// nested-map construction: xi = sum_i e_i (x) eta_i and
/// Lambda_xi(u) = sum_i <conj(e_i)|u> lambda_{eta_i}, where
/// lambda_eta(v) = sum_n <conj(v_n)|v> w_n for eta = sum_n v_n (x) w_n.
inline CMat lambda_map(const TriVector& xi, const CVec& u) {
  const TriDims& d = xi.dims();
  const auto b = static_cast<Eigen::Index>(d.b);
  const auto c = static_cast<Eigen::Index>(d.c);
  CMat out = CMat::Zero(c, b);
  for (std::size_t i = 0; i < d.a; ++i) {
    CVec ebar = CVec::Zero(static_cast<Eigen::Index>(d.a));
    ebar(static_cast<Eigen::Index>(i)) = 1.0;  // real basis: conj is itself
    const cplx coeff = ebar.dot(u);            // <conj(e_i)|u>
    if (coeff == cplx(0.0)) continue;
    // eta_i expanded in the product basis: sum_{k,m} xi_ikm e_k (x) e_m.
    for (Eigen::Index k = 0; k < b; ++k) {
      for (Eigen::Index m = 0; m < c; ++m) {
        const cplx amp = xi(i, static_cast<std::size_t>(k), static_cast<std::size_t>(m));
        if (amp == cplx(0.0)) continue;
        // lambda_{e_k (x) e_m}(v) = <conj(e_k)|v> e_m: column k, row m.
        out(m, k) += coeff * amp;
      }
    }
  }
  return out;
}

/// Definitional Schmidt rank: alpha = rank Lambda_xi, beta = dimension of
/// the join of supports of the operators in ran Lambda_xi, gamma = dimension
/// of the join of their ranges.
inline SchmidtRank schmidt_rank_by_definition(const TriVector& xi,
                                              const Tolerance& tol = {}) {
  detail::require_nonzero(xi.data(), "schmidt_rank_by_definition");
  const TriDims& d = xi.dims();
  const auto a = static_cast<Eigen::Index>(d.a);
  const auto b = static_cast<Eigen::Index>(d.b);
  const auto c = static_cast<Eigen::Index>(d.c);

  std::vector<CMat> images;
  images.reserve(d.a);
  for (Eigen::Index i = 0; i < a; ++i) {
    images.push_back(lambda_map(xi, CVec::Unit(a, i)));
  }
  // rank of Lambda_xi: span of the vectorized images.
  CMat vecs(b * c, a);
  for (Eigen::Index i = 0; i < a; ++i) {
    vecs.col(i) = Eigen::Map<const CVec>(images[i].data(), b * c);
  }
  // ran Lambda_xi is spanned by the images, so joins over it reduce to
  // joins over the images. supp T = ran T*.
  CMat supports(b, c * a);
  CMat ranges(c, b * a);
  for (Eigen::Index i = 0; i < a; ++i) {
    supports.block(0, i * c, b, c) = images[i].adjoint();
    ranges.block(0, i * b, c, b) = images[i];
  }
  return {svd_rank(vecs, tol), svd_rank(supports, tol), svd_rank(ranges, tol)};
}

inline bool sr_leq(const TriVector& xi, const PosTriple& t, const Tolerance& tol = {}) {
  return leq(schmidt_rank(xi, tol), t);
}

/// Membership in the admissible region of Schmidt-rank triplets.
inline bool sigma_contains(const std::array<std::size_t, 3>& t, const TriDims& d) {
  const auto [x, y, z] = t;
  return x >= 1 && y >= 1 && z >= 1 && x <= d.a && y <= d.b && z <= d.c &&
         x <= y * z && y <= z * x && z <= x * y;
}

inline std::vector<std::array<std::size_t, 3>> enumerate_sigma(const TriDims& d) {
  std::vector<std::array<std::size_t, 3>> out;
  for (std::size_t x = 1; x <= d.a; ++x)
    for (std::size_t y = 1; y <= d.b; ++y)
      for (std::size_t z = 1; z <= d.c; ++z)
        if (sigma_contains({x, y, z}, d)) out.push_back({x, y, z});
  return out;
}

namespace detail {

/// Builds a vector with Schmidt rank exactly (x, y, z), x <= y <= z, in a
/// space of dims (da, db, dc) using standard basis vectors.
/// Splits z = y*k + rem with 1 <= rem <= y; the first k A-vectors carry
/// full blocks of y C-vectors, the next carries the remainder, and the
/// rest pick up diagonal terms e_j (x) e_j.
inline TriVector sorted_generator(std::size_t x, std::size_t y, std::size_t z,
                                  const TriDims& d) {
  TriVector xi = TriVector::zero(d);
  const std::size_t k = (z + y - 1) / y - 1;
  const std::size_t rem = z - y * k;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < y; ++j) xi(i, j, i * y + j) += 1.0;
  }
  for (std::size_t j = 0; j < rem; ++j) xi(k, j, k * y + j) += 1.0;
  for (std::size_t i = 0; i + k + 1 < x; ++i) xi(k + 1 + i, i, i) += 1.0;
  return xi;
}

}  // namespace detail

/// A vector whose Schmidt rank is exactly t.
inline TriVector construct_state_with_sr(const std::array<std::size_t, 3>& t,
                                         const TriDims& dims) {
  if (!sigma_contains(t, dims)) {
    throw NotAdmissible("triplet (" + std::to_string(t[0]) + "," +
                        std::to_string(t[1]) + "," + std::to_string(t[2]) +
                        ") is not an admissible Schmidt rank for dims (" +
                        std::to_string(dims.a) + "," + std::to_string(dims.b) +
                        "," + std::to_string(dims.c) + ")");
  }
  // Order parties by ascending target rank, build there, flip back.
  std::array<int, 3> perm{0, 1, 2};
  std::stable_sort(perm.begin(), perm.end(), [&](int l, int r) { return t[l] < t[r]; });
  const Permutation3 sigma(static_cast<Party>(perm[0]), static_cast<Party>(perm[1]),
                           static_cast<Party>(perm[2]));
  const auto st = sigma.apply(t);
  TriVector sorted = detail::sorted_generator(st[0], st[1], st[2], sigma.apply(dims));
  sorted.data() /= sorted.norm();
  return flip(sorted, sigma.inverse());
}

/// Mode-k unfolding ranks of an n-partite vector.
inline std::vector<std::size_t> multirank(const CVec& xi,
                                          const std::vector<std::size_t>& dims,
                                          const Tolerance& tol = {}) {
  detail::require_nonzero(xi, "multirank");
  std::vector<std::size_t> out;
  out.reserve(dims.size());
  for (std::size_t mode = 0; mode < dims.size(); ++mode) {
    out.push_back(svd_rank(multi_unfold(xi, dims, mode), tol));
  }
  return out;
}

}  // namespace triwit

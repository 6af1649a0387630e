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

// Tri-partite index bookkeeping. The basis ket |i>|k>|m> of
// C^a (x) C^b (x) C^c sits at flat index (i*b + k)*c + m, so A is the
// slowest index and C the fastest.

#include <array>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "triwit/errors.hpp"
#include "triwit/linalg.hpp"

namespace triwit {

enum class Party : int { A = 0, B = 1, C = 2 };

inline char party_name(Party p) { return "ABC"[static_cast<int>(p)]; }

struct TriDims {
  std::size_t a = 1;
  std::size_t b = 1;
  std::size_t c = 1;

  TriDims() = default;
  TriDims(std::size_t a_, std::size_t b_, std::size_t c_) : a(a_), b(b_), c(c_) {
    if (a == 0 || b == 0 || c == 0) {
      throw DimMismatch("subsystem dimensions must be at least 1");
    }
  }

  std::size_t total() const { return a * b * c; }
  std::size_t operator[](Party p) const { return as_array()[static_cast<int>(p)]; }
  std::array<std::size_t, 3> as_array() const { return {a, b, c}; }
  std::size_t index(std::size_t i, std::size_t k, std::size_t m) const {
    return (i * b + k) * c + m;
  }
  bool operator==(const TriDims&) const = default;
};

/// One of the six relabelings of {A,B,C}. order[j] is the original party
/// that occupies slot j after the flip, so {B,C,A} sends
/// H_A (x) H_B (x) H_C to H_B (x) H_C (x) H_A.
class Permutation3 {
 public:
  Permutation3() : order_{Party::A, Party::B, Party::C} {}
  Permutation3(Party first, Party second, Party third)
      : order_{first, second, third} {
    std::array<bool, 3> seen{};
    for (Party p : order_) seen[static_cast<int>(p)] = true;
    if (!(seen[0] && seen[1] && seen[2])) {
      throw InvalidArgument("Permutation3 must be a bijection on {A,B,C}");
    }
  }

  static Permutation3 identity() { return {}; }

  static std::array<Permutation3, 6> all() {
    using P = Party;
    return {Permutation3(P::A, P::B, P::C), Permutation3(P::A, P::C, P::B),
            Permutation3(P::B, P::A, P::C), Permutation3(P::B, P::C, P::A),
            Permutation3(P::C, P::A, P::B), Permutation3(P::C, P::B, P::A)};
  }

  Party operator[](std::size_t slot) const { return order_[slot]; }

  Permutation3 inverse() const {
    std::array<Party, 3> inv{};
    for (int j = 0; j < 3; ++j) {
      inv[static_cast<int>(order_[j])] = static_cast<Party>(j);
    }
    return {inv[0], inv[1], inv[2]};
  }

  /// Flip by *this, then by next.
  Permutation3 then(const Permutation3& next) const {
    return {order_[static_cast<int>(next[0])], order_[static_cast<int>(next[1])],
            order_[static_cast<int>(next[2])]};
  }

  /// S^sigma = (s_{sigma A}, s_{sigma B}, s_{sigma C}).
  template <typename T>
  std::array<T, 3> apply(const std::array<T, 3>& s) const {
    return {s[static_cast<int>(order_[0])], s[static_cast<int>(order_[1])],
            s[static_cast<int>(order_[2])]};
  }

  TriDims apply(const TriDims& d) const {
    auto arr = apply(d.as_array());
    return {arr[0], arr[1], arr[2]};
  }

  std::string name() const {
    return std::string("(A,B,C)->(") + party_name(order_[0]) + "," +
           party_name(order_[1]) + "," + party_name(order_[2]) + ")";
  }

  bool operator==(const Permutation3&) const = default;

 private:
  std::array<Party, 3> order_;
};

class TriVector {
 public:
  TriVector() : dims_(1, 1, 1), data_(CVec::Zero(1)) {}
  TriVector(TriDims dims, CVec data) : dims_(dims), data_(std::move(data)) {
    if (static_cast<std::size_t>(data_.size()) != dims_.total()) {
      throw DimMismatch("TriVector: data length " + std::to_string(data_.size()) +
                        " does not match a*b*c = " + std::to_string(dims_.total()));
    }
  }

  static TriVector zero(TriDims dims) {
    return {dims, CVec::Zero(static_cast<Eigen::Index>(dims.total()))};
  }

  const TriDims& dims() const { return dims_; }
  const CVec& data() const { return data_; }
  CVec& data() { return data_; }

  cplx operator()(std::size_t i, std::size_t k, std::size_t m) const {
    return data_(static_cast<Eigen::Index>(dims_.index(i, k, m)));
  }
  cplx& operator()(std::size_t i, std::size_t k, std::size_t m) {
    return data_(static_cast<Eigen::Index>(dims_.index(i, k, m)));
  }

  double norm() const { return data_.norm(); }

 private:
  TriDims dims_;
  CVec data_;
};

class TriOperator {
 public:
  TriOperator() : dims_(1, 1, 1), mat_(CMat::Zero(1, 1)) {}
  TriOperator(TriDims dims, CMat mat) : dims_(dims), mat_(std::move(mat)) {
    const auto n = static_cast<Eigen::Index>(dims_.total());
    if (mat_.rows() != n || mat_.cols() != n) {
      throw DimMismatch("TriOperator: matrix is " + std::to_string(mat_.rows()) +
                        "x" + std::to_string(mat_.cols()) + ", expected " +
                        std::to_string(n) + "x" + std::to_string(n));
    }
  }

  static TriOperator projector(const TriVector& xi) {
    return {xi.dims(), xi.data() * xi.data().adjoint()};
  }

  const TriDims& dims() const { return dims_; }
  const CMat& mat() const { return mat_; }
  CMat& mat() { return mat_; }

 private:
  TriDims dims_;
  CMat mat_;
};

inline TriVector product_vector(const CVec& u, const CVec& v, const CVec& w) {
  if (u.size() == 0 || v.size() == 0 || w.size() == 0) {
    throw DimMismatch("product_vector: factors must be nonempty");
  }
  TriDims dims(u.size(), v.size(), w.size());
  return {dims, kron(kron(u, v), w)};
}

namespace detail {

/// Flat index of the image of |i k m> under sigma, in the flipped layout.
inline std::vector<std::size_t> flip_index_map(const TriDims& dims,
                                               const Permutation3& sigma) {
  const TriDims out = sigma.apply(dims);
  std::vector<std::size_t> map(dims.total());
  for (std::size_t i = 0; i < dims.a; ++i) {
    for (std::size_t k = 0; k < dims.b; ++k) {
      for (std::size_t m = 0; m < dims.c; ++m) {
        const std::array<std::size_t, 3> labels{i, k, m};
        const auto nl = sigma.apply(labels);
        map[dims.index(i, k, m)] = out.index(nl[0], nl[1], nl[2]);
      }
    }
  }
  return map;
}

}  // namespace detail

/// Permutation matrix U with U e_n = e_{flip(n)}.
inline CMat flip_unitary(const TriDims& dims, const Permutation3& sigma) {
  const auto map = detail::flip_index_map(dims, sigma);
  const auto n = static_cast<Eigen::Index>(dims.total());
  CMat u = CMat::Zero(n, n);
  for (std::size_t j = 0; j < map.size(); ++j) {
    u(static_cast<Eigen::Index>(map[j]), static_cast<Eigen::Index>(j)) = 1.0;
  }
  return u;
}

inline TriVector flip(const TriVector& x, const Permutation3& sigma) {
  const auto map = detail::flip_index_map(x.dims(), sigma);
  CVec out(x.data().size());
  for (std::size_t j = 0; j < map.size(); ++j) {
    out(static_cast<Eigen::Index>(map[j])) = x.data()(static_cast<Eigen::Index>(j));
  }
  return {sigma.apply(x.dims()), std::move(out)};
}

/// U C U* with U the flip unitary of sigma.
inline TriOperator flip(const TriOperator& x, const Permutation3& sigma) {
  const auto map = detail::flip_index_map(x.dims(), sigma);
  const auto n = static_cast<Eigen::Index>(map.size());
  CMat out(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      out(static_cast<Eigen::Index>(map[r]), static_cast<Eigen::Index>(map[c])) =
          x.mat()(r, c);
    }
  }
  return {sigma.apply(x.dims()), std::move(out)};
}

inline TriOperator transpose_full(const TriOperator& rho) {
  return {rho.dims(), rho.mat().transpose()};
}

/// Mode unfolding: rows indexed by the chosen party, columns by the other
/// two in A-before-B-before-C order.
inline CMat unfold(const TriVector& xi, Party mode) {
  const TriDims& d = xi.dims();
  const auto a = static_cast<Eigen::Index>(d.a);
  const auto b = static_cast<Eigen::Index>(d.b);
  const auto c = static_cast<Eigen::Index>(d.c);
  CMat out;
  switch (mode) {
    case Party::A:
      out.resize(a, b * c);
      break;
    case Party::B:
      out.resize(b, a * c);
      break;
    case Party::C:
      out.resize(c, a * b);
      break;
  }
  for (Eigen::Index i = 0; i < a; ++i) {
    for (Eigen::Index k = 0; k < b; ++k) {
      for (Eigen::Index m = 0; m < c; ++m) {
        const cplx v = xi.data()((i * b + k) * c + m);
        switch (mode) {
          case Party::A:
            out(i, k * c + m) = v;
            break;
          case Party::B:
            out(k, i * c + m) = v;
            break;
          case Party::C:
            out(m, i * b + k) = v;
            break;
        }
      }
    }
  }
  return out;
}

inline TriVector refold(const CMat& unfolded, const TriDims& d, Party mode) {
  const std::size_t rows = d[mode];
  if (static_cast<std::size_t>(unfolded.rows()) != rows ||
      static_cast<std::size_t>(unfolded.size()) != d.total()) {
    throw DimMismatch("refold: matrix shape does not match dims and mode");
  }
  TriVector out = TriVector::zero(d);
  for (std::size_t i = 0; i < d.a; ++i) {
    for (std::size_t k = 0; k < d.b; ++k) {
      for (std::size_t m = 0; m < d.c; ++m) {
        Eigen::Index r = 0, col = 0;
        switch (mode) {
          case Party::A:
            r = i, col = k * d.c + m;
            break;
          case Party::B:
            r = k, col = i * d.c + m;
            break;
          case Party::C:
            r = m, col = i * d.b + k;
            break;
        }
        out(i, k, m) = unfolded(r, col);
      }
    }
  }
  return out;
}

/// n-partite mode unfolding; mode is 0-based. Columns run over the
/// remaining indices in their original lexicographic order.
inline CMat multi_unfold(const CVec& xi, const std::vector<std::size_t>& dims,
                         std::size_t mode) {
  if (dims.empty() || mode >= dims.size()) {
    throw DimMismatch("multi_unfold: mode out of range");
  }
  std::size_t total = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw DimMismatch("multi_unfold: zero dimension");
    total *= d;
  }
  if (total != static_cast<std::size_t>(xi.size())) {
    throw DimMismatch("multi_unfold: product of dims " + std::to_string(total) +
                      " != vector length " + std::to_string(xi.size()));
  }
  const std::size_t rows = dims[mode];
  const std::size_t cols = total / rows;
  // Strides of the original row-major layout.
  std::vector<std::size_t> stride(dims.size(), 1);
  for (std::size_t j = dims.size() - 1; j > 0; --j) stride[j - 1] = stride[j] * dims[j];

  CMat out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  std::vector<std::size_t> idx(dims.size(), 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (std::size_t j = 0; j < dims.size(); ++j) {
      idx[j] = rem / stride[j];
      rem %= stride[j];
    }
    std::size_t col = 0;
    for (std::size_t j = 0; j < dims.size(); ++j) {
      if (j == mode) continue;
      col = col * dims[j] + idx[j];
    }
    out(static_cast<Eigen::Index>(idx[mode]), static_cast<Eigen::Index>(col)) =
        xi(static_cast<Eigen::Index>(flat));
  }
  return out;
}

/// Hilbert-Schmidt inner product Tr(x* y).
inline cplx hs_inner(const CMat& x, const CMat& y) {
  return (x.adjoint() * y).trace();
}

}  // namespace triwit

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

// Membership in the Schmidt-number cones by construction, and see-saw
// minimization of <xi|W|xi> over unit vectors with SR(xi) <= (p,q,r).
// A returned NotFound is "no violation found", never a positivity proof.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <thread>
#include <vector>

#include "triwit/errors.hpp"
#include "triwit/linalg.hpp"
#include "triwit/schmidt.hpp"
#include "triwit/tensor.hpp"

namespace triwit {

using Rng = std::mt19937_64;

struct SeesawConfig {
  std::size_t restarts = 20;
  std::size_t max_sweeps = 200;
  double convergence_eps = 1e-10;
  std::uint64_t seed = 0;
  std::size_t threads = 0;  // 0: hardware concurrency

  void validate() const {
    if (restarts < 1 || max_sweeps < 1 || !(convergence_eps > 0.0)) {
      throw InvalidArgument("SeesawConfig: restarts, max_sweeps >= 1 and eps > 0 required");
    }
  }
};

struct ViolationCertificate {
  TriVector xi;  // unit norm, SR(xi) <= target
  double value = 0.0;
  PosTriple target;
};

struct SeesawRun {
  TriVector xi;
  double value = std::numeric_limits<double>::infinity();
  std::vector<double> trace;  // objective after each block update
  std::size_t sweeps = 0;
};

struct SearchResult {
  std::optional<ViolationCertificate> certificate;
  double best_value = std::numeric_limits<double>::infinity();
  TriVector best_xi;
  std::vector<double> restart_values;

  bool found() const { return certificate.has_value(); }
};

/// Per-restart generator: streams derive from seed arithmetic only.
inline Rng restart_rng(std::uint64_t seed, std::uint64_t restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart),
                    static_cast<std::uint32_t>(restart >> 32)};
  return Rng(seq);
}

inline CMat random_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  CMat m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = nd(rng);
      const double im = nd(rng);
      m(i, j) = cplx(re, im);
    }
  return m;
}

/// n x k matrix with orthonormal columns, k <= n.
inline CMat random_isometry(Eigen::Index n, Eigen::Index k, Rng& rng) {
  Eigen::HouseholderQR<CMat> qr(random_gaussian(n, k, rng));
  return qr.householderQ() * CMat::Identity(n, k);
}

namespace detail {

/// xi = sum c_ijk u_i (x) v_j (x) w_k with core index (i*q + j)*r + k.
struct Tucker {
  CMat u, v, w;
  CVec core;

  CMat basis() const { return kron(kron(u, v), w); }
  CVec assemble() const { return basis() * core; }
};

inline Tucker random_tucker(const TriDims& d, const PosTriple& t, Rng& rng) {
  Tucker tk;
  tk.u = random_isometry(static_cast<Eigen::Index>(d.a), static_cast<Eigen::Index>(t.p), rng);
  tk.v = random_isometry(static_cast<Eigen::Index>(d.b), static_cast<Eigen::Index>(t.q), rng);
  tk.w = random_isometry(static_cast<Eigen::Index>(d.c), static_cast<Eigen::Index>(t.r), rng);
  tk.core = random_gaussian(static_cast<Eigen::Index>(t.p * t.q * t.r), 1, rng);
  return tk;
}

}  // namespace detail

template <typename URBG>
TriVector sample_sr_vector(const TriDims& dims, const PosTriple& t, URBG& rng) {
  if (!t.fits(dims)) {
    throw DimMismatch("sample_sr_vector: target " + t.str() + " exceeds dims");
  }
  Rng local(rng());
  detail::Tucker tk = detail::random_tucker(dims, t, local);
  CVec xi = tk.assemble();
  xi /= xi.norm();
  return {dims, std::move(xi)};
}

/// Unit-trace sum of projectors onto SR-bounded vectors; SN(rho) <= t
/// by construction.
template <typename URBG>
TriOperator sample_state(const TriDims& dims, const PosTriple& t, std::size_t n_terms,
                         URBG& rng) {
  if (n_terms < 1) throw InvalidArgument("sample_state: n_terms must be at least 1");
  const auto n = static_cast<Eigen::Index>(dims.total());
  CMat rho = CMat::Zero(n, n);
  for (std::size_t i = 0; i < n_terms; ++i) {
    const TriVector xi = sample_sr_vector(dims, t, rng);
    rho += xi.data() * xi.data().adjoint();
  }
  rho /= rho.trace().real();
  return {dims, std::move(rho)};
}

namespace detail {

enum class Block { U, V, W, Core };

inline CMat& factor(Tucker& tk, Block b) {
  switch (b) {
    case Block::U:
      return tk.u;
    case Block::V:
      return tk.v;
    default:
      return tk.w;
  }
}

/// Columns are xi evaluated at unit entries of the free block, so that
/// xi = L x with x the block's entries in column-major order.
inline CMat block_linear_map(const Tucker& tk, Block b) {
  if (b == Block::Core) return tk.basis();
  Tucker probe = tk;
  CMat& f = factor(probe, b);
  const Eigen::Index rows = f.rows(), cols = f.cols();
  CMat l(static_cast<Eigen::Index>(tk.u.rows() * tk.v.rows() * tk.w.rows()), rows * cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      f.setZero();
      f(i, j) = 1.0;
      l.col(j * rows + i) = probe.assemble();
    }
  return l;
}

/// Absorbs the triangular factor of a QR step into the core so the
/// factor stays orthonormal and xi is unchanged.
inline void reorthonormalize(Tucker& tk, Block b) {
  CMat& f = factor(tk, b);
  Eigen::HouseholderQR<CMat> qr(f);
  const Eigen::Index k = f.cols();
  CMat q = qr.householderQ() * CMat::Identity(f.rows(), k);
  CMat r = q.adjoint() * f;
  f = q;
  const Eigen::Index p = tk.u.cols(), qq = tk.v.cols(), rr = tk.w.cols();
  CMat lift;
  switch (b) {
    case Block::U:
      lift = kron(kron(r, CMat::Identity(qq, qq)), CMat::Identity(rr, rr));
      break;
    case Block::V:
      lift = kron(kron(CMat::Identity(p, p), r), CMat::Identity(rr, rr));
      break;
    default:
      lift = kron(CMat(CMat::Identity(p * qq, p * qq)), r);
      break;
  }
  tk.core = lift * tk.core;
}

inline double rayleigh(const CMat& h, const CVec& xi) {
  return (xi.dot(h * xi)).real() / xi.squaredNorm();
}

}  // namespace detail

/// One see-saw descent from a random start.
inline SeesawRun seesaw_restart(const CMat& h, const TriDims& dims, const PosTriple& t,
                                const SeesawConfig& cfg, Rng& rng, const Tolerance& tol = {}) {
  using detail::Block;
  detail::Tucker tk = detail::random_tucker(dims, t, rng);
  SeesawRun run;
  double current = detail::rayleigh(h, tk.assemble());
  double sweep_start = current;
  for (std::size_t sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
    for (Block b : {Block::U, Block::V, Block::W, Block::Core}) {
      const CMat l = detail::block_linear_map(tk, b);
      const CMat a = hermitian_part(l.adjoint() * h * l);
      const CMat bm = hermitian_part(l.adjoint() * l);
      GenEigResult sol;
      try {
        sol = min_gen_eig(a, bm, tol);
      } catch (const DegeneratePencil&) {
        if (b == Block::Core) {
          tk.core = random_gaussian(tk.core.size(), 1, rng);
        } else {
          CMat& f = detail::factor(tk, b);
          f = random_isometry(f.rows(), f.cols(), rng);
        }
        current = detail::rayleigh(h, tk.assemble());
        continue;
      }
      if (b == Block::Core) {
        tk.core = sol.vector;
      } else {
        CMat& f = detail::factor(tk, b);
        f = Eigen::Map<const CMat>(sol.vector.data(), f.rows(), f.cols());
        detail::reorthonormalize(tk, b);
      }
      tk.core /= tk.core.norm();
      current = detail::rayleigh(h, tk.assemble());
      run.trace.push_back(current);
    }
    run.sweeps = sweep + 1;
    if (sweep_start - current < cfg.convergence_eps) break;
    sweep_start = current;
  }
  CVec xi = tk.assemble();
  xi /= xi.norm();
  run.xi = TriVector(dims, std::move(xi));
  run.value = detail::rayleigh(h, run.xi.data());
  return run;
}

inline SearchResult violation_search(const TriOperator& w, const PosTriple& t,
                                     const SeesawConfig& cfg = {}, const Tolerance& tol = {}) {
  cfg.validate();
  if (!is_hermitian(w.mat(), tol)) {
    throw NotHermitian("violation_search: operator is not Hermitian");
  }
  if (!t.fits(w.dims())) {
    throw DimMismatch("violation_search: target " + t.str() + " exceeds dims");
  }
  const CMat h = hermitian_part(w.mat());

  std::vector<SeesawRun> runs(cfg.restarts);
  std::size_t workers = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
  workers = std::clamp<std::size_t>(workers, 1, cfg.restarts);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < cfg.restarts; i = next++) {
      Rng rng = restart_rng(cfg.seed, i);
      runs[i] = seesaw_restart(h, w.dims(), t, cfg, rng, tol);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(work);
  }

  SearchResult res;
  std::size_t best = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    res.restart_values.push_back(runs[i].value);
    if (runs[i].value < runs[best].value) best = i;
  }
  res.best_value = runs[best].value;
  res.best_xi = runs[best].xi;

  const double scale = op_norm(h);
  if (res.best_value < -tol.ineq_abs * scale) {
    ViolationCertificate cert{res.best_xi, detail::rayleigh(h, res.best_xi.data()), t};
    if (!sr_leq(cert.xi, t, tol) || std::abs(cert.xi.norm() - 1.0) > 1e-9) {
      throw Error("violation_search: certificate failed re-validation");
    }
    res.certificate = std::move(cert);
  }
  return res;
}

/// Independent re-check of a certificate against the operator it refutes.
inline bool validate_certificate(const ViolationCertificate& cert, const TriOperator& w,
                                 const Tolerance& tol = {}) {
  if (!(cert.xi.dims() == w.dims())) return false;
  if (std::abs(cert.xi.norm() - 1.0) > 1e-9) return false;
  if (!sr_leq(cert.xi, cert.target, tol)) return false;
  const double v = cert.xi.data().dot(w.mat() * cert.xi.data()).real();
  return std::abs(v - cert.value) <= 1e-9 * std::max(1.0, op_norm(w.mat())) && v < 0.0;
}

}  // namespace triwit

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

// The three-qubit anti-diagonal witness family. The Choi matrix has
// diagonal (s1,s2,s3,s4,t4,t3,t2,t1) and anti-diagonal
// (u1,u2,u3,u4,conj u4,conj u3,conj u2,conj u1) in the basis
// |000>,|001>,...,|111>.

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "triwit/choi.hpp"
#include "triwit/errors.hpp"
#include "triwit/linalg.hpp"
#include "triwit/schmidt.hpp"
#include "triwit/tensor.hpp"

namespace triwit {

struct QubitWitnessParams {
  std::array<double, 4> s{};
  std::array<double, 4> t{};
  std::array<cplx, 4> u{};

  void validate() const {
    for (int i = 0; i < 4; ++i) {
      if (!(s[i] >= 0.0) || !(t[i] >= 0.0)) {
        throw InvalidArgument("witness parameters s and t must be nonnegative");
      }
    }
  }

  /// sqrt(s_i t_i), 0-based.
  double geo(int i) const { return std::sqrt(s[i] * t[i]); }
};

/// The three classes decided by pairs of inequalities.
enum class PairClass { A_BC, B_CA, C_AB };

inline PosTriple pair_class_triple(PairClass cls) {
  switch (cls) {
    case PairClass::A_BC:
      return {1, 2, 2};
    case PairClass::B_CA:
      return {2, 1, 2};
    case PairClass::C_AB:
      return {2, 2, 1};
  }
  return {};
}

/// 0-based index pairs whose inequalities characterize each class.
inline std::array<std::pair<int, int>, 2> pair_class_indices(PairClass cls) {
  switch (cls) {
    case PairClass::A_BC:
      return {{{0, 3}, {1, 2}}};
    case PairClass::B_CA:
      return {{{0, 2}, {1, 3}}};
    case PairClass::C_AB:
      return {{{0, 1}, {2, 3}}};
  }
  return {};
}

inline BiLinearMap family_choi(const QubitWitnessParams& p) {
  CMat m = CMat::Zero(8, 8);
  for (int i = 0; i < 4; ++i) {
    m(i, i) = p.s[i];
    m(7 - i, 7 - i) = p.t[i];
    m(i, 7 - i) = p.u[i];
    m(7 - i, i) = std::conj(p.u[i]);
  }
  return {TriDims(2, 2, 2), std::move(m)};
}

/// sqrt(s_i t_i) + sqrt(s_j t_j) - |u_i| - |u_j|, 0-based indices.
inline double pair_slack(const QubitWitnessParams& p, int i, int j) {
  return p.geo(i) + p.geo(j) - std::abs(p.u[i]) - std::abs(p.u[j]);
}

/// (2,2,2)-positivity: sqrt(s_i t_i) >= |u_i| for every i.
inline bool check_222(const QubitWitnessParams& p, const Tolerance& tol = {}) {
  for (int i = 0; i < 4; ++i) {
    if (p.geo(i) < std::abs(p.u[i]) - tol.ineq_abs) return false;
  }
  return true;
}

inline bool check_pair_class(const QubitWitnessParams& p, PairClass cls,
                             const Tolerance& tol = {}) {
  for (auto [i, j] : pair_class_indices(cls)) {
    if (pair_slack(p, i, j) < -tol.ineq_abs) return false;
  }
  return true;
}

/// Both sides of the (1,1,1) inequality at alpha, as lhs - rhs.
inline double slack_111(const QubitWitnessParams& p, cplx alpha) {
  const double r2 = std::norm(alpha);
  const auto& s = p.s;
  const auto& t = p.t;
  const auto& u = p.u;
  const double lhs = std::sqrt((s[0] + t[3] * r2) * (s[3] + t[0] * r2)) +
                     std::sqrt((s[1] + t[2] * r2) * (s[2] + t[1] * r2));
  const double rhs = std::abs(u[0] * std::conj(alpha) + std::conj(u[3]) * alpha) +
                     std::abs(u[1] * std::conj(alpha) + std::conj(u[2]) * alpha);
  return lhs - rhs;
}

enum class Verdict { Certified, Refuted, NumericallySupported };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Certified:
      return "Certified";
    case Verdict::Refuted:
      return "Refuted";
    case Verdict::NumericallySupported:
      return "NumericallySupported";
  }
  return "?";
}

struct AlphaGrid {
  std::size_t radii = 64;
  std::size_t angles = 64;
  double r_min = 1e-3;
  double r_max = 1e3;
};

struct ClassVerdict {
  PosTriple cls;
  Verdict verdict = Verdict::NumericallySupported;
  std::string evidence;
  std::optional<cplx> alpha;  // violating alpha when a (1,1,1) check is refuted
  double slack = 0.0;         // smallest slack seen by the deciding check
};

namespace detail {

inline double scan_111_descend(const QubitWitnessParams& p, double log_r, double theta,
                               double step_lr, double step_th, cplx& best_alpha) {
  auto eval = [&](double lr, double th) { return slack_111(p, std::polar(std::exp(lr), th)); };
  double best = eval(log_r, theta);
  for (int iter = 0; iter < 80 && (step_lr > 1e-10 || step_th > 1e-10); ++iter) {
    bool moved = false;
    const std::array<std::pair<double, double>, 4> moves{
        {{step_lr, 0.0}, {-step_lr, 0.0}, {0.0, step_th}, {0.0, -step_th}}};
    for (auto [dl, dt] : moves) {
      const double v = eval(log_r + dl, theta + dt);
      if (v < best) {
        best = v;
        log_r += dl;
        theta += dt;
        moved = true;
        break;
      }
    }
    if (!moved) {
      step_lr /= 2.0;
      step_th /= 2.0;
    }
  }
  best_alpha = std::polar(std::exp(log_r), theta);
  return best;
}

}  // namespace detail

/// One-sided (1,1,1) decision. Certification uses sufficient conditions;
/// refutation scans alpha over a polar grid with local refinement.
inline ClassVerdict check_111(const QubitWitnessParams& p, const AlphaGrid& grid = {},
                              const Tolerance& tol = {}) {
  if (grid.radii == 0 || grid.angles == 0) {
    throw InvalidArgument("check_111: grid counts must be at least 1");
  }
  ClassVerdict out{PosTriple(1, 1, 1)};
  double geo_sum = 0.0, u_sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    geo_sum += p.geo(i);
    u_sum += std::abs(p.u[i]);
  }
  if (geo_sum >= u_sum - tol.ineq_abs) {
    out.verdict = Verdict::Certified;
    out.slack = geo_sum - u_sum;
    out.evidence = "sum_i sqrt(s_i t_i) >= sum_i |u_i|";
    return out;
  }
  for (PairClass cls : {PairClass::A_BC, PairClass::B_CA, PairClass::C_AB}) {
    if (check_pair_class(p, cls, tol)) {
      out.verdict = Verdict::Certified;
      out.evidence = "dominated by certified class " + pair_class_triple(cls).str();
      return out;
    }
  }

  const double lr_min = std::log(grid.r_min);
  const double lr_max = std::log(grid.r_max);
  const double d_lr = grid.radii > 1 ? (lr_max - lr_min) / double(grid.radii - 1) : 1.0;
  const double d_th = 2.0 * std::numbers::pi / double(grid.angles);
  double worst = std::numeric_limits<double>::infinity();
  cplx worst_alpha{};
  for (std::size_t ir = 0; ir < grid.radii; ++ir) {
    const double lr = grid.radii > 1 ? lr_min + d_lr * double(ir) : 0.5 * (lr_min + lr_max);
    for (std::size_t ia = 0; ia < grid.angles; ++ia) {
      cplx alpha;
      const double v = detail::scan_111_descend(p, lr, d_th * double(ia), d_lr / 2.0,
                                                d_th / 2.0, alpha);
      if (v < worst) {
        worst = v;
        worst_alpha = alpha;
      }
    }
  }
  out.slack = worst;
  if (worst < -tol.ineq_abs) {
    out.verdict = Verdict::Refuted;
    out.alpha = worst_alpha;
    out.evidence = "inequality fails at alpha = (" + std::to_string(worst_alpha.real()) +
                   ", " + std::to_string(worst_alpha.imag()) + ")";
  } else {
    out.verdict = Verdict::NumericallySupported;
    out.evidence = "no violating alpha found on the grid (not a proof)";
  }
  return out;
}

struct PositivityReport {
  /// Order: (2,2,2), (1,2,2), (2,1,2), (2,2,1), (1,1,1).
  std::array<ClassVerdict, 5> classes;
  /// All six pair inequalities hold: the map is nonnegative on every
  /// bi-separable state.
  bool bisep_witness = false;
  std::vector<std::pair<int, int>> failing_pairs;  // 1-based

  const ClassVerdict& at(const PosTriple& t) const {
    for (const auto& c : classes)
      if (c.cls == t) return c;
    throw InvalidArgument("class " + t.str() + " is not reported");
  }
};

inline PositivityReport classify(const QubitWitnessParams& p, const AlphaGrid& grid = {},
                                 const Tolerance& tol = {}) {
  p.validate();
  PositivityReport rep;

  ClassVerdict& full = rep.classes[0];
  full.cls = PosTriple(2, 2, 2);
  full.verdict = Verdict::Certified;
  full.slack = std::numeric_limits<double>::infinity();
  full.evidence = "sqrt(s_i t_i) >= |u_i| for all i";
  for (int i = 0; i < 4; ++i) {
    const double sl = p.geo(i) - std::abs(p.u[i]);
    full.slack = std::min(full.slack, sl);
    if (sl < -tol.ineq_abs && full.verdict == Verdict::Certified) {
      full.verdict = Verdict::Refuted;
      full.evidence = "sqrt(s_" + std::to_string(i + 1) + " t_" + std::to_string(i + 1) +
                      ") < |u_" + std::to_string(i + 1) + "|";
    }
  }

  const std::array<PairClass, 3> pcs{PairClass::A_BC, PairClass::B_CA, PairClass::C_AB};
  for (std::size_t n = 0; n < pcs.size(); ++n) {
    ClassVerdict& cv = rep.classes[n + 1];
    cv.cls = pair_class_triple(pcs[n]);
    cv.verdict = Verdict::Certified;
    cv.slack = std::numeric_limits<double>::infinity();
    std::string holds;
    for (auto [i, j] : pair_class_indices(pcs[n])) {
      const double sl = pair_slack(p, i, j);
      cv.slack = std::min(cv.slack, sl);
      const std::string tag = "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
      if (sl < -tol.ineq_abs && cv.verdict == Verdict::Certified) {
        cv.verdict = Verdict::Refuted;
        cv.evidence = "pair inequality fails for " + tag;
      }
      holds += (holds.empty() ? "" : " and ") + tag;
    }
    if (cv.verdict == Verdict::Certified) cv.evidence = "pair inequalities hold for " + holds;
  }

  rep.classes[4] = check_111(p, grid, tol);

  rep.bisep_witness = true;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (pair_slack(p, i, j) < -tol.ineq_abs) {
        rep.bisep_witness = false;
        rep.failing_pairs.emplace_back(i + 1, j + 1);
      }
  return rep;
}

/// Genuine-entanglement witness W with s t = 1.
inline QubitWitnessParams genuine_witness(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw NonPositive("genuine_witness: s must be positive");
  }
  const double t = 1.0 / s;
  QubitWitnessParams p;
  p.s = {0.0, s, s, s};
  p.t = {0.0, t, t, t};
  p.u = {cplx(-1.0), cplx(0.0), cplx(0.0), cplx(0.0)};
  return p;
}

/// l0|000> + l1 e^{i theta}|100> + l2|101> + l3|110> + l4|111>.
inline TriVector ghz_vector(const std::array<double, 5>& lambdas, double theta) {
  TriVector psi = TriVector::zero(TriDims(2, 2, 2));
  psi(0, 0, 0) = lambdas[0];
  psi(1, 0, 0) = lambdas[1] * std::polar(1.0, theta);
  psi(1, 0, 1) = lambdas[2];
  psi(1, 1, 0) = lambdas[3];
  psi(1, 1, 1) = lambdas[4];
  return psi;
}

inline double ghz_closed_form(double s, const std::array<double, 5>& l) {
  const double t = 1.0 / s;
  return t * (l[1] * l[1] + l[2] * l[2] + l[3] * l[3]) - 2.0 * l[0] * l[4];
}

/// Pairing of the GHZ-type projector with W(s), cross-checked against the
/// closed form.
inline double ghz_value(double s, const std::array<double, 5>& lambdas, double theta) {
  const BiLinearMap w = family_choi(genuine_witness(s));
  for (double l : lambdas) {
    if (!(l >= 0.0)) throw InvalidArgument("ghz_value: lambdas must be nonnegative");
  }
  const cplx value = pair(TriOperator::projector(ghz_vector(lambdas, theta)), w);
  const double closed = ghz_closed_form(s, lambdas);
  double scale = 1.0;
  for (double l : lambdas) scale = std::max(scale, l * l * std::max(s, 1.0 / s));
  if (std::abs(value - closed) > 1e-10 * scale) {
    throw Error("ghz_value: pairing disagrees with closed form");
  }
  return value.real();
}

/// 2x2 matrix whose positivity for all alpha is equivalent to
/// sqrt(ab) + sqrt(cd) >= |omega| + |z|.
inline CMat lemma_matrix(double a, double b, double c, double d, cplx omega, cplx z,
                         cplx alpha) {
  CMat m(2, 2);
  const double r2 = std::norm(alpha);
  m(0, 0) = a + d * r2;
  m(0, 1) = omega * std::conj(alpha) + std::conj(z) * alpha;
  m(1, 0) = std::conj(omega) * alpha + z * std::conj(alpha);
  m(1, 1) = c + b * r2;
  return m;
}

/// The extremal alpha (ac/bd)^{1/4} e^{i arg(omega z)/2}; requires bd != 0.
inline cplx lemma_extremal_alpha(double a, double b, double c, double d, cplx omega, cplx z) {
  if (!(b * d > 0.0)) throw InvalidArgument("lemma_extremal_alpha: needs b d > 0");
  const double theta = std::arg(omega * z);
  return std::polar(std::pow(a * c / (b * d), 0.25), theta / 2.0);
}

}  // namespace triwit

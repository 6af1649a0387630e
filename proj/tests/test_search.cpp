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

#include <gtest/gtest.h>

#include <numbers>

#include "oracles.hpp"
#include "triwit/search.hpp"
#include "triwit/witness.hpp"

namespace triwit {
namespace {

TriOperator w_operator(double s = 1.0) {
  return family_choi(genuine_witness(s)).choi_operator();
}

TEST(SeesawConfig, Validation) {
  SeesawConfig c;
  EXPECT_NO_THROW(c.validate());
  c.restarts = 0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = {};
  c.max_sweeps = 0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = {};
  c.convergence_eps = 0;
  EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST(SampleSrVector, ProductTarget) {
  Rng rng(81);
  for (int n = 0; n < 20; ++n) {
    TriVector x = sample_sr_vector(TriDims(2, 3, 2), PosTriple(1, 1, 1), rng);
    EXPECT_EQ(schmidt_rank(x), (SchmidtRank{1, 1, 1}));
    EXPECT_NEAR(x.norm(), 1.0, 1e-12);
  }
}

TEST(SampleSrVector, GenericFullRank) {
  Rng rng(82);
  for (int n = 0; n < 50; ++n) {
    EXPECT_EQ(schmidt_rank(sample_sr_vector(TriDims(2, 2, 2), PosTriple(2, 2, 2), rng)),
              (SchmidtRank{2, 2, 2}));
  }
  EXPECT_EQ(schmidt_rank(sample_sr_vector(TriDims(3, 3, 4), PosTriple(2, 3, 4), rng)),
            (SchmidtRank{2, 3, 4}));
}

TEST(SampleSrVector, OneForcesEqualOthers) {
  Rng rng(83);
  for (int n = 0; n < 1000; ++n) {
    TriVector x = sample_sr_vector(TriDims(2, 2, 2), PosTriple(1, 2, 2), rng);
    SchmidtRank sr = schmidt_rank(x);
    ASSERT_TRUE(sr_leq(x, PosTriple(1, 2, 2)));
    ASSERT_EQ(sr.alpha, 1u);
    ASSERT_EQ(sr.beta, sr.gamma);
  }
}

TEST(SampleSrVector, RejectsOversizedTarget) {
  Rng rng(84);
  EXPECT_THROW(sample_sr_vector(TriDims(2, 2, 2), PosTriple(3, 1, 1), rng), DimMismatch);
}

TEST(SampleSrVector, DeterministicPerSeed) {
  Rng r1(85), r2(85);
  EXPECT_EQ(sample_sr_vector(TriDims(2, 2, 3), PosTriple(2, 2, 3), r1).data(),
            sample_sr_vector(TriDims(2, 2, 3), PosTriple(2, 2, 3), r2).data());
}

TEST(SampleState, PureProductAndTrace) {
  Rng rng(86);
  TriOperator rho = sample_state(TriDims(2, 2, 2), PosTriple(1, 1, 1), 1, rng);
  EXPECT_NEAR(rho.mat().trace().real(), 1.0, 1e-12);
  EXPECT_EQ(svd_rank(rho.mat()), 1u);
  for (int n = 0; n < 20; ++n) {
    TriOperator s = sample_state(TriDims(2, 3, 2), PosTriple(2, 2, 2), 1 + n % 5, rng);
    EXPECT_NEAR(s.mat().trace().real(), 1.0, 1e-10);
    EXPECT_LT((s.mat() - s.mat().adjoint()).norm(), 1e-14);
    EXPECT_GE(oracle::min_eig(s.mat()), -1e-10);
  }
  EXPECT_THROW(sample_state(TriDims(2, 2, 2), PosTriple(1, 1, 1), 0, rng), InvalidArgument);
}

TEST(SampleState, SeparableAgainstCertifiedWitness) {
  Rng rng(87);
  QubitWitnessParams p;
  p.s = {0, 1, 1, 2}, p.t = {0, 1, 1, 2}, p.u = {1, 1, 1, 1};
  ASSERT_TRUE(check_pair_class(p, PairClass::A_BC));
  const BiLinearMap phi = family_choi(p);
  for (int n = 0; n < 200; ++n) {
    TriOperator rho = sample_state(TriDims(2, 2, 2), PosTriple(1, 2, 2), 3, rng);
    EXPECT_GE(pair(rho, phi).real(), -1e-8);
  }
}

TEST(Tucker, ReorthonormalizeKeepsVector) {
  Rng rng(88);
  detail::Tucker tk = detail::random_tucker(TriDims(3, 2, 4), PosTriple(2, 2, 3), rng);
  tk.u = oracle::gauss_mat(3, 2, rng);
  CVec before = tk.assemble();
  detail::reorthonormalize(tk, detail::Block::U);
  EXPECT_LT((tk.assemble() - before).norm(), 1e-12 * before.norm());
  EXPECT_LT((tk.u.adjoint() * tk.u - CMat::Identity(2, 2)).norm(), 1e-12);
}

TEST(Tucker, BlockMapIsLinearInTheBlock) {
  Rng rng(89);
  detail::Tucker tk = detail::random_tucker(TriDims(2, 3, 2), PosTriple(2, 2, 2), rng);
  for (auto b : {detail::Block::U, detail::Block::V, detail::Block::W, detail::Block::Core}) {
    CMat l = detail::block_linear_map(tk, b);
    CVec flat;
    if (b == detail::Block::Core) {
      flat = tk.core;
    } else {
      CMat& f = detail::factor(tk, b);
      flat = Eigen::Map<CVec>(f.data(), f.size());
    }
    EXPECT_LT((l * flat - tk.assemble()).norm(), 1e-12);
  }
}

TEST(Seesaw, MonotoneDescent) {
  Rng hr(90);
  for (int trial = 0; trial < 5; ++trial) {
    const TriDims d(2, 3, 3);
    CMat h = oracle::hermitian(18, hr);
    SeesawConfig cfg;
    cfg.max_sweeps = 50;
    Rng rng = restart_rng(7, trial);
    SeesawRun run = seesaw_restart(h, d, PosTriple(1, 2, 2), cfg, rng);
    ASSERT_FALSE(run.trace.empty());
    for (std::size_t i = 1; i < run.trace.size(); ++i) {
      EXPECT_LE(run.trace[i], run.trace[i - 1] + 1e-12 * op_norm(h)) << i;
    }
    EXPECT_NEAR(run.value, run.trace.back(), 1e-12 * op_norm(h));
    EXPECT_NEAR(run.xi.norm(), 1.0, 1e-12);
    EXPECT_GE(run.value, oracle::min_eig(h) - 1e-10);
  }
}

TEST(ViolationSearch, GenuineWitnessFullRank) {
  SeesawConfig cfg;
  cfg.restarts = 10;
  SearchResult res = violation_search(w_operator(), PosTriple(2, 2, 2), cfg);
  ASSERT_TRUE(res.found());
  EXPECT_NEAR(res.best_value, oracle::min_eig(w_operator().mat()), 1e-6);
  EXPECT_TRUE(validate_certificate(*res.certificate, w_operator()));
}

TEST(ViolationSearch, GenuineWitnessPairClassNotFound) {
  for (PosTriple t : {PosTriple(1, 2, 2), PosTriple(2, 1, 2), PosTriple(2, 2, 1)}) {
    SearchResult res = violation_search(w_operator(2.0), t);
    EXPECT_FALSE(res.found()) << t.str();
    EXPECT_GE(res.best_value, -1e-6);
  }
}

TEST(ViolationSearch, NegativeIdentityProduct) {
  TriOperator w(TriDims(2, 2, 2), -CMat::Identity(8, 8));
  SeesawConfig cfg;
  cfg.restarts = 2;
  SearchResult res = violation_search(w, PosTriple(1, 1, 1), cfg);
  ASSERT_TRUE(res.found());
  EXPECT_NEAR(res.certificate->value, -1.0, 1e-12);
  EXPECT_EQ(schmidt_rank(res.certificate->xi), (SchmidtRank{1, 1, 1}));
  EXPECT_TRUE(validate_certificate(*res.certificate, w));
}

TEST(ViolationSearch, Errors) {
  CMat nh = CMat::Identity(8, 8);
  nh(0, 3) = 1;
  EXPECT_THROW(violation_search(TriOperator(TriDims(2, 2, 2), nh), PosTriple(1, 1, 1)),
               NotHermitian);
  EXPECT_THROW(violation_search(w_operator(), PosTriple(3, 1, 1)), DimMismatch);
  SeesawConfig bad;
  bad.restarts = 0;
  EXPECT_THROW(violation_search(w_operator(), PosTriple(1, 1, 1), bad), InvalidArgument);
}

TEST(ViolationSearch, DeterministicAcrossThreadCounts) {
  Rng hr(91);
  TriOperator w(TriDims(2, 2, 3), oracle::hermitian(12, hr));
  SeesawConfig one;
  one.restarts = 6;
  one.seed = 123;
  one.threads = 1;
  SeesawConfig many = one;
  many.threads = 3;
  SearchResult a = violation_search(w, PosTriple(1, 2, 2), one);
  SearchResult b = violation_search(w, PosTriple(1, 2, 2), many);
  EXPECT_EQ(a.restart_values, b.restart_values);
  EXPECT_EQ(a.best_xi.data(), b.best_xi.data());
}

TEST(ViolationSearch, ConeMonotonicity) {
  Rng hr(92);
  SeesawConfig cfg;
  cfg.restarts = 8;
  for (int trial = 0; trial < 4; ++trial) {
    TriOperator w(TriDims(2, 2, 2), oracle::hermitian(8, hr));
    const double v111 = violation_search(w, PosTriple(1, 1, 1), cfg).best_value;
    const double v122 = violation_search(w, PosTriple(1, 2, 2), cfg).best_value;
    const double v222 = violation_search(w, PosTriple(2, 2, 2), cfg).best_value;
    EXPECT_GE(v111, v122 - 1e-8);
    EXPECT_GE(v122, v222 - 1e-8);
    EXPECT_NEAR(v222, oracle::min_eig(w.mat()), 1e-8);
  }
}

TEST(ViolationSearch, ProductMinimumMatchesBruteForce) {
  // (1,1,1) on qubits: Bloch-sphere grids for the A and B factors, exact
  // minimization over the C factor (least eigenvalue of the compression).
  Rng hr(93);
  TriOperator w(TriDims(2, 2, 2), oracle::hermitian(8, hr));
  const double found = violation_search(w, PosTriple(1, 1, 1)).best_value;
  std::vector<CVec> grid;
  const int n = 24;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j < (i == 0 || i == n ? 1 : 2 * n); ++j) {
      const double th = std::numbers::pi * i / n, ph = std::numbers::pi * j / n;
      CVec v(2);
      v << std::cos(th / 2), std::polar(std::sin(th / 2), ph);
      grid.push_back(v);
    }
  double scan = std::numeric_limits<double>::infinity();
  for (const CVec& a : grid)
    for (const CVec& b : grid) {
      CMat ab = oracle::kron_entrywise(oracle::kron_entrywise(a, b), CMat::Identity(2, 2));
      scan = std::min(scan, oracle::min_eig(ab.adjoint() * w.mat() * ab));
    }
  EXPECT_LE(found, scan + 1e-9);
  EXPECT_GE(found, scan - 0.02 * op_norm(w.mat()));
}

}  // namespace
}  // namespace triwit

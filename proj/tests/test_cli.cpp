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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "triwit/cli.hpp"

namespace triwit {
namespace {

namespace fs = std::filesystem;
using io::json;

struct Outcome {
  int code;
  std::string out, err;
  json doc() const { return json::parse(out); }
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("triwit_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const json& j) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << j.dump();
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

json ghz_json() {
  TriVector g = TriVector::zero(TriDims(2, 2, 2));
  g(0, 0, 0) = 1 / std::sqrt(2.0), g(1, 1, 1) = 1 / std::sqrt(2.0);
  return io::vector_to_json(g);
}

TEST_F(Cli, SrGhzAndProduct) {
  Outcome o = run({"sr", "--in", write("ghz.json", ghz_json())});
  ASSERT_EQ(o.code, 0) << o.err;
  json d = o.doc();
  EXPECT_EQ(d["command"], "sr");
  EXPECT_EQ(d["results"]["sr"], "(2,2,2)");
  EXPECT_EQ(d["results"]["in_sigma"], true);
  EXPECT_EQ(d["results"]["singular_values"]["A"].size(), 2u);
  EXPECT_EQ(d["version"], cli::kVersion);
  EXPECT_TRUE(d.contains("tolerance"));
  EXPECT_TRUE(d.contains("inputs_digest"));

  TriVector p = TriVector::zero(TriDims(2, 3, 2));
  p(1, 2, 0) = 1;
  o = run({"sr", "--in", write("p.json", io::vector_to_json(p))});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(o.doc()["results"]["sr"], "(1,1,1)");
}

TEST_F(Cli, SrDimErrors) {
  const std::string f = write("ghz.json", ghz_json());
  Outcome o = run({"sr", "--in", f, "--dims", "2,2,3"});
  EXPECT_EQ(o.code, 2);
  EXPECT_FALSE(o.err.empty());
  json raw = ghz_json();
  raw.erase("dims");
  const std::string r = write("raw.json", raw);
  EXPECT_EQ(run({"sr", "--in", r}).code, 2);
  EXPECT_EQ(run({"sr", "--in", r, "--dims", "2,2,2"}).code, 0);
  EXPECT_EQ(run({"sr", "--in", r, "--dims", "2,4,1"}).code, 0);
  EXPECT_EQ(run({"sr", "--in", r, "--dims", "3,3,3"}).code, 2);
  EXPECT_EQ(run({"sr", "--in", path("missing.json")}).code, 2);
  std::ofstream(path("bad.json")) << "{ not json";
  EXPECT_EQ(run({"sr", "--in", path("bad.json")}).code, 2);
  EXPECT_EQ(run({"sr", "--in", write("zero.json", io::vector_to_json(TriVector::zero(TriDims(2, 2, 2))))}).code, 2);
}

TEST_F(Cli, ClassifyReferenceFamilies) {
  struct Row {
    std::string geo;
    std::vector<std::string> verdicts;
  };
  const std::vector<Row> rows{
      {"0,1,1,2", {"Refuted", "Certified", "Refuted", "Refuted", "Certified"}},
      {"0,0,2,2", {"Refuted", "Certified", "Certified", "Refuted", "Certified"}},
      {"0,0,0,4", {"Refuted", "Refuted", "Refuted", "Refuted", "Certified"}},
      {"0,2,2,2", {"Refuted", "Certified", "Certified", "Certified", "Certified"}}};
  for (const Row& r : rows) {
    Outcome o = run({"classify", "--s", r.geo, "--t", r.geo, "--u", "1:0,1,0:1,-1"});
    ASSERT_EQ(o.code, 0) << o.err;
    json cls = o.doc()["results"]["classes"];
    ASSERT_EQ(cls.size(), 5u);
    for (std::size_t k = 0; k < 5; ++k) EXPECT_EQ(cls[k]["verdict"], r.verdicts[k]) << r.geo << k;
  }
}

TEST_F(Cli, ClassifyWitnessAndDefaults) {
  Outcome o = run({"classify", "--s", "0,1,1,1", "--t", "0,1,1,1", "--u", "-1,0,0,0"});
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(o.doc()["results"]["bisep_witness"], true);
  o = run({"classify"});
  ASSERT_EQ(o.code, 0);
  for (const auto& c : o.doc()["results"]["classes"]) EXPECT_EQ(c["verdict"], "Certified");
}

TEST_F(Cli, ClassifyInputErrors) {
  EXPECT_EQ(run({"classify", "--s", "1,-1,1,1"}).code, 2);
  EXPECT_EQ(run({"classify", "--t", "1,1,1"}).code, 2);
  EXPECT_EQ(run({"classify", "--u", "1:2:3,0,0,0"}).code, 2);
  EXPECT_EQ(run({"classify", "--u", "x,0,0,0"}).code, 2);
  EXPECT_EQ(run({"classify", "--grid-radii", "0"}).code, 2);
  EXPECT_EQ(run({"classify", "--tol-ineq", "-1"}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST_F(Cli, PairGhzAgainstWitness) {
  Outcome o = run({"pair", "--state", write("ghz.json", ghz_json()), "--witness", "1"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_NEAR(o.doc()["results"]["re"].get<double>(), -1.0, 1e-12);
  EXPECT_NEAR(o.doc()["results"]["im"].get<double>(), 0.0, 1e-15);
  o = run({"pair", "--state", path("ghz.json"), "--family", "--s", "0,1,1,1", "--t", "0,1,1,1",
           "--u", "-1,0,0,0"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_NEAR(o.doc()["results"]["re"].get<double>(), -1.0, 1e-12);
}

TEST_F(Cli, PairMixedStateHadamardMap) {
  const std::string st =
      write("mixed.json", io::operator_to_json(TriOperator(TriDims(2, 2, 2), CMat::Identity(8, 8) / 8.0), "state"));
  const std::string mp = write("had.json", io::operator_to_json(hadamard_map(2).choi_operator(), "choi"));
  Outcome o = run({"pair", "--state", st, "--map", mp});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_DOUBLE_EQ(o.doc()["results"]["re"].get<double>(), 0.25);
}

TEST_F(Cli, PairErrors) {
  const std::string st = write("s.json", io::operator_to_json(TriOperator(TriDims(2, 2, 3), CMat::Identity(12, 12)), "state"));
  EXPECT_EQ(run({"pair", "--state", st, "--witness", "1"}).code, 2);
  EXPECT_EQ(run({"pair", "--state", st}).code, 2);
  EXPECT_EQ(run({"pair", "--state", st, "--witness", "1", "--family"}).code, 2);
  EXPECT_EQ(run({"pair", "--state", st, "--witness", "-1"}).code, 2);
}

TEST_F(Cli, SearchWitness) {
  Outcome o = run({"search", "--witness", "1", "--sr", "2,2,2", "--restarts", "5", "--seed", "3"});
  ASSERT_EQ(o.code, 0) << o.err;
  json r = o.doc()["results"];
  EXPECT_EQ(r["found"], true);
  EXPECT_NEAR(r["certificate"]["value"].get<double>(), -1.0, 1e-6);
  EXPECT_EQ(r["certificate"]["schmidt_rank"], "(2,2,2)");
  // the serialized vector round-trips through sr
  const std::string v = write("cert.json", r["certificate"]["vector"]);
  EXPECT_EQ(run({"sr", "--in", v}).doc()["results"]["sr"], "(2,2,2)");

  o = run({"search", "--witness", "1", "--sr", "1,2,2", "--restarts", "5"});
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(o.doc()["results"]["found"], false);
  EXPECT_EQ(o.doc()["results"]["status"], "no violation found");
}

TEST_F(Cli, SearchMatrixFile) {
  const std::string m = write("neg.json", io::operator_to_json(TriOperator(TriDims(2, 2, 2), -CMat::Identity(8, 8)), "operator"));
  Outcome o = run({"search", "--matrix", m, "--sr", "1,1,1", "--restarts", "2"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_NEAR(o.doc()["results"]["certificate"]["value"].get<double>(), -1.0, 1e-12);

  CMat nh = CMat::Identity(8, 8);
  nh(0, 1) = 1;
  const std::string bad = write("nh.json", io::operator_to_json(TriOperator(TriDims(2, 2, 2), nh), "operator"));
  EXPECT_EQ(run({"search", "--matrix", bad, "--sr", "1,1,1"}).code, 3);
  EXPECT_EQ(run({"search", "--matrix", m, "--sr", "3,1,1"}).code, 2);
  EXPECT_EQ(run({"search", "--matrix", m}).code, 2);
  EXPECT_EQ(run({"search", "--matrix", m, "--sr", "1,1,1", "--restarts", "0"}).code, 2);
}

TEST_F(Cli, Determinism) {
  const std::vector<std::string> args{"search", "--witness", "0.5", "--sr", "1,2,2",
                                      "--restarts", "4", "--seed", "11"};
  EXPECT_EQ(run(args).out, run(args).out);
  const std::vector<std::string> gen{"gen", "--sample", "--sr", "1,2,2", "--dims", "2,2,2",
                                     "--terms", "5", "--seed", "9"};
  EXPECT_EQ(run(gen).out, run(gen).out);
  EXPECT_NE(run(gen).out, run({"gen", "--sample", "--sr", "1,2,2", "--dims", "2,2,2", "--terms",
                               "5", "--seed", "10"}).out);
}

TEST_F(Cli, GenRoundTrip) {
  Outcome o = run({"gen", "--sr", "2,2,3", "--dims", "2,2,3", "--out", path("v.json")});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_TRUE(o.out.empty());
  Outcome s = run({"sr", "--in", path("v.json")});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(s.doc()["results"]["sr"], "(2,2,3)");
  // bit-compatible: the parsed vector equals the generator output exactly
  const TriVector direct = construct_state_with_sr({2, 2, 3}, TriDims(2, 2, 3));
  EXPECT_EQ(io::vector_from_json(io::read_json_file(path("v.json"))).data(), direct.data());
}

TEST_F(Cli, GenSampleState) {
  Outcome o = run({"gen", "--sample", "--sr", "1,2,2", "--dims", "2,2,2", "--terms", "5"});
  ASSERT_EQ(o.code, 0) << o.err;
  TriOperator rho = io::operator_from_json(o.doc());
  EXPECT_NEAR(rho.mat().trace().real(), 1.0, 1e-12);
  Eigen::SelfAdjointEigenSolver<CMat> es(rho.mat());
  EXPECT_GE(es.eigenvalues()(0), -1e-12);
  // the state file feeds pair directly
  const std::string f = write("rho.json", o.doc());
  Outcome p = run({"pair", "--state", f, "--witness", "1"});
  ASSERT_EQ(p.code, 0) << p.err;
  EXPECT_GE(p.doc()["results"]["re"].get<double>(), -1e-10);
}

TEST_F(Cli, GenInadmissible) {
  Outcome o = run({"gen", "--sr", "1,2,3", "--dims", "2,2,3"});
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("admissible"), std::string::npos);
  EXPECT_EQ(run({"gen", "--sr", "1,2,3"}).code, 2);
  EXPECT_EQ(run({"gen", "--sr", "1,2"}).code, 2);
  EXPECT_EQ(run({"gen", "--sr", "0,1,1"}).code, 2);
}

TEST_F(Cli, SeedFromEnvironment) {
  const std::vector<std::string> gen{"gen", "--sample", "--sr", "1,1,1", "--dims", "2,2,2"};
  ::setenv("TRIWIT_SEED", "42", 1);
  const std::string a = run(gen).out;
  ::setenv("TRIWIT_SEED", "43", 1);
  const std::string b = run(gen).out;
  ::setenv("TRIWIT_SEED", "42", 1);
  EXPECT_EQ(run(gen).out, a);
  EXPECT_NE(a, b);
  ::setenv("TRIWIT_SEED", "nope", 1);
  EXPECT_EQ(run(gen).code, 2);
  ::unsetenv("TRIWIT_SEED");
}

TEST_F(Cli, HelpAndVersion) {
  EXPECT_EQ(run({"--version"}).code, 0);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Io, ComplexAndMatrixRoundTrip) {
  CMat m(2, 3);
  m << cplx(0.1, -0.2), 1.0 / 3.0, cplx(1e-300, 5e300), 7, cplx(-0.0, 2), std::sqrt(2.0);
  CMat back = io::matrix_from_json(json::parse(io::matrix_to_json(m).dump()));
  EXPECT_EQ(back, m);
  EXPECT_EQ(io::complex_from_json(json(2.5)), cplx(2.5));
  EXPECT_THROW(io::complex_from_json(json::array({1, 2, 3})), io::FormatError);
  json bad = io::matrix_to_json(m);
  bad["rows"] = 3;
  EXPECT_THROW(io::matrix_from_json(bad), io::FormatError);
}

TEST(Io, DigestIsStable) {
  EXPECT_EQ(io::fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(io::fnv1a_hex("a"), "af63dc4c8601ec8c");
}

}  // namespace
}  // namespace triwit

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

// Batch command-line front end. Exit codes: 0 success (including "no
// violation found"), 2 input error, 3 contract violation.

#include <algorithm>
#include <array>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "triwit/choi.hpp"
#include "triwit/errors.hpp"
#include "triwit/io.hpp"
#include "triwit/schmidt.hpp"
#include "triwit/search.hpp"
#include "triwit/witness.hpp"

namespace triwit::cli {

inline constexpr const char* kVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitContract = 3;

using io::json;

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

inline double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InvalidArgument("cannot parse " + what + " value '" + s + "'");
  }
}

inline std::array<std::size_t, 3> parse_triple(const std::string& s, const std::string& flag) {
  const auto parts = split(s, ',');
  if (parts.size() != 3) throw InvalidArgument(flag + " expects three comma-separated integers");
  std::array<std::size_t, 3> out{};
  for (int i = 0; i < 3; ++i) {
    const double v = parse_double(parts[i], flag);
    if (v < 1 || v != static_cast<double>(static_cast<long long>(v))) {
      throw InvalidArgument(flag + " entries must be positive integers");
    }
    out[i] = static_cast<std::size_t>(v);
  }
  return out;
}

inline std::array<double, 4> parse_reals4(const std::string& s, const std::string& flag) {
  const auto parts = split(s, ',');
  if (parts.size() != 4) throw InvalidArgument(flag + " expects four comma-separated numbers");
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) out[i] = parse_double(parts[i], flag);
  return out;
}

/// Four complex numbers written re:im (or plain re), comma separated.
inline std::array<cplx, 4> parse_complex4(const std::string& s, const std::string& flag) {
  const auto parts = split(s, ',');
  if (parts.size() != 4) throw InvalidArgument(flag + " expects four comma-separated re:im entries");
  std::array<cplx, 4> out{};
  for (int i = 0; i < 4; ++i) {
    const auto ri = split(parts[i], ':');
    if (ri.size() == 1) {
      out[i] = parse_double(ri[0], flag);
    } else if (ri.size() == 2) {
      out[i] = {parse_double(ri[0], flag), parse_double(ri[1], flag)};
    } else {
      throw InvalidArgument(flag + " entries must be re or re:im");
    }
  }
  return out;
}

inline json rvec_json(const RVec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

/// Flags shared by every subcommand.
struct Common {
  double tol_rank = Tolerance{}.rank_rel;
  double tol_psd = Tolerance{}.psd_abs;
  double tol_ineq = Tolerance{}.ineq_abs;
  std::string out_path;

  void attach(CLI::App* app) {
    app->add_option("--tol-rank", tol_rank, "relative singular-value cutoff");
    app->add_option("--tol-psd", tol_psd, "absolute eigenvalue floor (norm-scaled)");
    app->add_option("--tol-ineq", tol_ineq, "slack for scalar inequalities");
    app->add_option("--out", out_path, "write output to this file instead of stdout");
  }

  Tolerance tolerance() const {
    Tolerance t{tol_rank, tol_psd, tol_ineq};
    t.validate();
    return t;
  }
};

struct FamilyFlags {
  std::string s = "1,1,1,1";
  std::string t = "1,1,1,1";
  std::string u = "0,0,0,0";

  void attach(CLI::App* app) {
    app->add_option("--s", s, "s1..s4 (nonnegative)");
    app->add_option("--t", t, "t1..t4 (nonnegative)");
    app->add_option("--u", u, "u1..u4 as re:im");
  }

  QubitWitnessParams params() const {
    QubitWitnessParams p;
    p.s = parse_reals4(s, "--s");
    p.t = parse_reals4(t, "--t");
    p.u = parse_complex4(u, "--u");
    p.validate();
    return p;
  }
};

inline std::uint64_t default_seed() {
  if (const char* env = std::getenv("TRIWIT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InvalidArgument("TRIWIT_SEED must be an unsigned integer");
    }
  }
  return 0;
}

inline json tolerance_json(const Tolerance& t) {
  return json{{"rank_rel", t.rank_rel}, {"psd_abs", t.psd_abs}, {"ineq_abs", t.ineq_abs}};
}

inline json class_json(const ClassVerdict& cv) {
  json j{{"class", cv.cls.str()}, {"verdict", verdict_name(cv.verdict)},
         {"evidence", cv.evidence}, {"slack", cv.slack}};
  if (cv.alpha) j["alpha"] = io::complex_to_json(*cv.alpha);
  return j;
}

}  // namespace detail

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(std::vector<std::string> args) {
    CLI::App app{"triwit: tri-partite Schmidt ranks, bi-linear map witnesses and "
                 "block-positivity search"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    args_ = args;

    // sr
    auto* sr = app.add_subcommand("sr", "Schmidt rank of a tri-partite vector");
    std::string sr_in, sr_dims;
    sr->add_option("--in", sr_in, "vector JSON file")->required();
    sr->add_option("--dims", sr_dims, "expected dims a,b,c");
    detail::Common sr_common;
    sr_common.attach(sr);

    // classify
    auto* cl = app.add_subcommand("classify", "classify a qubit witness-family map");
    detail::FamilyFlags cl_fam;
    cl_fam.attach(cl);
    std::size_t radii = AlphaGrid{}.radii, angles = AlphaGrid{}.angles;
    cl->add_option("--grid-radii", radii, "radii in the (1,1,1) alpha scan");
    cl->add_option("--grid-angles", angles, "angles in the (1,1,1) alpha scan");
    detail::Common cl_common;
    cl_common.attach(cl);

    // pair
    auto* pr = app.add_subcommand("pair", "pairing <rho, phi> = Tr(C_phi rho^t)");
    std::string pr_state, pr_map;
    bool pr_family = false;
    double pr_witness = 0.0;
    pr->add_option("--state", pr_state, "state JSON file (operator, or vector read as a projector)")->required();
    pr->add_option("--map", pr_map, "Choi matrix JSON file");
    pr->add_flag("--family", pr_family, "use the qubit family given by --s/--t/--u");
    pr->add_option("--witness", pr_witness, "use the genuine witness W(s)");
    detail::FamilyFlags pr_fam;
    pr_fam.attach(pr);
    detail::Common pr_common;
    pr_common.attach(pr);

    // search
    auto* se = app.add_subcommand("search", "see-saw search for block-positivity violations");
    std::string se_matrix, se_sr;
    bool se_family = false;
    double se_witness = 0.0;
    SeesawConfig se_cfg;
    std::optional<std::uint64_t> se_seed;
    se->add_option("--matrix", se_matrix, "Hermitian operator / Choi matrix JSON file");
    se->add_flag("--family", se_family, "use the qubit family given by --s/--t/--u");
    se->add_option("--witness", se_witness, "use the genuine witness W(s)");
    se->add_option("--sr", se_sr, "Schmidt-rank bound p,q,r")->required();
    se->add_option("--restarts", se_cfg.restarts, "random restarts");
    se->add_option("--sweeps", se_cfg.max_sweeps, "maximum sweeps per restart");
    se->add_option("--eps", se_cfg.convergence_eps, "sweep improvement threshold");
    se->add_option("--seed", se_seed, "base seed (default: TRIWIT_SEED or 0)");
    detail::FamilyFlags se_fam;
    se_fam.attach(se);
    detail::Common se_common;
    se_common.attach(se);

    // gen
    auto* ge = app.add_subcommand("gen", "generate a vector of given Schmidt rank or sample a state");
    std::string ge_sr, ge_dims;
    bool ge_sample = false;
    std::size_t ge_terms = 1;
    std::optional<std::uint64_t> ge_seed;
    ge->add_option("--sr", ge_sr, "target triplet")->required();
    ge->add_option("--dims", ge_dims, "dims a,b,c (default: the target itself)");
    ge->add_flag("--sample", ge_sample, "sample a state with SN <= target instead");
    ge->add_option("--terms", ge_terms, "projectors in a sampled state");
    ge->add_option("--seed", ge_seed, "seed for --sample (default: TRIWIT_SEED or 0)");
    detail::Common ge_common;
    ge_common.attach(ge);

    try {
      std::reverse(args.begin(), args.end());
      app.parse(args);
    } catch (const CLI::CallForHelp&) {
      out_ << app.help();
      return kExitOk;
    } catch (const CLI::CallForVersion&) {
      out_ << kVersion << "\n";
      return kExitOk;
    } catch (const CLI::ParseError& e) {
      err_ << "error: " << e.what() << "\n";
      return kExitInput;
    }

    try {
      if (sr->parsed()) return cmd_sr(sr_in, sr_dims, sr_common);
      if (cl->parsed()) return cmd_classify(cl_fam, AlphaGrid{radii, angles}, cl_common);
      if (pr->parsed()) {
        return cmd_pair(pr_state, pr_map, pr_family, pr_witness, pr_fam, pr_common);
      }
      if (se->parsed()) {
        se_cfg.seed = se_seed ? *se_seed : detail::default_seed();
        return cmd_search(se_matrix, se_family, se_witness, se_fam, se_sr, se_cfg, se_common);
      }
      if (ge->parsed()) {
        return cmd_gen(ge_sr, ge_dims, ge_sample, ge_terms,
                       ge_seed ? *ge_seed : detail::default_seed(), ge_common);
      }
    } catch (const NotHermitian& e) {
      err_ << "error: " << e.what() << "\n";
      return kExitContract;
    } catch (const Error& e) {
      err_ << "error: " << e.what() << "\n";
      return kExitInput;
    } catch (const nlohmann::json::exception& e) {
      err_ << "error: malformed input: " << e.what() << "\n";
      return kExitInput;
    }
    return kExitInput;
  }

 private:
  int cmd_sr(const std::string& path, const std::string& dims_flag, const detail::Common& common) {
    const Tolerance tol = common.tolerance();
    const json doc = io::read_json_file(path);
    const CVec data = io::raw_vector_from_json(doc);
    std::optional<TriDims> dims;
    if (doc.contains("dims")) dims = io::dims_from_json(doc.at("dims"));
    if (!dims_flag.empty()) {
      const auto d = detail::parse_triple(dims_flag, "--dims");
      const TriDims flagged(d[0], d[1], d[2]);
      if (dims && !(*dims == flagged)) {
        throw DimMismatch("--dims does not match the dims recorded in " + path);
      }
      dims = flagged;
    }
    if (!dims) throw DimMismatch("no dims in file and no --dims given");
    const TriVector xi(*dims, data);  // throws DimMismatch on length
    const SchmidtRank sr = schmidt_rank(xi, tol);
    const auto spectra = mode_spectra(xi);
    json results{{"schmidt_rank", json::array({sr.alpha, sr.beta, sr.gamma})},
                 {"sr", sr.str()},
                 {"singular_values",
                  {{"A", detail::rvec_json(spectra[0])},
                   {"B", detail::rvec_json(spectra[1])},
                   {"C", detail::rvec_json(spectra[2])}}},
                 {"in_sigma", sigma_contains(sr.as_array(), *dims)},
                 {"norm", xi.norm()}};
    return emit("sr", io::slurp(path), std::move(results), tol, common);
  }

  int cmd_classify(const detail::FamilyFlags& fam, const AlphaGrid& grid,
                   const detail::Common& common) {
    const Tolerance tol = common.tolerance();
    const QubitWitnessParams p = fam.params();
    const PositivityReport rep = classify(p, grid, tol);
    json classes = json::array();
    for (const auto& cv : rep.classes) classes.push_back(detail::class_json(cv));
    json failing = json::array();
    for (auto [i, j] : rep.failing_pairs) failing.push_back(json::array({i, j}));
    json results{{"classes", std::move(classes)},
                 {"bisep_witness", rep.bisep_witness},
                 {"failing_pairs", std::move(failing)},
                 {"grid", {{"radii", grid.radii}, {"angles", grid.angles}}}};
    return emit("classify", "", std::move(results), tol, common);
  }

  BiLinearMap resolve_map(const std::string& map_path, bool family, double witness,
                          const detail::FamilyFlags& fam, std::string& inputs) {
    const int chosen = int(!map_path.empty()) + int(family) + int(witness != 0.0);
    if (chosen != 1) {
      throw InvalidArgument("give exactly one of --map/--matrix, --family, --witness");
    }
    if (!map_path.empty()) {
      inputs += io::slurp(map_path);
      return BiLinearMap(io::operator_from_json(io::read_json_file(map_path)));
    }
    if (family) return family_choi(fam.params());
    return family_choi(genuine_witness(witness));
  }

  int cmd_pair(const std::string& state_path, const std::string& map_path, bool family,
               double witness, const detail::FamilyFlags& fam, const detail::Common& common) {
    const Tolerance tol = common.tolerance();
    std::string inputs = io::slurp(state_path);
    const TriOperator rho = io::state_from_json(io::read_json_file(state_path));
    const BiLinearMap phi = resolve_map(map_path, family, witness, fam, inputs);
    const cplx v = pair(rho, phi);
    json results{{"re", v.real()}, {"im", v.imag()}};
    return emit("pair", inputs, std::move(results), tol, common);
  }

  int cmd_search(const std::string& matrix_path, bool family, double witness,
                 const detail::FamilyFlags& fam, const std::string& sr_flag,
                 const SeesawConfig& cfg, const detail::Common& common) {
    const Tolerance tol = common.tolerance();
    std::string inputs;
    const BiLinearMap w = resolve_map(matrix_path, family, witness, fam, inputs);
    const auto t3 = detail::parse_triple(sr_flag, "--sr");
    const PosTriple t(t3[0], t3[1], t3[2]);
    SeesawConfig run_cfg = cfg;
    run_cfg.threads = 1;
    const SearchResult res = violation_search(w.choi_operator(), t, run_cfg, tol);
    json results{{"target", t.str()},
                 {"found", res.found()},
                 {"status", res.found() ? "certificate" : "no violation found"},
                 {"best_value", res.best_value}};
    if (res.certificate) {
      results["certificate"] = {{"value", res.certificate->value},
                                {"schmidt_rank", schmidt_rank(res.certificate->xi, tol).str()},
                                {"vector", io::vector_to_json(res.certificate->xi)}};
    }
    results["config"] = {{"restarts", cfg.restarts},
                         {"sweeps", cfg.max_sweeps},
                         {"eps", cfg.convergence_eps},
                         {"seed", cfg.seed}};
    return emit("search", inputs, std::move(results), tol, common);
  }

  int cmd_gen(const std::string& sr_flag, const std::string& dims_flag, bool sample,
              std::size_t terms, std::uint64_t seed, const detail::Common& common) {
    const auto t = detail::parse_triple(sr_flag, "--sr");
    const auto d = dims_flag.empty() ? t : detail::parse_triple(dims_flag, "--dims");
    const TriDims dims(d[0], d[1], d[2]);
    json doc;
    if (sample) {
      Rng rng(seed);
      doc = io::operator_to_json(sample_state(dims, PosTriple(t[0], t[1], t[2]), terms, rng),
                                 "state");
    } else {
      doc = io::vector_to_json(construct_state_with_sr(t, dims));
    }
    write(doc.dump(2) + "\n", common);
    return kExitOk;
  }

  int emit(const std::string& command, const std::string& inputs, json results,
           const Tolerance& tol, const detail::Common& common) {
    std::string canonical = command;
    for (std::size_t i = 0; i < args_.size(); ++i) {
      if (args_[i] == "--out") {
        ++i;
        continue;
      }
      canonical += '\x1f' + args_[i];
    }
    canonical += '\x1e' + inputs;
    json report{{"command", command},
                {"args", args_},
                {"inputs_digest", "fnv1a64:" + io::fnv1a_hex(canonical)},
                {"results", std::move(results)},
                {"tolerance", detail::tolerance_json(tol)},
                {"version", kVersion}};
    write(report.dump(2) + "\n", common);
    return kExitOk;
  }

  void write(const std::string& text, const detail::Common& common) {
    if (common.out_path.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(common.out_path, std::ios::binary);
    if (!f) throw io::FormatError("cannot write " + common.out_path);
    f << text;
  }

  std::ostream& out_;
  std::ostream& err_;
  std::vector<std::string> args_;
};

inline int run(std::vector<std::string> args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  return Runner(out, err).run(std::move(args));
}

}  // namespace triwit::cli

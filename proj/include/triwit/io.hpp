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

// JSON interchange. Complex numbers are [re, im] pairs; matrices are
// row-major. Vectors:   {"dims":[a,b,c], "data":[[re,im],...]}
// Operators:            {"dims":[a,b,c], "rows":n, "cols":n, "data":[...]}

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "triwit/errors.hpp"
#include "triwit/linalg.hpp"
#include "triwit/tensor.hpp"

namespace triwit::io {

using json = nlohmann::ordered_json;

/// Raised for malformed or inconsistent input documents.
class FormatError : public Error {
 public:
  using Error::Error;
};

inline json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw FormatError("complex entries must be [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

inline json dims_to_json(const TriDims& d) { return json::array({d.a, d.b, d.c}); }

inline TriDims dims_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw FormatError("\"dims\" must be [a, b, c]");
  for (const auto& x : j) {
    if (!x.is_number_integer() || x.get<long long>() < 1) {
      throw FormatError("\"dims\" entries must be positive integers");
    }
  }
  return {j[0].get<std::size_t>(), j[1].get<std::size_t>(), j[2].get<std::size_t>()};
}

inline json matrix_to_json(const CMat& m) {
  json data = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(complex_to_json(m(r, c)));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline CMat matrix_from_json(const json& j) {
  if (!j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
    throw FormatError("matrix requires \"rows\", \"cols\" and \"data\"");
  }
  const auto rows = j.at("rows").get<long long>();
  const auto cols = j.at("cols").get<long long>();
  const json& data = j.at("data");
  if (rows < 0 || cols < 0 || !data.is_array() ||
      static_cast<long long>(data.size()) != rows * cols) {
    throw FormatError("matrix \"data\" length must equal rows*cols");
  }
  CMat m(rows, cols);
  for (long long r = 0; r < rows; ++r)
    for (long long c = 0; c < cols; ++c) m(r, c) = complex_from_json(data[r * cols + c]);
  return m;
}

inline json vector_to_json(const TriVector& v) {
  json data = json::array();
  for (Eigen::Index i = 0; i < v.data().size(); ++i) data.push_back(complex_to_json(v.data()(i)));
  return json{{"dims", dims_to_json(v.dims())}, {"data", std::move(data)}};
}

inline CVec raw_vector_from_json(const json& j) {
  if (!j.contains("data") || !j.at("data").is_array()) {
    throw FormatError("vector requires a \"data\" array");
  }
  const json& data = j.at("data");
  CVec v(static_cast<Eigen::Index>(data.size()));
  for (std::size_t i = 0; i < data.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(data[i]);
  return v;
}

inline TriVector vector_from_json(const json& j) {
  if (!j.contains("dims")) throw FormatError("vector requires \"dims\"");
  return {dims_from_json(j.at("dims")), raw_vector_from_json(j)};
}

inline json operator_to_json(const TriOperator& op, const std::string& kind) {
  json m = matrix_to_json(op.mat());
  json out{{"kind", kind}, {"dims", dims_to_json(op.dims())}};
  for (auto& [k, v] : m.items()) out[k] = v;
  return out;
}

inline TriOperator operator_from_json(const json& j) {
  if (!j.contains("dims")) throw FormatError("operator requires \"dims\"");
  return {dims_from_json(j.at("dims")), matrix_from_json(j)};
}

/// Accepts either an operator document or a vector document; a vector
/// is read as its projector |xi><xi|.
inline TriOperator state_from_json(const json& j) {
  if (j.contains("rows")) return operator_from_json(j);
  return TriOperator::projector(vector_from_json(j));
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// 64-bit FNV-1a, hex encoded.
inline std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream ss;
  ss << std::hex << std::setw(16) << std::setfill('0') << h;
  return ss.str();
}

}  // namespace triwit::io

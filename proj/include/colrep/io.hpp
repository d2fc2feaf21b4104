/**************************************************************************
 * io.hpp
 *
 * Copyright 2026 The colrep Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>

#include <json.hpp>

#include "colrep/column_replacement.hpp"
#include "colrep/errors.hpp"
#include "colrep/recovery.hpp"
#include "colrep/resize.hpp"
#include "colrep/sensing.hpp"

/**
 * File formats.
 *
 * Sensing matrix (JSON, one line):
 *   {"claimed_coherence": x|null, "construction": s, "entries": [[re, im], ...],
 *    "format_version": 1, "m": m, "n": n, "p": p|null, "params": {...}}
 * entries are row-major. Keys are emitted sorted and doubles in shortest
 * round-trip form, so equal matrices serialize to identical bytes.
 *
 * Sensing matrix (CSV): m lines of n cells "re+imj" (e.g. 0.2-0.5j).
 *
 * Pattern (JSON): {"alphabet_size": m, "entries": [[row 0], [row 1], ...]}
 * with 0-based column indices.
 *
 * Experiment result (CSV): x_axis_value,recovery_pct,mean_output_snr_db,trials
 */
namespace colrep::io {

constexpr int kMatrixFormatVersion = 1;

/// Shortest representation that round-trips, '.' decimal regardless of locale.
inline std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw error("format", "cannot format double");
  return std::string(buf, end);
}

/// Fixed-point with `digits` decimals, locale independent.
inline std::string format_fixed(double v, int digits = 6) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
  if (ec != std::errc{}) throw error("format", "cannot format double");
  return std::string(buf, end);
}

inline nlohmann::json to_json(const SensingMatrix& A) {
  nlohmann::json j;
  j["format_version"] = kMatrixFormatVersion;
  j["m"] = A.rows();
  j["n"] = A.cols();
  j["p"] = A.provenance().p ? nlohmann::json(*A.provenance().p) : nlohmann::json(nullptr);
  j["construction"] = A.provenance().construction;
  j["params"] = A.provenance().params;
  j["claimed_coherence"] = A.claimed_coherence() ? nlohmann::json(*A.claimed_coherence()) : nlohmann::json(nullptr);
  auto entries = nlohmann::json::array();
  entries.get_ref<nlohmann::json::array_t&>().reserve(static_cast<std::size_t>(A.rows() * A.cols()));
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index c = 0; c < A.cols(); ++c) {
      const auto z = A.entries()(i, c);
      entries.push_back({z.real(), z.imag()});
    }
  j["entries"] = std::move(entries);
  return j;
}

inline std::string serialize(const SensingMatrix& A) { return to_json(A).dump() + "\n"; }

namespace detail {

template <typename T>
T required(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw parse_error(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("field \"") + key + "\": " + e.what());
  }
}

inline nlohmann::json parse_text(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // nlohmann reports "at line L, column C" in what() and the byte offset in e.byte.
    throw parse_error(std::string(e.what()) + " (byte offset " + std::to_string(e.byte) + ")");
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("io", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("io", "cannot write " + path);
  out << text;
  if (!out) throw error("io", "write failed for " + path);
}

}  // namespace detail

inline SensingMatrix from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw parse_error("matrix file must hold a JSON object");
  const int version = detail::required<int>(j, "format_version");
  if (version != kMatrixFormatVersion) throw parse_error("unsupported format_version " + std::to_string(version));
  const auto m = detail::required<Eigen::Index>(j, "m");
  const auto n = detail::required<Eigen::Index>(j, "n");
  if (m < 1 || n < 1) throw parse_error("matrix dimensions must be positive");
  if (!j.contains("entries") || !j["entries"].is_array()) throw parse_error("missing array \"entries\"");
  const auto& e = j["entries"];
  if (e.size() != static_cast<std::size_t>(m * n))
    throw parse_error("\"entries\" holds " + std::to_string(e.size()) + " values, expected m*n = " + std::to_string(m * n));
  ComplexMatrix M(m, n);
  std::size_t t = 0;
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index c = 0; c < n; ++c, ++t) {
      const auto& z = e[t];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
        throw parse_error("entry " + std::to_string(t) + " is not a [re, im] pair");
      M(i, c) = {z[0].get<double>(), z[1].get<double>()};
    }
  Provenance prov;
  if (j.contains("p") && !j["p"].is_null()) prov.p = detail::required<int>(j, "p");
  prov.construction = j.contains("construction") ? j["construction"].get<std::string>() : "";
  prov.params = j.contains("params") ? j["params"] : nlohmann::json::object();
  std::optional<double> claimed;
  if (j.contains("claimed_coherence") && !j["claimed_coherence"].is_null())
    claimed = detail::required<double>(j, "claimed_coherence");
  return SensingMatrix(std::move(M), std::move(prov), claimed);
}

inline SensingMatrix parse_matrix(const std::string& text) { return from_json(detail::parse_text(text)); }

inline SensingMatrix load_matrix(const std::string& path) { return parse_matrix(detail::read_file(path)); }

inline void save_matrix(const SensingMatrix& A, const std::string& path) { detail::write_file(path, serialize(A)); }

inline std::string to_csv(const SensingMatrix& A) {
  std::string out;
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index c = 0; c < A.cols(); ++c) {
      const auto z = A.entries()(i, c);
      if (c) out += ',';
      out += format_double(z.real());
      const double im = z.imag();
      if (!std::signbit(im)) out += '+';
      out += format_double(im);
      out += 'j';
    }
    out += '\n';
  }
  return out;
}

inline nlohmann::json to_json(const CoherenceReport& r) {
  nlohmann::json j;
  j["coherence"] = r.exact;
  j["argmax_1based"] = {r.argmax.first + 1, r.argmax.second + 1};
  j["method"] = r.method.sampled ? "sampled" : "full";
  j["pairs"] = r.method.pairs;
  if (r.method.sampled) j["seed"] = r.method.seed;
  j["welch"] = r.welch ? nlohmann::json(*r.welch) : nlohmann::json(nullptr);
  j["ratio_to_welch"] = r.ratio_to_welch ? nlohmann::json(*r.ratio_to_welch) : nlohmann::json(nullptr);
  j["code_bound"] = r.code_bound ? nlohmann::json(*r.code_bound) : nlohmann::json(nullptr);
  return j;
}

inline nlohmann::json to_json(const RipEstimate& r) {
  nlohmann::json j;
  if (!r.k_max) {
    j["k_max"] = "unbounded";
    return j;
  }
  j["k_max"] = *r.k_max;
  auto d = nlohmann::json::object();
  for (const auto& [k, v] : r.delta) d[std::to_string(k)] = v;
  j["delta"] = std::move(d);
  return j;
}

inline nlohmann::json to_json(const ResizeReport& r) {
  nlohmann::json j;
  j["input"] = {{"m", r.input_rows}, {"n", r.input_cols}, {"coherence", r.input_coherence}};
  j["pattern"] = {{"N", r.pattern_rows}, {"L", r.pattern_cols}, {"d_P", r.pattern_agreement}};
  j["output"] = {{"m", r.output_rows}, {"n", r.output_cols}};
  j["bound"] = r.bound;
  j["coherence"] = to_json(r.output);
  return j;
}

inline nlohmann::json to_json(const KroneckerComparison& c) {
  return {{"p", c.p},
          {"column_replacement", c.column_replacement},
          {"kronecker", c.kronecker},
          {"margin", c.margin},
          {"column_replacement_wins", c.column_replacement_wins},
          {"polynomial", c.polynomial}};
}

inline nlohmann::json to_json(const PatternMatrix& P) {
  auto rows = nlohmann::json::array();
  for (std::size_t i = 0; i < P.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (std::size_t c = 0; c < P.cols(); ++c) row.push_back(P(i, c));
    rows.push_back(std::move(row));
  }
  return {{"alphabet_size", P.alphabet_size()}, {"entries", std::move(rows)}};
}

inline PatternMatrix pattern_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw parse_error("pattern file must hold a JSON object");
  const auto alphabet = detail::required<std::size_t>(j, "alphabet_size");
  if (!j.contains("entries") || !j["entries"].is_array() || j["entries"].empty())
    throw parse_error("missing non-empty array \"entries\"");
  const auto& rows = j["entries"];
  const std::size_t L = rows[0].size();
  PatternMatrix::Entries E(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(L));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != L) throw parse_error("pattern rows must have equal length");
    for (std::size_t c = 0; c < L; ++c) {
      if (!rows[i][c].is_number_unsigned() && !(rows[i][c].is_number_integer() && rows[i][c].get<long long>() >= 0))
        throw parse_error("pattern entries must be non-negative integers");
      E(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = rows[i][c].get<std::uint32_t>();
    }
  }
  return PatternMatrix(std::move(E), alphabet);
}

inline PatternMatrix load_pattern(const std::string& path) {
  return pattern_from_json(detail::parse_text(detail::read_file(path)));
}

inline std::string to_csv(const ExperimentResult& r) {
  std::string out = "x_axis_value,recovery_pct,mean_output_snr_db,trials\n";
  for (const auto& p : r.points)
    out += format_double(p.x_value) + "," + format_double(p.recovery_pct) + "," + format_double(p.mean_output_snr_db) +
           "," + std::to_string(p.trials) + "\n";
  return out;
}

inline nlohmann::json to_json(const ExperimentResult& r) {
  auto pts = nlohmann::json::array();
  for (const auto& p : r.points)
    pts.push_back({{"x", p.x_value},
                   {"recovery_pct", p.recovery_pct},
                   {"mean_output_snr_db", p.mean_output_snr_db},
                   {"trials", p.trials},
                   {"seed", p.seed}});
  return {{"axis", r.axis}, {"matrix", r.matrix}, {"points", std::move(pts)}};
}

inline nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["success_threshold"] = c.success_threshold;
  if (!c.sparsities.empty()) j["sparsities"] = c.sparsities;
  j["input_snr_db"] = c.input_snr_db ? nlohmann::json(*c.input_snr_db) : nlohmann::json("noiseless");
  if (c.fixed_k > 0) j["k"] = c.fixed_k;
  if (!c.snr_grid_db.empty()) j["snr_db"] = c.snr_grid_db;
  j["residual_tolerance"] = c.residual_tolerance ? nlohmann::json(*c.residual_tolerance) : nlohmann::json(nullptr);
  return j;
}

}  // namespace colrep::io

/**************************************************************************
 * simulation.hpp
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

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "colrep/errors.hpp"
#include "colrep/io.hpp"
#include "colrep/recovery.hpp"
#include "colrep/resize.hpp"
#include "colrep/sensing.hpp"

/**
 * Declarative experiment files for `colrep simulate`.
 *
 *   {
 *     "trials": 500, "seed": 42, "success_threshold": 1e-3,
 *     "residual_tolerance": null,
 *     "matrices": [
 *       {"name": "ex1", "construction": "example1", "p": 5},
 *       {"name": "gauss", "construction": "gaussian", "m": 25, "n": 125},
 *       {"name": "mine", "file": "A.json"}
 *     ],
 *     "scenarios": [
 *       {"name": "s1", "type": "sparsity", "sparsity": {"from": 1, "to": 14},
 *        "input_snr_db": "noiseless"},
 *       {"name": "s2", "type": "snr", "k": 12,
 *        "snr_db": {"from": 0, "to": 100, "step": 10}}
 *     ]
 *   }
 *
 * Unknown keys are rejected. COLREP_SEED in the environment overrides "seed".
 */
namespace colrep::sim {

struct MatrixSpec {
  std::string name;
  nlohmann::json source;  // construction parameters or {"file": path}
};

struct Scenario {
  std::string name;
  std::string type;  // "sparsity" | "snr"
  ExperimentConfig config;
};

struct SimulationConfig {
  std::vector<MatrixSpec> matrices;
  std::vector<Scenario> scenarios;
  std::uint64_t seed = 42;
  nlohmann::json echo;  // normalized config, written to the summary
};

namespace detail {

inline void allow_keys(const nlohmann::json& obj, const std::set<std::string>& keys, const std::string& where) {
  if (!obj.is_object()) throw config_error(where + " must be an object");
  for (const auto& [k, v] : obj.items())
    if (!keys.contains(k)) throw config_error("unknown key \"" + k + "\" in " + where);
}

template <typename T>
T get_or(const nlohmann::json& obj, const char* key, T fallback, const std::string& where) {
  if (!obj.contains(key) || obj[key].is_null()) return fallback;
  try {
    return obj[key].get<T>();
  } catch (const nlohmann::json::exception&) {
    throw config_error("\"" + std::string(key) + "\" in " + where + " has the wrong type");
  }
}

// A list of numbers, or {"from", "to", "step"} (inclusive).
template <typename T>
std::vector<T> axis(const nlohmann::json& v, const std::string& where) {
  std::vector<T> out;
  if (v.is_array()) {
    for (const auto& x : v) {
      if (!x.is_number()) throw config_error(where + " must hold numbers");
      out.push_back(x.get<T>());
    }
  } else if (v.is_object()) {
    allow_keys(v, {"from", "to", "step"}, where);
    if (!v.contains("from") || !v.contains("to")) throw config_error(where + " range needs \"from\" and \"to\"");
    const double from = v["from"].get<double>(), to = v["to"].get<double>();
    const double step = v.contains("step") ? v["step"].get<double>() : 1.0;
    if (!(step > 0.0)) throw config_error(where + " step must be positive");
    for (long long i = 0;; ++i) {
      const double x = from + static_cast<double>(i) * step;
      if (x > to + 1e-9 * std::max(1.0, std::abs(to))) break;
      out.push_back(static_cast<T>(x));
    }
  } else {
    throw config_error(where + " must be a list or a {from, to, step} range");
  }
  if (out.empty()) throw config_error(where + " is empty");
  return out;
}

}  // namespace detail

inline std::optional<std::uint64_t> seed_override() {
  if (const char* s = std::getenv("COLREP_SEED"); s && *s) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw config_error(std::string("COLREP_SEED is not an unsigned integer: ") + s);
    }
  }
  return std::nullopt;
}

inline SimulationConfig parse_config(const nlohmann::json& j) {
  using detail::allow_keys;
  using detail::get_or;
  allow_keys(j, {"trials", "seed", "success_threshold", "residual_tolerance", "matrices", "scenarios"}, "config");

  SimulationConfig cfg;
  ExperimentConfig base;
  const auto trials = get_or<long long>(j, "trials", 500, "config");
  if (trials < 1) throw config_error("trials must be >= 1");
  base.trials = static_cast<std::size_t>(trials);
  base.seed = get_or<std::uint64_t>(j, "seed", 42, "config");
  if (auto s = seed_override()) base.seed = *s;
  base.success_threshold = get_or<double>(j, "success_threshold", 1e-3, "config");
  if (!(base.success_threshold > 0.0)) throw config_error("success_threshold must be positive");
  if (j.contains("residual_tolerance") && !j["residual_tolerance"].is_null())
    base.residual_tolerance = get_or<double>(j, "residual_tolerance", 0.0, "config");
  cfg.seed = base.seed;

  if (!j.contains("matrices") || !j["matrices"].is_array() || j["matrices"].empty())
    throw config_error("\"matrices\" must be a non-empty list");
  std::set<std::string> names;
  for (const auto& m : j["matrices"]) {
    allow_keys(m, {"name", "construction", "file", "p", "q", "k", "m", "n", "seed"}, "matrix entry");
    MatrixSpec spec;
    spec.name = get_or<std::string>(m, "name", "", "matrix entry");
    if (spec.name.empty()) throw config_error("matrix entry needs a \"name\"");
    if (!names.insert(spec.name).second) throw config_error("duplicate matrix name \"" + spec.name + "\"");
    if (m.contains("file") == m.contains("construction"))
      throw config_error("matrix \"" + spec.name + "\" needs exactly one of \"file\" or \"construction\"");
    spec.source = m;
    cfg.matrices.push_back(std::move(spec));
  }

  if (!j.contains("scenarios") || !j["scenarios"].is_array() || j["scenarios"].empty())
    throw config_error("\"scenarios\" must be a non-empty list");
  std::set<std::string> scen_names;
  for (const auto& s : j["scenarios"]) {
    Scenario sc;
    sc.config = base;
    if (!s.is_object()) throw config_error("scenario must be an object");
    sc.type = get_or<std::string>(s, "type", "", "scenario");
    sc.name = get_or<std::string>(s, "name", sc.type, "scenario");
    if (!scen_names.insert(sc.name).second) throw config_error("duplicate scenario name \"" + sc.name + "\"");
    const std::string where = "scenario \"" + sc.name + "\"";
    if (sc.type == "sparsity") {
      allow_keys(s, {"name", "type", "sparsity", "input_snr_db"}, where);
      if (!s.contains("sparsity")) throw config_error(where + " needs \"sparsity\"");
      sc.config.sparsities = detail::axis<int>(s["sparsity"], where + " sparsity");
      if (s.contains("input_snr_db") && !s["input_snr_db"].is_null() &&
          !(s["input_snr_db"].is_string() && s["input_snr_db"] == "noiseless")) {
        if (!s["input_snr_db"].is_number()) throw config_error(where + " input_snr_db must be a number or \"noiseless\"");
        sc.config.input_snr_db = s["input_snr_db"].get<double>();
      }
    } else if (sc.type == "snr") {
      allow_keys(s, {"name", "type", "k", "snr_db"}, where);
      sc.config.fixed_k = get_or<int>(s, "k", 0, where);
      if (sc.config.fixed_k < 1) throw config_error(where + " needs \"k\" >= 1");
      if (!s.contains("snr_db")) throw config_error(where + " needs \"snr_db\"");
      sc.config.snr_grid_db = detail::axis<double>(s["snr_db"], where + " snr_db");
    } else {
      throw config_error("scenario type must be \"sparsity\" or \"snr\"");
    }
    cfg.scenarios.push_back(std::move(sc));
  }

  cfg.echo = j;
  cfg.echo["seed"] = cfg.seed;
  return cfg;
}

/// Builds a matrix from construction parameters: example1..4, gaussian, or a file.
inline SensingMatrix build_matrix(const nlohmann::json& src, std::uint64_t default_seed,
                                  const std::filesystem::path& base_dir = {}) {
  using detail::get_or;
  if (src.contains("file")) {
    std::filesystem::path path = src["file"].get<std::string>();
    if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
    return io::load_matrix(path.string());
  }
  const auto kind = get_or<std::string>(src, "construction", "", "matrix entry");
  auto need = [&](const char* key) {
    if (!src.contains(key)) throw config_error("construction \"" + kind + "\" needs \"" + key + "\"");
    return src[key].get<long long>();
  };
  if (kind == "example1") return construct_example1(static_cast<int>(need("p")));
  if (kind == "example2") return construct_example2(static_cast<int>(need("p")));
  if (kind == "example3") return construct_example3(need("q"), static_cast<int>(need("k"))).first;
  if (kind == "example4") return construct_example4(static_cast<int>(need("p"))).first;
  if (kind == "gaussian")
    return gaussian_matrix(need("m"), need("n"), get_or<std::uint64_t>(src, "seed", default_seed, "matrix entry"));
  throw config_error("unknown construction \"" + kind + "\"");
}

struct SimulationOutput {
  std::vector<std::filesystem::path> csv_files;
  std::filesystem::path summary;
};

/// Runs every scenario on every matrix; one CSV per pair plus summary.json.
inline SimulationOutput run(const SimulationConfig& cfg, const std::filesystem::path& out_dir,
                            const std::filesystem::path& config_dir = {}) {
  std::filesystem::create_directories(out_dir);
  SimulationOutput out;
  nlohmann::json summary;
  summary["config"] = cfg.echo;
  summary["results"] = nlohmann::json::array();
  for (const auto& spec : cfg.matrices) {
    const auto A = build_matrix(spec.source, cfg.seed, config_dir);
    for (const auto& sc : cfg.scenarios) {
      const auto res = sc.type == "sparsity" ? run_recovery_vs_sparsity(A, sc.config) : run_snr_sweep(A, sc.config);
      const auto path = out_dir / (sc.name + "__" + spec.name + ".csv");
      io::detail::write_file(path.string(), io::to_csv(res));
      out.csv_files.push_back(path);
      auto entry = io::to_json(res);
      entry["scenario"] = sc.name;
      entry["matrix_name"] = spec.name;
      entry["config"] = io::to_json(sc.config);
      entry["csv"] = path.filename().string();
      summary["results"].push_back(std::move(entry));
    }
  }
  out.summary = out_dir / "summary.json";
  io::detail::write_file(out.summary.string(), summary.dump(2) + "\n");
  return out;
}

}  // namespace colrep::sim

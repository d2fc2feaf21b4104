/**************************************************************************
 * colrep.cpp
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

// Command-line front end: construct, analyze, resize, compare, simulate.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "colrep/colrep.hpp"

namespace {

using namespace colrep;

struct usage_error : error {
  explicit usage_error(const std::string& what) : error("usage", what) {}
};

std::string fixed(double v, int digits = 6) { return io::format_fixed(v, digits); }

// "25x125 mu=0.200000 welch=0.179605 ratio=1.114"
void print_summary(const SensingMatrix& A, const CoherenceReport& rep) {
  std::cout << A.rows() << "x" << A.cols() << " mu=" << fixed(rep.exact)
            << " welch=" << (rep.welch ? fixed(*rep.welch) : "n/a")
            << " ratio=" << (rep.ratio_to_welch ? fixed(*rep.ratio_to_welch, 3) : "n/a") << "\n";
  const auto rip = rip_estimate(std::min(1.0, rep.exact));
  std::cout << "claimed=" << (A.claimed_coherence() ? fixed(*A.claimed_coherence()) : "n/a")
            << " rip_kmax=" << (rip.k_max ? std::to_string(*rip.k_max) : "unbounded")
            << " method=" << (rep.method.sampled ? "sampled" : "full") << " pairs=" << rep.method.pairs << "\n";
}

nlohmann::json report_json(const SensingMatrix& A, const CoherenceReport& rep) {
  nlohmann::json j = io::to_json(rep);
  j["m"] = A.rows();
  j["n"] = A.cols();
  j["construction"] = A.provenance().construction;
  j["claimed_coherence"] = A.claimed_coherence() ? nlohmann::json(*A.claimed_coherence()) : nlohmann::json(nullptr);
  j["rip"] = io::to_json(rip_estimate(std::min(1.0, rep.exact)));
  return j;
}

void write_matrix(const SensingMatrix& A, const std::string& path, const std::string& format) {
  if (format == "csv")
    io::detail::write_file(path, io::to_csv(A));
  else
    io::save_matrix(A, path);
}

void write_json(const nlohmann::json& j, const std::string& path) { io::detail::write_file(path, j.dump(2) + "\n"); }

int require_prime_arg(long long p, const char* flag) {
  if (p <= 0) throw usage_error(std::string(flag) + " is required");
  if (!is_prime(p)) throw usage_error(std::to_string(p) + " is not prime");
  return static_cast<int>(p);
}

struct ConstructArgs {
  std::string kind;
  long long p = 0, q = 0, k = 0, m = 0, n = 0, points = 0;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> row_seed;
  std::string out, format = "json", report;
};

void cmd_construct(const ConstructArgs& a) {
  if (a.kind == "codebook") {
    if (a.q <= 0) throw usage_error("--q is required");
    if (!prime_power(a.q)) throw usage_error(std::to_string(a.q) + " is not a prime power");
    const auto field = FieldSpec::of_order(a.q);
    const auto cb = enumerate_codewords(
        rs2_generator(field, first_points(static_cast<std::size_t>(a.points > 0 ? a.points : a.q))));
    write_json(to_json(cb), a.out);
    std::cout << cb.length() << "x" << cb.size() << " codebook dmin=" << cb.min_distance()
              << " all_one=" << (cb.has_all_one() ? "yes" : "no") << "\n";
    return;
  }

  AnalyzeOptions analysis;
  analysis.seed = a.seed;
  SensingMatrix A;
  if (a.kind == "example1") {
    A = construct_example1(require_prime_arg(a.p, "--p"));
  } else if (a.kind == "example2") {
    const int p = require_prime_arg(a.p, "--p");
    if (p < 3) throw usage_error("example2 needs p >= 3");
    A = construct_example2(p);
  } else if (a.kind == "example3") {
    if (a.q <= 0 || a.k <= 0) throw usage_error("example3 needs --q and --k");
    if (!prime_power(a.q)) throw usage_error(std::to_string(a.q) + " is not a prime power");
    if (a.k < 2 || a.k > a.q) throw usage_error("example3 needs 2 <= k <= q");
    A = construct_example3(a.q, static_cast<int>(a.k), a.row_seed, analysis).first;
  } else if (a.kind == "example4") {
    A = construct_example4(require_prime_arg(a.p, "--p"), analysis).first;
  } else if (a.kind == "gaussian") {
    if (a.m <= 0 || a.n <= 0) throw usage_error("gaussian needs --m and --n");
    A = gaussian_matrix(a.m, a.n, a.seed);
  } else {
    throw usage_error("unknown construction " + a.kind);
  }
  write_matrix(A, a.out, a.format);
  if (A.cols() < 2) return;
  const auto rep = analyze(A, analysis);
  print_summary(A, rep);
  if (!a.report.empty()) write_json(report_json(A, rep), a.report);
}

struct AnalyzeArgs {
  std::string matrix, out;
  std::uint64_t seed = 1, max_full_pairs = 1'000'000, sample_pairs = 1'000'000;
};

void cmd_analyze(const AnalyzeArgs& a) {
  const auto A = io::load_matrix(a.matrix);
  if (A.cols() < 2) throw domain_error("need >= 2 columns");
  const auto rep = analyze(A, {a.max_full_pairs, a.sample_pairs, a.seed});
  print_summary(A, rep);
  if (!a.out.empty()) write_json(report_json(A, rep), a.out);
}

struct ResizeArgs {
  std::string method, a, b, pattern, out, report, format = "json";
  long long rs2_rows = 0;
  std::uint64_t seed = 1;
};

void cmd_resize(const ResizeArgs& r) {
  const auto A = io::load_matrix(r.a);
  AnalyzeOptions analysis;
  analysis.seed = r.seed;
  if (r.method == "kronecker") {
    if (r.b.empty()) throw usage_error("kronecker needs --b");
    const auto C = kronecker(A, io::load_matrix(r.b));
    write_matrix(C, r.out, r.format);
    const auto rep = analyze(C, analysis);
    print_summary(C, rep);
    if (!r.report.empty()) write_json(report_json(C, rep), r.report);
    return;
  }
  std::optional<PatternMatrix> P;
  if (!r.pattern.empty()) {
    P = io::load_pattern(r.pattern);
  } else if (r.rs2_rows > 0) {
    if (!prime_power(A.cols())) throw usage_error("--rs2-rows needs a primary whose width is a prime power");
    const auto field = FieldSpec::of_order(A.cols());
    P = PatternMatrix::from_codebook(
        enumerate_codewords(rs2_generator(field, first_points(static_cast<std::size_t>(r.rs2_rows)))));
  } else {
    throw usage_error("column-replacement needs --pattern or --rs2-rows");
  }
  auto [C, rep] = resize_by_pattern(A, *P, {std::nullopt, analysis});
  write_matrix(C, r.out, r.format);
  print_summary(C, rep.output);
  std::cout << "d_P=" << rep.pattern_agreement << " bound=" << fixed(rep.bound) << "\n";
  if (!r.report.empty()) write_json(io::to_json(rep), r.report);
}

void cmd_compare(long long p, const std::string& out) {
  const auto c = compare_vs_kronecker(require_prime_arg(p, "--p"));
  std::cout << "p=" << p << " column_replacement=" << fixed(c.column_replacement) << " kronecker=" << fixed(c.kronecker)
            << " winner=" << (c.column_replacement_wins ? "column_replacement" : "kronecker") << "\n";
  if (!out.empty()) write_json(io::to_json(c), out);
}

void cmd_simulate(const std::string& config_path, const std::string& out_dir) {
  const auto text = io::detail::read_file(config_path);
  const auto cfg = sim::parse_config(io::detail::parse_text(text));
  const auto out = sim::run(cfg, out_dir, std::filesystem::path(config_path).parent_path());
  for (const auto& f : out.csv_files) std::cout << f.string() << "\n";
  std::cout << out.summary.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic compressive-sensing matrices by column replacement"};
  app.require_subcommand(1, 1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "Cap on worker threads (0 = all cores)");

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Build a sensing matrix (or an rs2 codebook)");
  construct->add_option("kind", ca.kind, "example1 | example2 | example3 | example4 | gaussian | codebook")
      ->required()
      ->check(CLI::IsMember({"example1", "example2", "example3", "example4", "gaussian", "codebook"}));
  construct->add_option("--p", ca.p, "Prime p");
  construct->add_option("--q", ca.q, "Prime power q");
  construct->add_option("--k", ca.k, "Rows taken from the pattern (example3)");
  construct->add_option("--m", ca.m, "Rows (gaussian)");
  construct->add_option("--n", ca.n, "Columns (gaussian)");
  construct->add_option("--points", ca.points, "Evaluation points (codebook; default q)");
  construct->add_option("--seed", ca.seed, "RNG seed (gaussian entries, sampled coherence)");
  construct->add_option("--row-seed", ca.row_seed, "Random k-row selection for example3");
  construct->add_option("--out,-o", ca.out, "Output file")->required();
  construct->add_option("--format", ca.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  construct->add_option("--report", ca.report, "Also write a coherence report (JSON)");

  AnalyzeArgs aa;
  auto* analyze_cmd = app.add_subcommand("analyze", "Coherence report of a matrix file");
  analyze_cmd->add_option("matrix", aa.matrix, "Matrix JSON file")->required();
  analyze_cmd->add_option("--out,-o", aa.out, "Report JSON file");
  analyze_cmd->add_option("--seed", aa.seed, "Seed for sampled coherence");
  analyze_cmd->add_option("--max-full-pairs", aa.max_full_pairs, "Enumerate all pairs up to this many");
  analyze_cmd->add_option("--sample-pairs", aa.sample_pairs, "Pairs drawn when sampling");

  ResizeArgs ra;
  auto* resize_cmd = app.add_subcommand("resize", "Resize by Kronecker product or column replacement");
  resize_cmd->add_option("method", ra.method, "kronecker | column-replacement")
      ->required()
      ->check(CLI::IsMember({"kronecker", "column-replacement"}));
  resize_cmd->add_option("--a", ra.a, "Primary / left matrix file")->required();
  resize_cmd->add_option("--b", ra.b, "Right matrix file (kronecker)");
  resize_cmd->add_option("--pattern", ra.pattern, "Pattern JSON file (column-replacement)");
  resize_cmd->add_option("--rs2-rows", ra.rs2_rows, "Use the rs2 pattern over GF(n) with this many rows");
  resize_cmd->add_option("--out,-o", ra.out, "Output matrix file")->required();
  resize_cmd->add_option("--report", ra.report, "Report JSON file");
  resize_cmd->add_option("--format", ra.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  resize_cmd->add_option("--seed", ra.seed, "Seed for sampled coherence");

  long long cmp_p = 0;
  std::string cmp_out;
  auto* compare = app.add_subcommand("compare", "Column replacement vs Kronecker coherence at p^3 x p^6");
  compare->add_option("--p", cmp_p, "Prime p")->required();
  compare->add_option("--out,-o", cmp_out, "Comparison JSON file");

  std::string sim_config, sim_out;
  auto* simulate = app.add_subcommand("simulate", "Run OMP recovery experiments from a config file");
  simulate->add_option("config", sim_config, "Experiment config (JSON)")->required();
  simulate->add_option("--out-dir,-o", sim_out, "Directory for CSV and summary files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << e.what() << "\n";
    return 2;
  }

  set_max_threads(threads);
  try {
    if (*construct) cmd_construct(ca);
    else if (*analyze_cmd) cmd_analyze(aa);
    else if (*resize_cmd) cmd_resize(ra);
    else if (*compare) cmd_compare(cmp_p, cmp_out);
    else if (*simulate) cmd_simulate(sim_config, sim_out);
  } catch (const usage_error& e) {
    std::cerr << "error: usage: " << e.what() << "\n";
    return 2;
  } catch (const colrep::error& e) {
    std::cerr << "error: " << e.kind() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

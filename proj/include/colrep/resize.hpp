/**************************************************************************
 * resize.hpp
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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "colrep/codes.hpp"
#include "colrep/column_replacement.hpp"
#include "colrep/sensing.hpp"

namespace colrep {

/// Coherence bookkeeping for a column-replacement resize.
struct ResizeReport {
  Eigen::Index input_rows = 0, input_cols = 0;
  double input_coherence = 0.0;  // mu_A
  std::size_t pattern_rows = 0, pattern_cols = 0;
  int pattern_agreement = 0;  // d_P
  Eigen::Index output_rows = 0, output_cols = 0;
  double bound = 0.0;  // (d_P + (N - d_P) mu_A) / N
  CoherenceReport output;  // full or sampled
};

inline nlohmann::json provenance_json(const SensingMatrix& A) {
  nlohmann::json j;
  j["construction"] = A.provenance().construction;
  j["p"] = A.provenance().p ? nlohmann::json(*A.provenance().p) : nlohmann::json(nullptr);
  j["params"] = A.provenance().params;
  j["m"] = A.rows();
  j["n"] = A.cols();
  return j;
}

/// Kronecker product A (x) B; coherence is max(mu_A, mu_B).
inline SensingMatrix kronecker(const SensingMatrix& A, const SensingMatrix& B) {
  if (!A.has_unit_columns() || !B.has_unit_columns())
    throw normalization_error("Kronecker factors must have unit-norm columns");
  const auto& a = A.entries();
  const auto& b = B.entries();
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  Provenance prov;
  if (A.provenance().p && A.provenance().p == B.provenance().p) prov.p = A.provenance().p;
  prov.construction = "kronecker";
  prov.params = {{"a", provenance_json(A)}, {"b", provenance_json(B)}};
  std::optional<double> claimed;
  if (A.claimed_coherence() && B.claimed_coherence())
    claimed = std::max(*A.claimed_coherence(), *B.claimed_coherence());
  return SensingMatrix(std::move(out), std::move(prov), claimed);
}

/// (d_P + (N - d_P) mu_A) / N.
inline double resize_bound(int agreement, std::size_t N, double mu_A) {
  const double n = static_cast<double>(N);
  return (agreement + (n - agreement) * mu_A) / n;
}

struct ResizeOptions {
  /// mu_A if already known; computed exactly otherwise.
  std::optional<double> input_coherence;
  AnalyzeOptions analysis;
};

/// (1/sqrt(N)) B(P): column replacement of A's columns by the pattern.
inline std::pair<SensingMatrix, ResizeReport> resize_by_pattern(const SensingMatrix& A, const PatternMatrix& P,
                                                              const ResizeOptions& opt = {}) {
  if (P.alphabet_size() != static_cast<std::size_t>(A.cols()))
    throw index_error("pattern alphabet " + std::to_string(P.alphabet_size()) + " != primary width " +
                      std::to_string(A.cols()));
  if (!A.has_unit_columns()) throw normalization_error("primary must have unit-norm columns");

  ResizeReport rep;
  rep.input_rows = A.rows();
  rep.input_cols = A.cols();
  rep.input_coherence = opt.input_coherence ? *opt.input_coherence : (A.cols() < 2 ? 0.0 : coherence(A.entries()).exact);
  rep.pattern_rows = P.rows();
  rep.pattern_cols = P.cols();
  rep.pattern_agreement = P.cols() >= 2 ? max_pairwise_agreement(P) : 0;
  rep.bound = resize_bound(rep.pattern_agreement, P.rows(), rep.input_coherence);

  ComplexMatrix out = column_replace(A.entries(), P) / std::sqrt(static_cast<double>(P.rows()));
  rep.output_rows = out.rows();
  rep.output_cols = out.cols();

  Provenance prov;
  prov.p = A.provenance().p;
  prov.construction = "column_replacement";
  prov.params = {{"primary", provenance_json(A)},
                 {"pattern_rows", P.rows()},
                 {"pattern_cols", P.cols()},
                 {"d_P", rep.pattern_agreement},
                 {"bound", rep.bound}};
  SensingMatrix C(std::move(out), std::move(prov), rep.bound);
  if (C.cols() >= 2) rep.output = analyze(C, opt.analysis);
  return {std::move(C), std::move(rep)};
}

inline SensingMatrix identity_matrix(Eigen::Index q) {
  Provenance prov;
  prov.construction = "identity";
  prov.params = {{"q", q}};
  return SensingMatrix(ComplexMatrix::Identity(q, q), std::move(prov), 0.0);
}

/**
 * Binary kq x q^2 matrix: identity primary, pattern = k rows of the rs2
 * codeword matrix over GF(q). Rows are the first k in field-index order, or a
 * seeded random k-subset when `row_seed` is given.
 */
inline std::pair<SensingMatrix, ResizeReport> construct_example3(long long q, int k,
                                                                 std::optional<std::uint64_t> row_seed = std::nullopt,
                                                                 const AnalyzeOptions& analysis = {}) {
  const auto field = FieldSpec::of_order(q);
  if (k < 2 || k > q) throw domain_error("example3 needs 2 <= k <= q (got k=" + std::to_string(k) + ", q=" + std::to_string(q) + ")");
  const auto cb = enumerate_codewords(rs2_generator(field, first_points(static_cast<std::size_t>(q))));
  std::vector<std::size_t> rows(static_cast<std::size_t>(q));
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  if (row_seed) {
    std::mt19937_64 rng(*row_seed);
    std::shuffle(rows.begin(), rows.end(), rng);
    rows.resize(static_cast<std::size_t>(k));
    std::sort(rows.begin(), rows.end());
  } else {
    rows.resize(static_cast<std::size_t>(k));
  }
  const auto P = PatternMatrix::from_codebook(cb, rows);
  auto [C, rep] = resize_by_pattern(identity_matrix(static_cast<Eigen::Index>(q)), P, {0.0, analysis});
  Provenance prov = C.provenance();
  prov.construction = "example3";
  prov.p = field->characteristic();
  prov.params["q"] = q;
  prov.params["k"] = k;
  prov.params["rows"] = rows;
  return {SensingMatrix(C.entries(), std::move(prov), 1.0 / k), std::move(rep)};
}

/// p^3 x p^6 matrix: example1(p) resized by the rs2 pattern over GF(p^3)
/// evaluated at the prime-subfield points 0..p-1.
inline std::pair<SensingMatrix, ResizeReport> construct_example4(int p, const AnalyzeOptions& analysis = {}) {
  const auto A = construct_example1(p);
  const auto field = FieldSpec::make(p, 3);
  const auto cb = enumerate_codewords(rs2_generator(field, first_points(static_cast<std::size_t>(p))));
  const auto P = PatternMatrix::from_codebook(cb);
  auto [C, rep] = resize_by_pattern(A, P, {std::nullopt, analysis});
  Provenance prov = C.provenance();
  prov.construction = "example4";
  prov.params["p"] = p;
  const double claimed = (2.0 * p - 1.0) / (static_cast<double>(p) * p);
  return {SensingMatrix(C.entries(), std::move(prov), claimed), std::move(rep)};
}

/// Column replacement against the best Kronecker route to p^3 x p^6.
struct KroneckerComparison {
  int p = 0;
  double column_replacement = 0.0;  // (2p - 1) / p^2
  double kronecker = 0.0;           // max(1/p, sqrt((p + 1) / (p^2 + p + 1)))
  double margin = 0.0;              // kronecker - column_replacement
  bool column_replacement_wins = false;
  long long polynomial = 0;         // (p^4 - p)(p - 3) - 1, positive iff column replacement wins
};

inline KroneckerComparison compare_vs_kronecker(int p) {
  detail::require_prime(p);
  KroneckerComparison c;
  c.p = p;
  const double pd = p;
  c.column_replacement = (2.0 * pd - 1.0) / (pd * pd);
  c.kronecker = std::max(1.0 / pd, welch_bound(p, static_cast<long long>(p) * p * p));
  c.margin = c.kronecker - c.column_replacement;
  c.column_replacement_wins = c.column_replacement < c.kronecker;
  const long long pl = p;
  c.polynomial = (pl * pl * pl * pl - pl) * (pl - 3) - 1;
  return c;
}

}  // namespace colrep

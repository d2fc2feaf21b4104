/**************************************************************************
 * sensing.hpp
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

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "colrep/codes.hpp"
#include "colrep/column_replacement.hpp"
#include "colrep/errors.hpp"
#include "colrep/galois.hpp"
#include "colrep/parallel.hpp"

namespace colrep {

using ComplexMatrix = Eigen::MatrixXcd;

/// Where a matrix came from.
struct Provenance {
  std::optional<int> p;
  std::string construction;
  nlohmann::json params = nlohmann::json::object();
};

/// m x n complex sensing matrix with provenance.
class SensingMatrix {
public:
  SensingMatrix() = default;
  SensingMatrix(ComplexMatrix entries, Provenance provenance, std::optional<double> claimed = std::nullopt)
      : entries_(std::move(entries)), provenance_(std::move(provenance)), claimed_(claimed) {}

  Eigen::Index rows() const noexcept { return entries_.rows(); }
  Eigen::Index cols() const noexcept { return entries_.cols(); }
  const ComplexMatrix& entries() const noexcept { return entries_; }
  const Provenance& provenance() const noexcept { return provenance_; }
  std::optional<double> claimed_coherence() const noexcept { return claimed_; }

  bool has_unit_columns(double tol = 1e-10) const {
    for (Eigen::Index j = 0; j < cols(); ++j)
      if (std::abs(entries_.col(j).norm() - 1.0) > tol) return false;
    return true;
  }

  /// True when every imaginary part is exactly zero.
  bool is_real() const { return (entries_.imag().array() == 0.0).all(); }

private:
  ComplexMatrix entries_;
  Provenance provenance_;
  std::optional<double> claimed_;
};

// ---------------------------------------------------------------------------
// Bounds

/// sqrt((n - m) / (m (n - 1))), the smallest coherence any m x n matrix can have.
inline double welch_bound(long long m, long long n) {
  if (m < 1 || n <= m)
    throw domain_error("Welch bound needs n > m >= 1 (got m=" + std::to_string(m) + ", n=" + std::to_string(n) + ")");
  return std::sqrt(static_cast<double>(n - m) / (static_cast<double>(m) * static_cast<double>(n - 1)));
}

/// (p(p-1)N - p^2 dmin) / 2N. Reported as is, even when it exceeds 1.
inline double coherence_bound_from_code(int p, int N, int dmin) {
  if (N < 1 || dmin < 0 || dmin > N) throw domain_error("need 0 <= dmin <= N, N >= 1");
  const double pd = p;
  return (pd * (pd - 1.0) * N - pd * pd * dmin) / (2.0 * N);
}

struct RipEstimate {
  std::optional<int> k_max;  // nullopt: unbounded (mu = 0)
  std::map<int, double> delta;  // k -> mu (k - 1), 1 <= k <= k_max
};

/// RIP order certified by coherence: delta_k <= mu(k-1) for k <= 1/mu + 1.
inline RipEstimate rip_estimate(double mu) {
  if (!(mu >= 0.0) || mu > 1.0 + 1e-12) throw domain_error("coherence must lie in [0, 1]");
  RipEstimate r;
  if (mu == 0.0) return r;
  // Closed-form coherences like 1/5 come back as 0.2000000000x; keep their k_max.
  const int k_max = static_cast<int>(std::floor(1.0 / mu + 1.0 + 1e-9));
  r.k_max = k_max;
  for (int k = 1; k <= k_max; ++k) r.delta[k] = mu * (k - 1);
  return r;
}

// ---------------------------------------------------------------------------
// Coherence

struct CoherenceMethod {
  bool sampled = false;
  std::uint64_t pairs = 0;  // pairs examined
  std::uint64_t seed = 0;   // only meaningful when sampled
};

struct CoherenceReport {
  double exact = 0.0;  // maximum over examined pairs (a lower estimate when sampled)
  std::pair<Eigen::Index, Eigen::Index> argmax{0, 1};
  CoherenceMethod method;
  std::optional<double> welch;
  std::optional<double> ratio_to_welch;
  std::optional<double> code_bound;
};

namespace detail {

inline ComplexMatrix normalized_columns(const ComplexMatrix& A) {
  if (A.cols() < 2) throw domain_error("need >= 2 columns");
  ComplexMatrix U = A;
  for (Eigen::Index j = 0; j < U.cols(); ++j) {
    const double nrm = U.col(j).norm();
    if (!(nrm > 0.0)) throw normalization_error("column " + std::to_string(j) + " is zero");
    U.col(j) /= nrm;
  }
  return U;
}

}  // namespace detail

/// Exact coherence: max |<a_i, a_j>| / (|a_i| |a_j|) over all i < j.
inline CoherenceReport coherence(const ComplexMatrix& A) {
  const ComplexMatrix U = detail::normalized_columns(A);
  const Eigen::Index n = U.cols();
  constexpr Eigen::Index block = 256;
  const auto blocks = static_cast<std::size_t>((n + block - 1) / block);
  struct best_t {
    double value = -1.0;
    Eigen::Index i = 0, j = 1;
  };
  std::vector<best_t> best(blocks);
  parallel_for(blocks, [&](std::size_t b) {
    const Eigen::Index lo = static_cast<Eigen::Index>(b) * block;
    const Eigen::Index w = std::min(block, n - lo);
    // Rows lo..lo+w of the Gram matrix, restricted to columns > row.
    const Eigen::MatrixXcd G = U.middleCols(lo, w).adjoint() * U.rightCols(n - lo);
    best_t local;
    for (Eigen::Index r = 0; r < w; ++r)
      for (Eigen::Index c = r + 1; c < n - lo; ++c) {
        const double v = std::abs(G(r, c));
        if (v > local.value) local = {v, lo + r, lo + c};
      }
    best[b] = local;
  });
  CoherenceReport rep;
  rep.exact = -1.0;
  for (const auto& b : best)
    if (b.value > rep.exact) {
      rep.exact = b.value;
      rep.argmax = {b.i, b.j};
    }
  rep.method = {false, static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n - 1) / 2, 0};
  return rep;
}

/**
 * Coherence estimated over `pairs` uniformly drawn distinct column pairs. The
 * draws are split into a fixed number of chunks, each with its own seeded
 * stream, so the result does not depend on the thread count.
 */
inline CoherenceReport coherence_sampled(const ComplexMatrix& A, std::uint64_t pairs, std::uint64_t seed) {
  const ComplexMatrix U = detail::normalized_columns(A);
  const Eigen::Index n = U.cols();
  constexpr std::size_t chunks = 64;
  struct best_t {
    double value = -1.0;
    Eigen::Index i = 0, j = 1;
  };
  std::vector<best_t> best(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    const std::uint64_t lo = pairs * c / chunks, hi = pairs * (c + 1) / chunks;
    std::mt19937_64 rng(derive_seed(seed, c));
    std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
    best_t local;
    for (std::uint64_t t = lo; t < hi; ++t) {
      Eigen::Index i = pick(rng), j = pick(rng);
      while (j == i) j = pick(rng);
      if (i > j) std::swap(i, j);
      const double v = std::abs(U.col(i).dot(U.col(j)));
      if (v > local.value) local = {v, i, j};
    }
    best[c] = local;
  });
  CoherenceReport rep;
  rep.exact = -1.0;
  for (const auto& b : best)
    if (b.value > rep.exact) {
      rep.exact = b.value;
      rep.argmax = {b.i, b.j};
    }
  rep.method = {true, pairs, seed};
  return rep;
}

struct AnalyzeOptions {
  std::uint64_t max_full_pairs = 1'000'000;
  std::uint64_t sample_pairs = 1'000'000;
  std::uint64_t seed = 1;
};

/// Coherence (full or sampled by size) plus Welch and the code-based bound
/// when the provenance records the code parameters.
inline CoherenceReport analyze(const SensingMatrix& A, const AnalyzeOptions& opt = {}) {
  if (A.cols() < 2) throw domain_error("need >= 2 columns");
  const auto n = static_cast<std::uint64_t>(A.cols());
  CoherenceReport rep = n * (n - 1) / 2 <= opt.max_full_pairs ? coherence(A.entries())
                                                               : coherence_sampled(A.entries(), opt.sample_pairs, opt.seed);
  if (A.cols() > A.rows()) {
    rep.welch = welch_bound(A.rows(), A.cols());
    rep.ratio_to_welch = rep.exact / *rep.welch;
  }
  const auto& params = A.provenance().params;
  if (A.provenance().p && params.contains("code_length") && params.contains("code_dmin"))
    rep.code_bound =
        coherence_bound_from_code(*A.provenance().p, params["code_length"].get<int>(), params["code_dmin"].get<int>());
  return rep;
}

// ---------------------------------------------------------------------------
// Codes to matrices

/**
 * Keeps one column from every coset {c, c + 1, ..., c + (p-1)1}: the member
 * whose first coordinate is 0. Requires the all-one vector among the columns.
 */
inline CodewordMatrix coset_reduce(const CodewordMatrix& C, int p) {
  if (C.rows() < 1) throw reduction_error("codeword matrix has no rows");
  if (C.cols() % p != 0) throw reduction_error("column count is not a multiple of p");
  bool all_one = false;
  for (Eigen::Index j = 0; j < C.cols() && !all_one; ++j) all_one = is_all_one(C.col(j));
  if (!all_one) throw reduction_error("all-one vector is not a codeword");
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < C.cols(); ++j)
    if (C(0, j) == 0) keep.push_back(j);
  if (static_cast<Eigen::Index>(keep.size()) * p != C.cols())
    throw reduction_error("cosets of the all-one span are not cut evenly by the first coordinate");
  CodewordMatrix out(C.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t t = 0; t < keep.size(); ++t) out.col(static_cast<Eigen::Index>(t)) = C.col(keep[t]);
  return out;
}

/// Entrywise exp(i 2 pi c / p) / sqrt(N).
inline ComplexMatrix exponentiate(const CodewordMatrix& C, int p) {
  if (C.rows() < 1) throw domain_error("codeword matrix has no rows");
  std::vector<std::complex<double>> roots(static_cast<std::size_t>(p));
  const double scale = 1.0 / std::sqrt(static_cast<double>(C.rows()));
  for (int g = 0; g < p; ++g) roots[g] = additive_character(p, g) * scale;
  ComplexMatrix out(C.rows(), C.cols());
  for (Eigen::Index j = 0; j < C.cols(); ++j)
    for (Eigen::Index i = 0; i < C.rows(); ++i) {
      const auto c = C(i, j);
      if (c >= static_cast<element_index>(p)) throw domain_error("codeword entry outside [0, p-1]");
      out(i, j) = roots[c];
    }
  return out;
}

namespace detail {

inline void require_prime(int p, int min_p = 2) {
  if (!is_prime(p)) throw domain_error(std::to_string(p) + " is not prime");
  if (p < min_p) throw domain_error("p must be >= " + std::to_string(min_p));
}

inline void soft_cap(int p, int cap, const char* what) {
  if (p > cap) warn(std::string(what) + ": p = " + std::to_string(p) + " exceeds practical size cap " + std::to_string(cap));
}

// Shared pipeline: rs2 primary over GF(p) (length p), rs2 pattern over GF(p^2)
// with the given number of prime-subfield evaluation points.
inline SensingMatrix build_from_codes(int p, std::size_t pattern_points, const char* name, double claimed) {
  const auto fp = FieldSpec::make(p, 1);
  const auto fq = FieldSpec::make(p, 2);
  const auto A = enumerate_codewords(rs2_generator(fp, first_points(static_cast<std::size_t>(p))));
  const auto P = enumerate_codewords(rs2_generator(fq, first_points(pattern_points)));
  const auto big = replace_code(A, P);
  const auto reduced = coset_reduce(big.columns, p);
  Provenance prov;
  prov.p = p;
  prov.construction = name;
  prov.params = {{"p", p},
                 {"code_length", big.columns.rows()},
                 {"code_dmin", big.exact_dmin},
                 {"predicted_dmin", big.predicted_dmin}};
  return SensingMatrix(exponentiate(reduced, p), std::move(prov), claimed);
}

}  // namespace detail

/// p^2 x p^3 matrix with coherence 1/p.
inline SensingMatrix construct_example1(int p) {
  detail::require_prime(p);
  detail::soft_cap(p, 13, "example1");
  return detail::build_from_codes(p, static_cast<std::size_t>(p), "example1", 1.0 / p);
}

/// p(p-1) x p^3 matrix with coherence 1/(p-1).
inline SensingMatrix construct_example2(int p) {
  detail::require_prime(p, 3);
  detail::soft_cap(p, 13, "example2");
  return detail::build_from_codes(p, static_cast<std::size_t>(p - 1), "example2", 1.0 / (p - 1));
}

}  // namespace colrep

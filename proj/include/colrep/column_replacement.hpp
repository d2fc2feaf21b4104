/**************************************************************************
 * column_replacement.hpp
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
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include <Eigen/Core>

#include "colrep/codes.hpp"
#include "colrep/errors.hpp"
#include "colrep/galois.hpp"

/**
 * Column replacement: every entry of a pattern matrix names a column of a
 * primary matrix, and the output column stacks those primary columns block by
 * block. With an r x m primary and an N x L pattern the result is rN x L, and
 * output entry ((beta * r) + s, gamma) equals primary(s, pattern(beta, gamma))
 * (0-based throughout).
 */
namespace colrep {

/// N x L matrix of column indices into a primary with `alphabet_size` columns.
class PatternMatrix {
public:
  using Entries = Eigen::Matrix<std::uint32_t, Eigen::Dynamic, Eigen::Dynamic>;

  PatternMatrix(Entries entries, std::size_t alphabet_size)
      : entries_(std::move(entries)), alphabet_size_(alphabet_size) {
    if (entries_.rows() == 0 || entries_.cols() == 0) throw domain_error("pattern must be non-empty");
    if (alphabet_size_ == 0) throw domain_error("pattern alphabet must be non-empty");
    for (Eigen::Index j = 0; j < entries_.cols(); ++j)
      for (Eigen::Index i = 0; i < entries_.rows(); ++i)
        if (entries_(i, j) >= alphabet_size_)
          throw index_error("pattern entry (" + std::to_string(i) + ", " + std::to_string(j) + ") = " +
                            std::to_string(entries_(i, j)) + " outside [0, " + std::to_string(alphabet_size_) +
                            ")");
  }

  /// Pattern whose columns are the codewords of `cb`, optionally restricted
  /// to a subset of rows (in the given order).
  static PatternMatrix from_codebook(const Codebook& cb, const std::vector<std::size_t>& rows = {}) {
    if (rows.empty()) return PatternMatrix(cb.columns(), cb.code().field()->order());
    Entries sub(static_cast<Eigen::Index>(rows.size()), cb.columns().cols());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i] >= cb.length()) throw index_error("pattern row selection out of range");
      sub.row(static_cast<Eigen::Index>(i)) = cb.columns().row(static_cast<Eigen::Index>(rows[i]));
    }
    return PatternMatrix(std::move(sub), cb.code().field()->order());
  }

  std::size_t rows() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(entries_.cols()); }
  std::size_t alphabet_size() const noexcept { return alphabet_size_; }
  const Entries& entries() const noexcept { return entries_; }
  std::uint32_t operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  /// Cached d_P (see max_pairwise_agreement).
  std::optional<int> cached_agreement() const noexcept { return agreement_; }
  void cache_agreement(int d) const noexcept { agreement_ = d; }

private:
  Entries entries_;
  std::size_t alphabet_size_;
  mutable std::optional<int> agreement_;
};

namespace detail {

struct index_vector_hash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
    std::uint64_t h = 0x84222325cbf29ce4ULL;
    for (auto x : v) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

inline bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

inline std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// True when some two distinct columns agree on every row of some t-subset.
inline bool agreement_at_least(const PatternMatrix& P, std::size_t t) {
  std::vector<std::size_t> subset(t);
  for (std::size_t i = 0; i < t; ++i) subset[i] = i;
  std::unordered_set<std::vector<std::uint32_t>, index_vector_hash> seen;
  std::vector<std::uint32_t> key(t);
  do {
    seen.clear();
    seen.reserve(P.cols());
    for (std::size_t j = 0; j < P.cols(); ++j) {
      for (std::size_t i = 0; i < t; ++i) key[i] = P(subset[i], j);
      if (!seen.insert(key).second) return true;
    }
  } while (next_combination(subset, P.rows()));
  return false;
}

inline int brute_force_agreement(const PatternMatrix& P) {
  const auto& E = P.entries();
  int best = 0;
  for (Eigen::Index a = 0; a < E.cols(); ++a)
    for (Eigen::Index b = a + 1; b < E.cols(); ++b)
      best = std::max(best, static_cast<int>((E.col(a).array() == E.col(b).array()).count()));
  return best;
}

}  // namespace detail

/**
 * d_P: the largest number of coordinates on which two distinct columns agree.
 * Two equal columns give N. Result is cached on the pattern.
 *
 * Searches t = 1, 2, ... for a t-subset of rows on which two columns collide
 * (hashing projected columns), which is linear in L per subset. Falls back to
 * the all-pairs count when the subset sweep would cost more than that.
 */
inline int max_pairwise_agreement(const PatternMatrix& P) {
  if (auto d = P.cached_agreement()) return *d;
  if (P.cols() < 2) throw domain_error("d_P needs at least two pattern columns");
  int d = 0;
  std::size_t budget = P.cols() / 2;  // subsets we can afford before brute force is cheaper
  bool brute = false;
  for (std::size_t t = 1; t <= P.rows(); ++t) {
    const std::size_t cost = detail::binomial(P.rows(), t);
    if (cost > budget) {
      brute = true;
      break;
    }
    budget -= cost;
    if (!detail::agreement_at_least(P, t)) break;
    d = static_cast<int>(t);
  }
  if (brute) d = detail::brute_force_agreement(P);
  P.cache_agreement(d);
  return d;
}

/// Stacks primary columns as directed by the pattern.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> column_replace(
    const Eigen::MatrixBase<Derived>& primary, const PatternMatrix& pattern) {
  if (pattern.alphabet_size() != static_cast<std::size_t>(primary.cols()))
    throw index_error("pattern alphabet " + std::to_string(pattern.alphabet_size()) + " != primary column count " +
                      std::to_string(primary.cols()));
  const Eigen::Index r = primary.rows();
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(
      r * static_cast<Eigen::Index>(pattern.rows()), static_cast<Eigen::Index>(pattern.cols()));
  for (std::size_t g = 0; g < pattern.cols(); ++g)
    for (std::size_t b = 0; b < pattern.rows(); ++b)
      out.block(static_cast<Eigen::Index>(b) * r, static_cast<Eigen::Index>(g), r, 1) =
          primary.col(static_cast<Eigen::Index>(pattern(b, g)));
  return out;
}

/// Output of the large-minimum-distance construction.
struct LargeDistanceCode {
  CodewordMatrix columns;  // NN' x p^{kk'}
  int prime = 0;
  int primary_length = 0;     // N
  int primary_dmin = 0;       // d
  int pattern_length = 0;     // N'
  int pattern_dmin = 0;       // d'
  int predicted_dmin = 0;
  int exact_dmin = 0;         // minimum nonzero weight of the (linear) output
  bool has_all_one = false;
};

/// NN' - ((N' - d')N + d'(N - d)).
inline int predicted_distance(int N, int d, int N2, int d2) { return N * N2 - ((N2 - d2) * N + d2 * (N - d)); }

/**
 * Column replacement of a p-ary code A (q = p^k codewords) into a code P over
 * GF(q). Pattern entries are read as element indices of GF(q), and element
 * index e selects column e of A, so the map from GF(q) to A's columns is
 * GF(p)-linear and the output is again a linear code over GF(p).
 */
inline LargeDistanceCode replace_code(const Codebook& A, const Codebook& P) {
  const auto& fa = *A.code().field();
  const auto& fp = *P.code().field();
  if (fa.degree() != 1) throw precondition_error("primary code must be over a prime field");
  if (!A.has_all_one()) throw precondition_error("primary code lacks the all-one codeword");
  if (!P.has_all_one()) throw precondition_error("pattern code lacks the all-one codeword");
  if (fp.characteristic() != fa.characteristic() || fp.order() != A.size())
    throw correspondence_error("pattern field " + fp.describe() + " does not index the " + std::to_string(A.size()) +
                               " primary codewords");
  if (A.size() < 2 || P.size() < 2) throw precondition_error("codes need at least two codewords");

  LargeDistanceCode out;
  out.columns = column_replace(A.columns(), PatternMatrix::from_codebook(P));
  out.prime = fa.characteristic();
  out.primary_length = static_cast<int>(A.length());
  out.primary_dmin = A.min_distance();
  out.pattern_length = static_cast<int>(P.length());
  out.pattern_dmin = P.min_distance();
  out.predicted_dmin = predicted_distance(out.primary_length, out.primary_dmin, out.pattern_length, out.pattern_dmin);
  out.exact_dmin = min_nonzero_weight(out.columns);
  for (Eigen::Index j = 0; j < out.columns.cols() && !out.has_all_one; ++j)
    out.has_all_one = is_all_one(out.columns.col(j));
  return out;
}

/**
 * Checks that beta1*c_m + beta2*c_n (mod p) is again a column for every pair
 * of columns and every scalar pair in GF(p). Exhaustive up to
 * `exhaustive_limit` columns, otherwise `samples` random (pair, scalars)
 * draws from `seed`.
 */
inline bool is_linearly_closed(const CodewordMatrix& C, int p, std::size_t exhaustive_limit = 729,
                               std::size_t samples = 1000, std::uint64_t seed = 1) {
  using key_t = std::vector<std::uint32_t>;
  const auto n = static_cast<std::size_t>(C.cols());
  const auto len = static_cast<std::size_t>(C.rows());
  std::unordered_set<key_t, detail::index_vector_hash> present;
  present.reserve(n);
  for (std::size_t j = 0; j < n; ++j) present.insert(key_t(C.col(j).begin(), C.col(j).end()));

  key_t combo(len);
  auto check = [&](std::size_t a, std::size_t b, int s1, int s2) {
    for (std::size_t r = 0; r < len; ++r)
      combo[r] = static_cast<std::uint32_t>(
          (s1 * C(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(a)) +
           s2 * C(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(b))) % p);
    return present.contains(combo);
  };

  if (n <= exhaustive_limit) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a; b < n; ++b)
        for (int s1 = 0; s1 < p; ++s1)
          for (int s2 = 0; s2 < p; ++s2)
            if (!check(a, b, s1, s2)) return false;
    return true;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> scalar(0, p - 1);
  for (std::size_t t = 0; t < samples; ++t) {
    const auto a = pick(rng), b = pick(rng);
    const int s1 = scalar(rng), s2 = scalar(rng);
    if (!check(a, b, s1, s2)) return false;
  }
  return true;
}

}  // namespace colrep

/**************************************************************************
 * codes.hpp
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
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "colrep/errors.hpp"
#include "colrep/galois.hpp"

namespace colrep {

/// Matrix of field-element indices; one codeword per column.
using CodewordMatrix = Eigen::Matrix<element_index, Eigen::Dynamic, Eigen::Dynamic>;

/// Linear code given by generator rows g_0 .. g_{k-1} of a common length.
class LinearCode {
public:
  LinearCode(field_ptr field, std::size_t length, std::vector<std::vector<element_index>> generator)
      : field_(std::move(field)), length_(length), generator_(std::move(generator)) {
    validate();
  }

  LinearCode(field_ptr field, std::vector<std::vector<element_index>> generator)
      : field_(std::move(field)), length_(generator.empty() ? 0 : generator.front().size()),
        generator_(std::move(generator)) {
    validate();
  }

  const field_ptr& field() const noexcept { return field_; }
  std::size_t length() const noexcept { return length_; }
  std::size_t dimension() const noexcept { return generator_.size(); }
  const std::vector<std::vector<element_index>>& generator() const noexcept { return generator_; }

private:
  void validate() const {
    if (length_ == 0) throw domain_error("code length must be positive");
    for (const auto& row : generator_) {
      if (row.size() != length_) throw domain_error("generator row has wrong length");
      for (auto e : row)
        if (e >= field_->order()) throw index_error("generator entry outside " + field_->describe());
    }
  }

  field_ptr field_;
  std::size_t length_;
  std::vector<std::vector<element_index>> generator_;
};

/**
 * Every codeword of a LinearCode, column j holding the codeword of the message
 * whose base-q digits (least significant first) are the coefficients of
 * g_0, g_1, ... . Column 0 is the zero codeword.
 */
class Codebook {
public:
  const LinearCode& code() const noexcept { return code_; }
  const CodewordMatrix& columns() const noexcept { return columns_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(columns_.cols()); }
  std::size_t length() const noexcept { return static_cast<std::size_t>(columns_.rows()); }
  /// Minimum Hamming weight over nonzero codewords; equals length+1 for the zero code.
  int min_distance() const noexcept { return min_distance_; }
  bool has_all_one() const noexcept { return has_all_one_; }

private:
  Codebook(LinearCode code, CodewordMatrix columns, int dmin, bool all_one)
      : code_(std::move(code)), columns_(std::move(columns)), min_distance_(dmin), has_all_one_(all_one) {}

  friend Codebook enumerate_codewords(const LinearCode& code);

  LinearCode code_;
  CodewordMatrix columns_;
  int min_distance_;
  bool has_all_one_;
};

/// Hamming weight of a codeword column.
template <typename Derived>
int hamming_weight(const Eigen::MatrixBase<Derived>& col) {
  return static_cast<int>((col.array() != 0).count());
}

/// Minimum weight over the nonzero columns of a matrix whose columns form a
/// linear code; length+1 if every column is zero.
inline int min_nonzero_weight(const CodewordMatrix& cols) {
  int best = static_cast<int>(cols.rows()) + 1;
  for (Eigen::Index j = 0; j < cols.cols(); ++j) {
    const int w = hamming_weight(cols.col(j));
    if (w > 0) best = std::min(best, w);
  }
  return best;
}

template <typename Derived>
bool is_all_one(const Eigen::MatrixBase<Derived>& col) {
  return (col.array() == 1).all();
}

inline Codebook enumerate_codewords(const LinearCode& code) {
  const auto& field = *code.field();
  const std::size_t q = field.order();
  const std::size_t k = code.dimension();
  const std::size_t n = code.length();

  std::size_t count = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (count > std::numeric_limits<std::size_t>::max() / q / n)
      throw domain_error("codebook too large to enumerate");
    count *= q;
  }

  CodewordMatrix cols = CodewordMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(count));
  bool all_one = false;
  std::vector<element_index> msg(k, 0);
  for (std::size_t j = 0; j < count; ++j) {
    std::size_t rest = j;
    for (std::size_t i = 0; i < k; ++i) {
      msg[i] = static_cast<element_index>(rest % q);
      rest /= q;
    }
    for (std::size_t r = 0; r < n; ++r) {
      element_index acc = 0;
      for (std::size_t i = 0; i < k; ++i)
        if (msg[i] != 0) acc = field.add(acc, field.mul(msg[i], code.generator()[i][r]));
      cols(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = acc;
    }
    const auto col = cols.col(static_cast<Eigen::Index>(j));
    // By linearity the rows are independent iff only message 0 encodes to zero.
    if (j != 0 && (col.array() == 0).all())
      throw rank_deficiency_error("generator rows are linearly dependent (message " + std::to_string(j) +
                                  " encodes to the zero codeword)");
    all_one = all_one || is_all_one(col);
  }
  const int dmin = min_nonzero_weight(cols);
  return Codebook(code, std::move(cols), dmin, all_one);
}

inline int min_distance(const Codebook& cb) {
  if (cb.size() < 2) throw domain_error("minimum distance needs at least two codewords");
  return cb.min_distance();
}

inline bool contains_all_one(const Codebook& cb) { return cb.has_all_one(); }

/// Two-row generator [1 ... 1; lambda_0 ... lambda_{N-1}] over `field`.
inline LinearCode rs2_generator(const field_ptr& field, const std::vector<element_index>& points) {
  if (points.size() < 2) throw degenerate_code_error("need at least two evaluation points");
  auto sorted = points;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw degenerate_code_error("evaluation points must be pairwise distinct");
  std::vector<element_index> ones(points.size(), 1);
  return LinearCode(field, points.size(), {std::move(ones), points});
}

inline LinearCode rs2_generator(const field_ptr& field, const std::vector<FieldElement>& points) {
  std::vector<element_index> idx;
  idx.reserve(points.size());
  for (const auto& e : points) {
    if (!(*e.field() == *field)) throw spec_mismatch_error("evaluation point from " + e.field()->describe());
    idx.push_back(e.index());
  }
  return rs2_generator(field, idx);
}

/// Evaluation points 0, 1, ..., count-1 in field-index order.
inline std::vector<element_index> first_points(std::size_t count) {
  std::vector<element_index> pts(count);
  for (std::size_t i = 0; i < count; ++i) pts[i] = static_cast<element_index>(i);
  return pts;
}

inline nlohmann::json to_json(const Codebook& cb) {
  const auto& f = *cb.code().field();
  nlohmann::json j;
  j["p"] = f.characteristic();
  j["k"] = f.degree();
  j["dimension"] = cb.code().dimension();
  j["N"] = cb.length();
  if (!f.irreducible().empty()) j["irreducible"] = f.irreducible();
  j["generator"] = cb.code().generator();
  j["min_distance"] = cb.size() >= 2 ? nlohmann::json(cb.min_distance()) : nlohmann::json(nullptr);
  j["has_all_one"] = cb.has_all_one();
  auto cols = nlohmann::json::array();
  for (Eigen::Index c = 0; c < cb.columns().cols(); ++c) {
    std::vector<element_index> col(cb.columns().col(c).begin(), cb.columns().col(c).end());
    cols.push_back(std::move(col));
  }
  j["columns"] = std::move(cols);
  return j;
}

}  // namespace colrep

/**************************************************************************
 * galois.hpp
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

#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "colrep/errors.hpp"

/**
 * Small finite fields GF(p) and GF(p^k).
 *
 * Elements are polynomials in a root `alpha` of a monic irreducible of degree
 * k, stored as coefficient vectors (coeffs[i] multiplies alpha^i). Every
 * element also has a canonical integer index sum(coeffs[i] * p^i); the rest of
 * the library works on these indices, which is what lets a field element name
 * a column of a codeword matrix.
 *
 * Fields are tiny (a few thousand elements at most), so multiplication is
 * schoolbook and inversion is exhaustive search.
 */
namespace colrep {

using element_index = std::uint32_t;

inline bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Decomposes q = p^k with p prime; nullopt when q is not a prime power.
inline std::optional<std::pair<int, int>> prime_power(long long q) {
  if (q < 2) return std::nullopt;
  long long p = 2;
  while (q % p != 0) ++p;
  int k = 0;
  while (q % p == 0) {
    q /= p;
    ++k;
  }
  if (q != 1) return std::nullopt;
  return std::pair{static_cast<int>(p), k};
}

namespace detail {

// Polynomials over Z_p, low degree first, no trailing zeros (zero poly = {}).
using poly = std::vector<int>;

inline void trim(poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int mod_inverse(int a, int p) {
  for (int b = 1; b < p; ++b)
    if ((a * b) % p == 1) return b;
  throw division_by_zero_error("no inverse of " + std::to_string(a) + " mod " + std::to_string(p));
}

// Remainder of a / b, b nonzero.
inline poly poly_mod(poly a, const poly& b, int p) {
  trim(a);
  const auto db = b.size() - 1;
  const int lead_inv = mod_inverse(b.back(), p);
  while (a.size() >= b.size()) {
    const int factor = (a.back() * lead_inv) % p;
    const auto shift = a.size() - 1 - db;
    for (std::size_t i = 0; i < b.size(); ++i)
      a[shift + i] = ((a[shift + i] - factor * b[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

// Monic polynomial of the given degree whose lower coefficients are the
// base-p digits of `rank`.
inline poly monic_from_rank(long long rank, int p, int degree) {
  poly out(static_cast<std::size_t>(degree) + 1, 0);
  for (int i = 0; i < degree; ++i) {
    out[i] = static_cast<int>(rank % p);
    rank /= p;
  }
  out[degree] = 1;
  return out;
}

inline long long ipow(long long base, int exp) {
  long long r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

}  // namespace detail

/// Trial division against every monic polynomial of degree 1..deg/2.
inline bool is_irreducible(std::span<const int> monic, int p) {
  detail::poly f(monic.begin(), monic.end());
  detail::trim(f);
  if (f.size() < 2) return false;
  const int degree = static_cast<int>(f.size()) - 1;
  for (int d = 1; d <= degree / 2; ++d) {
    const long long count = detail::ipow(p, d);
    for (long long r = 0; r < count; ++r)
      if (detail::poly_mod(f, detail::monic_from_rank(r, p, d), p).empty()) return false;
  }
  return true;
}

/**
 * Smallest monic irreducible of degree k over GF(p). Candidates are ranked by
 * sum(c_i * p^i) over the lower coefficients, i.e. compared as base-p numbers
 * whose least significant digit is the constant term. For p = 5, k = 2 this
 * yields x^2 + 2.
 */
inline std::vector<int> find_irreducible(int p, int k) {
  if (!is_prime(p)) throw domain_error(std::to_string(p) + " is not prime");
  if (k < 2) throw domain_error("find_irreducible needs degree >= 2, got " + std::to_string(k));
  const long long count = detail::ipow(p, k);
  for (long long r = 0; r < count; ++r) {
    auto candidate = detail::monic_from_rank(r, p, k);
    if (is_irreducible(candidate, p)) return candidate;
  }
  throw domain_error("no irreducible polynomial found");  // unreachable
}

/**
 * GF(p^k) described by its characteristic, degree and modulus polynomial.
 * Immutable; share it through `std::shared_ptr<const FieldSpec>`.
 */
class FieldSpec {
public:
  FieldSpec(int p, int k, std::vector<int> irreducible = {})
      : p_(p), k_(k), irreducible_(std::move(irreducible)) {
    if (!is_prime(p_)) throw domain_error(std::to_string(p_) + " is not prime");
    if (k_ < 1) throw domain_error("extension degree must be >= 1");
    if (k_ == 1) {
      if (!irreducible_.empty()) throw domain_error("prime field takes no modulus polynomial");
    } else {
      if (irreducible_.empty()) irreducible_ = find_irreducible(p_, k_);
      if (static_cast<int>(irreducible_.size()) != k_ + 1 || irreducible_.back() != 1)
        throw domain_error("modulus must be monic of degree " + std::to_string(k_));
      for (int c : irreducible_)
        if (c < 0 || c >= p_) throw domain_error("modulus coefficient out of range");
      if (!is_irreducible(irreducible_, p_)) throw domain_error("modulus polynomial is reducible");
    }
    order_ = static_cast<element_index>(detail::ipow(p_, k_));
  }

  static std::shared_ptr<const FieldSpec> make(int p, int k = 1) {
    return std::make_shared<const FieldSpec>(p, k);
  }

  /// Field of order q, q a prime power.
  static std::shared_ptr<const FieldSpec> of_order(long long q) {
    auto pk = prime_power(q);
    if (!pk) throw domain_error(std::to_string(q) + " is not a prime power");
    return make(pk->first, pk->second);
  }

  int characteristic() const noexcept { return p_; }
  int degree() const noexcept { return k_; }
  element_index order() const noexcept { return order_; }
  const std::vector<int>& irreducible() const noexcept { return irreducible_; }

  bool operator==(const FieldSpec& o) const {
    return p_ == o.p_ && k_ == o.k_ && irreducible_ == o.irreducible_;
  }

  std::vector<int> digits(element_index idx) const {
    check(idx);
    std::vector<int> out(static_cast<std::size_t>(k_));
    for (int i = 0; i < k_; ++i) {
      out[i] = static_cast<int>(idx % p_);
      idx /= p_;
    }
    return out;
  }

  element_index index_of(std::span<const int> coeffs) const {
    if (static_cast<int>(coeffs.size()) != k_) throw domain_error("coefficient vector has wrong length");
    element_index idx = 0;
    for (int i = k_ - 1; i >= 0; --i) {
      if (coeffs[i] < 0 || coeffs[i] >= p_) throw domain_error("coefficient out of range");
      idx = idx * p_ + static_cast<element_index>(coeffs[i]);
    }
    return idx;
  }

  element_index add(element_index a, element_index b) const {
    check(a);
    check(b);
    element_index out = 0, scale = 1;
    for (int i = 0; i < k_; ++i) {
      out += ((a % p_ + b % p_) % p_) * scale;
      a /= p_;
      b /= p_;
      scale *= p_;
    }
    return out;
  }

  element_index neg(element_index a) const {
    check(a);
    element_index out = 0, scale = 1;
    for (int i = 0; i < k_; ++i) {
      out += ((p_ - a % p_) % p_) * scale;
      a /= p_;
      scale *= p_;
    }
    return out;
  }

  element_index sub(element_index a, element_index b) const { return add(a, neg(b)); }

  element_index mul(element_index a, element_index b) const {
    if (k_ == 1) {
      check(a);
      check(b);
      return static_cast<element_index>((static_cast<long long>(a) * b) % p_);
    }
    const auto da = digits(a), db = digits(b);
    detail::poly prod(static_cast<std::size_t>(2 * k_ - 1), 0);
    for (int i = 0; i < k_; ++i)
      for (int j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    auto rem = detail::poly_mod(std::move(prod), irreducible_, p_);
    rem.resize(static_cast<std::size_t>(k_), 0);
    return index_of(rem);
  }

  /// Scalar multiple by an element of the prime subfield.
  element_index scale(int s, element_index a) const {
    return mul(static_cast<element_index>(((s % p_) + p_) % p_), a);
  }

  element_index inv(element_index a) const {
    check(a);
    if (a == 0) throw division_by_zero_error("inverse of zero");
    for (element_index b = 1; b < order_; ++b)
      if (mul(a, b) == 1) return b;
    throw division_by_zero_error("element has no inverse");  // unreachable in a field
  }

  std::string describe() const {
    std::string s = "GF(" + std::to_string(p_);
    if (k_ > 1) s += "^" + std::to_string(k_);
    return s + ")";
  }

private:
  void check(element_index a) const {
    if (a >= order_) throw index_error("element index " + std::to_string(a) + " outside " + describe());
  }

  int p_;
  int k_;
  std::vector<int> irreducible_;
  element_index order_ = 0;
};

using field_ptr = std::shared_ptr<const FieldSpec>;

/// Typed element of a FieldSpec.
class FieldElement {
public:
  FieldElement(field_ptr field, std::vector<int> coeffs) : field_(std::move(field)) {
    index_ = field_->index_of(coeffs);
  }

  static FieldElement from_index(field_ptr field, element_index idx) {
    FieldElement e;
    e.field_ = std::move(field);
    e.field_->digits(idx);  // range check
    e.index_ = idx;
    return e;
  }

  static FieldElement zero(field_ptr field) { return from_index(std::move(field), 0); }
  static FieldElement one(field_ptr field) { return from_index(std::move(field), 1); }

  const field_ptr& field() const noexcept { return field_; }
  element_index index() const noexcept { return index_; }
  std::vector<int> coeffs() const { return field_->digits(index_); }
  bool is_zero() const noexcept { return index_ == 0; }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    same_field(a, b);
    return from_index(a.field_, a.field_->add(a.index_, b.index_));
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    same_field(a, b);
    return from_index(a.field_, a.field_->sub(a.index_, b.index_));
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    same_field(a, b);
    return from_index(a.field_, a.field_->mul(a.index_, b.index_));
  }
  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.index_ == b.index_ && *a.field_ == *b.field_;
  }

private:
  FieldElement() = default;

  static void same_field(const FieldElement& a, const FieldElement& b) {
    if (a.field_ != b.field_ && !(*a.field_ == *b.field_))
      throw spec_mismatch_error("operands from " + a.field_->describe() + " and " + b.field_->describe());
  }

  field_ptr field_;
  element_index index_ = 0;
};

inline FieldElement ff_add(const FieldElement& a, const FieldElement& b) { return a + b; }
inline FieldElement ff_mul(const FieldElement& a, const FieldElement& b) { return a * b; }
inline FieldElement ff_inv(const FieldElement& a) {
  return FieldElement::from_index(a.field(), a.field()->inv(a.index()));
}

/// chi(gamma) = exp(i 2 pi gamma / p), the canonical additive character of GF(p).
inline std::complex<double> additive_character(int p, long long gamma) {
  const long long g = ((gamma % p) + p) % p;
  if (g == 0) return {1.0, 0.0};
  if (2 * g == p) return {-1.0, 0.0};
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(g) / p);
}

/// Direct summation of chi(tau*gamma + beta) over gamma in GF(p).
inline std::complex<double> character_sum(int p, long long tau, long long beta) {
  std::complex<double> s{0.0, 0.0};
  for (long long gamma = 0; gamma < p; ++gamma) s += additive_character(p, tau * gamma + beta);
  return s;
}

}  // namespace colrep

// Independent reference computations used only by the tests. Nothing here
// calls into the library's arithmetic, so agreement is meaningful.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include <Eigen/Core>

namespace oracle {

// Product of two GF(p^k) elements given as coefficient vectors (low first),
// reduced by repeatedly substituting x^k = -(c_0 + ... + c_{k-1} x^{k-1}).
inline std::vector<int> mul(const std::vector<int>& a, const std::vector<int>& b, const std::vector<int>& modulus,
                            int p) {
  const std::size_t k = a.size();
  std::vector<long long> prod(2 * k, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) prod[i + j] += static_cast<long long>(a[i]) * b[j];
  for (std::size_t d = 2 * k - 1; d >= k; --d) {
    const long long c = prod[d] % p;
    prod[d] = 0;
    for (std::size_t i = 0; i < k; ++i) prod[d - k + i] -= c * modulus[i];
  }
  std::vector<int> out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = static_cast<int>(((prod[i] % p) + p) % p);
  return out;
}

inline std::vector<int> add(const std::vector<int>& a, const std::vector<int>& b, int p) {
  std::vector<int> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] + b[i]) % p;
  return out;
}

// Degree 2 or 3 polynomial is irreducible iff it has no root in GF(p).
inline bool has_root(const std::vector<int>& poly, int p) {
  for (int x = 0; x < p; ++x) {
    long long v = 0, xp = 1;
    for (int c : poly) {
      v += c * xp;
      xp = xp * x % p;
    }
    if (v % p == 0) return true;
  }
  return false;
}

template <typename Matrix>
int all_pairs_min_distance(const Matrix& cols) {
  int best = static_cast<int>(cols.rows()) + 1;
  for (Eigen::Index a = 0; a < cols.cols(); ++a)
    for (Eigen::Index b = a + 1; b < cols.cols(); ++b) {
      int d = 0;
      for (Eigen::Index r = 0; r < cols.rows(); ++r) d += cols(r, a) != cols(r, b) ? 1 : 0;
      best = std::min(best, d);
    }
  return best;
}

// Plain double loop with explicit sums; no Gram products.
inline double coherence(const Eigen::MatrixXcd& A) {
  double best = 0.0;
  std::vector<double> norms(static_cast<std::size_t>(A.cols()));
  for (Eigen::Index j = 0; j < A.cols(); ++j) {
    double s = 0.0;
    for (Eigen::Index r = 0; r < A.rows(); ++r) s += std::norm(A(r, j));
    norms[static_cast<std::size_t>(j)] = std::sqrt(s);
  }
  for (Eigen::Index i = 0; i < A.cols(); ++i)
    for (Eigen::Index j = i + 1; j < A.cols(); ++j) {
      std::complex<double> ip{0.0, 0.0};
      for (Eigen::Index r = 0; r < A.rows(); ++r) ip += std::conj(A(r, i)) * A(r, j);
      best = std::max(best, std::abs(ip) / (norms[static_cast<std::size_t>(i)] * norms[static_cast<std::size_t>(j)]));
    }
  return best;
}

inline std::complex<double> chi(int p, long long g) {
  const double t = 2.0 * std::numbers::pi * static_cast<double>(((g % p) + p) % p) / p;
  return {std::cos(t), std::sin(t)};
}

// Closed form of sum_gamma chi(tau*gamma + beta): 0 if tau != 0, else p chi(beta).
inline std::complex<double> character_sum_closed_form(int p, long long tau, long long beta) {
  if (((tau % p) + p) % p != 0) return {0.0, 0.0};
  return static_cast<double>(p) * chi(p, beta);
}

// <a_i, a_j> for columns exp(i 2 pi c / p)/sqrt(N) computed from the codewords:
// (1/N) sum_r chi(c_j[r] - c_i[r]).
template <typename Matrix>
std::complex<double> exponentiated_inner_product(const Matrix& C, Eigen::Index i, Eigen::Index j, int p) {
  std::complex<double> s{0.0, 0.0};
  for (Eigen::Index r = 0; r < C.rows(); ++r)
    s += chi(p, static_cast<long long>(C(r, j)) - static_cast<long long>(C(r, i)));
  return s / static_cast<double>(C.rows());
}

}  // namespace oracle

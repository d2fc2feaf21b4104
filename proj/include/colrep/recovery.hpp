/**************************************************************************
 * recovery.hpp
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
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "colrep/errors.hpp"
#include "colrep/parallel.hpp"
#include "colrep/sensing.hpp"

namespace colrep {

/// k-sparse real signal of length n.
struct SparseSignal {
  Eigen::Index length = 0;
  std::vector<Eigen::Index> support;  // ascending
  std::vector<double> values;         // aligned with support

  Eigen::VectorXd dense() const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(length);
    for (std::size_t i = 0; i < support.size(); ++i) x(support[i]) = values[i];
    return x;
  }
};

/// Support uniform without replacement, values i.i.d. N(0, 1).
template <typename Rng>
SparseSignal generate_sparse_signal(Eigen::Index n, Eigen::Index k, Rng& rng) {
  if (n < 1) throw domain_error("signal length must be positive");
  if (k < 0 || k > n) throw domain_error("sparsity " + std::to_string(k) + " outside [0, " + std::to_string(n) + "]");
  SparseSignal s;
  s.length = n;
  // Partial Fisher-Yates over the index set.
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
  for (Eigen::Index i = 0; i < k; ++i) {
    std::uniform_int_distribution<Eigen::Index> pick(i, n - 1);
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(pick(rng))]);
  }
  s.support.assign(idx.begin(), idx.begin() + k);
  std::sort(s.support.begin(), s.support.end());
  std::normal_distribution<double> normal(0.0, 1.0);
  s.values.resize(static_cast<std::size_t>(k));
  for (auto& v : s.values) v = normal(rng);
  return s;
}

/**
 * y = A x, plus white Gaussian noise at `input_snr_db` when given. Noise power
 * is set so that E|noise|^2 = |Ax|^2 / 10^(snr/10); for complex matrices the
 * real and imaginary parts each get half of it.
 */
template <typename Rng>
Eigen::VectorXcd measure(const SensingMatrix& A, const Eigen::VectorXd& x, std::optional<double> input_snr_db, Rng& rng) {
  if (x.size() != A.cols())
    throw dimension_error("signal length " + std::to_string(x.size()) + " != matrix width " + std::to_string(A.cols()));
  Eigen::VectorXcd y = A.entries() * x.cast<std::complex<double>>();
  if (!input_snr_db) return y;
  const double signal = y.squaredNorm();
  if (signal == 0.0) return y;
  const bool complex_noise = !A.is_real();
  const double dof = static_cast<double>(y.size()) * (complex_noise ? 2.0 : 1.0);
  const double sigma = std::sqrt(signal / (dof * std::pow(10.0, *input_snr_db / 10.0)));
  std::normal_distribution<double> normal(0.0, sigma);
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double re = normal(rng);
    const double im = complex_noise ? normal(rng) : 0.0;
    y(i) += std::complex<double>(re, im);
  }
  return y;
}

struct OmpOptions {
  /// Stop once |r| <= residual_tolerance * |y| (checked after each iteration).
  /// Disabled when nullopt: exactly k iterations.
  std::optional<double> residual_tolerance;
};

struct OmpResult {
  Eigen::VectorXcd estimate;
  std::vector<Eigen::Index> selected;  // in selection order
  Eigen::VectorXcd residual;
  bool used_pseudo_inverse = false;
};

/**
 * Orthogonal matching pursuit with at most k atoms. Each step picks the column
 * maximizing |<a_j, r>| / |a_j| over unselected columns (lowest index on
 * ties), then refits y on the selected columns by least squares.
 */
inline OmpResult omp(const SensingMatrix& A, const Eigen::VectorXcd& y, Eigen::Index k, const OmpOptions& opt = {}) {
  const auto& M = A.entries();
  if (y.size() != M.rows())
    throw dimension_error("measurement length " + std::to_string(y.size()) + " != matrix height " + std::to_string(M.rows()));
  if (k < 1 || k > M.rows()) throw domain_error("OMP needs 1 <= k <= m (got k=" + std::to_string(k) + ")");

  const Eigen::VectorXd norms = M.colwise().norm().transpose();
  std::vector<bool> taken(static_cast<std::size_t>(M.cols()), false);
  OmpResult res;
  res.residual = y;
  Eigen::VectorXcd coeffs;
  const double stop_at = opt.residual_tolerance ? *opt.residual_tolerance * y.norm() : -1.0;

  for (Eigen::Index it = 0; it < k; ++it) {
    const Eigen::VectorXcd corr = M.adjoint() * res.residual;
    Eigen::Index best = -1;
    double best_val = -1.0;
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      if (taken[static_cast<std::size_t>(j)] || norms(j) == 0.0) continue;
      const double v = std::abs(corr(j)) / norms(j);
      if (v > best_val) {
        best_val = v;
        best = j;
      }
    }
    if (best < 0) break;
    taken[static_cast<std::size_t>(best)] = true;
    res.selected.push_back(best);

    Eigen::MatrixXcd sub(M.rows(), static_cast<Eigen::Index>(res.selected.size()));
    for (std::size_t t = 0; t < res.selected.size(); ++t) sub.col(static_cast<Eigen::Index>(t)) = M.col(res.selected[t]);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(sub);
    if (qr.rank() < sub.cols()) {
      if (!res.used_pseudo_inverse) warn("OMP: selected columns are rank deficient; using pseudo-inverse");
      res.used_pseudo_inverse = true;
      coeffs = sub.completeOrthogonalDecomposition().solve(y);
    } else {
      coeffs = qr.solve(y);
    }
    res.residual = y - sub * coeffs;
    if (opt.residual_tolerance && res.residual.norm() <= stop_at) break;
  }

  res.estimate = Eigen::VectorXcd::Zero(M.cols());
  for (std::size_t t = 0; t < res.selected.size(); ++t) res.estimate(res.selected[t]) = coeffs(static_cast<Eigen::Index>(t));
  return res;
}

/// i.i.d. N(0, 1) entries, columns scaled to unit norm.
template <typename Rng>
SensingMatrix gaussian_matrix(Eigen::Index m, Eigen::Index n, Rng& rng, nlohmann::json params = nlohmann::json::object()) {
  if (m < 1 || n < 1) throw domain_error("matrix dimensions must be positive");
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd G(m, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < m; ++i) G(i, j) = normal(rng);
  for (Eigen::Index j = 0; j < n; ++j) G.col(j) /= G.col(j).norm();
  params["m"] = m;
  params["n"] = n;
  return SensingMatrix(G.cast<std::complex<double>>(), Provenance{std::nullopt, "gaussian", std::move(params)});
}

inline SensingMatrix gaussian_matrix(Eigen::Index m, Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return gaussian_matrix(m, n, rng, {{"seed", seed}});
}

// ---------------------------------------------------------------------------
// Experiments

constexpr double kOutputSnrCapDb = 300.0;

/// 10 log10(|x|^2 / |x - xhat|^2), capped at 300 dB.
inline double output_snr_db(const Eigen::VectorXd& x, const Eigen::VectorXcd& xhat) {
  const double err = (x.cast<std::complex<double>>() - xhat).squaredNorm();
  const double sig = x.squaredNorm();
  if (err == 0.0) return kOutputSnrCapDb;
  if (sig == 0.0) return -kOutputSnrCapDb;
  return std::min(kOutputSnrCapDb, 10.0 * std::log10(sig / err));
}

struct ExperimentConfig {
  std::size_t trials = 500;
  std::vector<int> sparsities;          // recovery-vs-sparsity axis
  std::optional<double> input_snr_db;   // noise for the sparsity sweep; nullopt = noiseless
  int fixed_k = 0;                      // SNR sweep sparsity
  std::vector<double> snr_grid_db;      // SNR sweep axis
  std::uint64_t seed = 42;
  double success_threshold = 1e-3;      // relative l2 error
  std::optional<double> residual_tolerance;  // OMP stopping switch

  void validate_common() const {
    if (trials < 1) throw config_error("trials must be >= 1");
    if (!(success_threshold > 0.0)) throw config_error("success threshold must be positive");
  }
};

struct ExperimentPoint {
  double x_value = 0.0;  // k or input SNR (dB)
  double recovery_pct = 0.0;
  double mean_output_snr_db = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

struct ExperimentResult {
  std::string axis;  // "sparsity" | "input_snr_db"
  nlohmann::json matrix;  // provenance + dimensions
  std::vector<ExperimentPoint> points;
};

namespace detail {

struct trial_outcome {
  bool success = false;
  double snr_db = 0.0;
};

// One trial on its own RNG stream derived from (seed, point, trial).
inline trial_outcome run_trial(const SensingMatrix& A, int k, std::optional<double> snr_db,
                               const ExperimentConfig& cfg, std::size_t point, std::size_t trial) {
  std::mt19937_64 rng(derive_seed(cfg.seed, point, trial));
  const auto sig = generate_sparse_signal(A.cols(), k, rng);
  const Eigen::VectorXd x = sig.dense();
  const auto y = measure(A, x, snr_db, rng);
  trial_outcome out;
  Eigen::VectorXcd xhat = Eigen::VectorXcd::Zero(A.cols());
  if (k > 0) xhat = omp(A, y, k, {cfg.residual_tolerance}).estimate;
  const double err = (x.cast<std::complex<double>>() - xhat).norm();
  const double nrm = x.norm();
  out.success = nrm == 0.0 ? err == 0.0 : err / nrm <= cfg.success_threshold;
  out.snr_db = output_snr_db(x, xhat);
  return out;
}

inline ExperimentPoint aggregate(double x_value, const std::vector<trial_outcome>& outcomes, std::uint64_t seed) {
  ExperimentPoint pt;
  pt.x_value = x_value;
  pt.trials = outcomes.size();
  pt.seed = seed;
  std::size_t ok = 0;
  double snr = 0.0;
  for (const auto& o : outcomes) {
    ok += o.success ? 1 : 0;
    snr += o.snr_db;
  }
  pt.recovery_pct = 100.0 * static_cast<double>(ok) / static_cast<double>(outcomes.size());
  pt.mean_output_snr_db = snr / static_cast<double>(outcomes.size());
  return pt;
}

inline nlohmann::json matrix_summary(const SensingMatrix& A) {
  return {{"m", A.rows()},
          {"n", A.cols()},
          {"construction", A.provenance().construction},
          {"p", A.provenance().p ? nlohmann::json(*A.provenance().p) : nlohmann::json(nullptr)},
          {"params", A.provenance().params}};
}

}  // namespace detail

/// Recovery percentage and mean output SNR for each sparsity in cfg.sparsities.
inline ExperimentResult run_recovery_vs_sparsity(const SensingMatrix& A, const ExperimentConfig& cfg) {
  cfg.validate_common();
  if (cfg.sparsities.empty()) throw config_error("sparsity range is empty");
  for (int k : cfg.sparsities)
    if (k < 1 || k > A.rows()) throw config_error("sparsity " + std::to_string(k) + " outside [1, m]");
  ExperimentResult res{"sparsity", detail::matrix_summary(A), {}};
  for (std::size_t pt = 0; pt < cfg.sparsities.size(); ++pt) {
    std::vector<detail::trial_outcome> out(cfg.trials);
    parallel_for(cfg.trials, [&](std::size_t t) {
      out[t] = detail::run_trial(A, cfg.sparsities[pt], cfg.input_snr_db, cfg, pt, t);
    });
    res.points.push_back(detail::aggregate(cfg.sparsities[pt], out, cfg.seed));
  }
  return res;
}

/// Mean output SNR (and recovery percentage) for each input SNR at fixed k.
inline ExperimentResult run_snr_sweep(const SensingMatrix& A, const ExperimentConfig& cfg) {
  cfg.validate_common();
  if (cfg.snr_grid_db.empty()) throw config_error("input SNR grid is empty");
  if (cfg.fixed_k < 1 || cfg.fixed_k > A.rows()) throw config_error("fixed sparsity outside [1, m]");
  ExperimentResult res{"input_snr_db", detail::matrix_summary(A), {}};
  for (std::size_t pt = 0; pt < cfg.snr_grid_db.size(); ++pt) {
    std::vector<detail::trial_outcome> out(cfg.trials);
    parallel_for(cfg.trials, [&](std::size_t t) {
      out[t] = detail::run_trial(A, cfg.fixed_k, cfg.snr_grid_db[pt], cfg, pt, t);
    });
    res.points.push_back(detail::aggregate(cfg.snr_grid_db[pt], out, cfg.seed));
  }
  return res;
}

}  // namespace colrep

#pragma once

#include <cstdint>
#include <vector>

#include "rsvdangle/bounds.hpp"
#include "rsvdangle/dense.hpp"

namespace rsvdangle {

struct EstimateReport {
  std::vector<double> mean;      // k values, ascending-angle order
  Eigen::MatrixXd per_trial;     // n_trials x k
  std::vector<double> min_band;
  std::vector<double> max_band;
  int n_trials = 0;
  Side side = Side::left;
  // Some singular value of the scaled tail block fell below the pseudo-inverse
  // cutoff and was dropped.
  bool pinv_cutoff_applied = false;
  // Some estimate fell below 1e-14, where accuracy is not to be trusted.
  bool below_precision = false;

  [[nodiscard]] BoundReport as_report() const;
  [[nodiscard]] BoundReport min_report() const;
  [[nodiscard]] BoundReport max_report() const;
};

inline constexpr double kEstimatePrecisionFloor = 1e-14;

/// Monte-Carlo estimate of E[sin angle_j] for a rank-l randomized SVD with q
/// power iterations, depending on the spectrum only. Per trial, with Omega
/// r x l of N(0, 1/l) entries and p = 2q+1 (left) or 2q+2 (right):
///   O1 = S_k^p Omega(1:k, :),  O2 = S_tail^p Omega(k+1:r, :) = U2 D2 V2^T,
///   nu = sigma(O1 V2 D2^{-1}),  theta = 1 / sqrt(1 + nu^2).
/// Trial t draws from CounterRng(seed).split(kEstimator).split(t).
[[nodiscard]] EstimateReport unbiased_estimate(const Spectrum& spectrum, Index k, Index l, int q,
                                               int n_trials, Side side, std::uint64_t seed);

/// Nominal cost N r l^2.
[[nodiscard]] std::uint64_t estimate_cost_model(std::uint64_t r, std::uint64_t l,
                                                std::uint64_t n_trials);

}  // namespace rsvdangle

#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "rsvdangle/dense.hpp"
#include "rsvdangle/report_io.hpp"

namespace rsvdangle {

/// Fixed budget of alpha * k matrix-vector products split between sample
/// size l and power iterations q on a (1 + beta) k square matrix with a step
/// spectrum of ratio `gap`.
struct BalanceConfig {
  Index k = 10;
  double alpha = 16.0;
  double beta = 32.0;
  double gamma = 1.05;
  double gap = 1.01;
  int trials = 5;
  std::uint64_t seed = 0;

  /// Throws unless gamma > 1, alpha / gamma^2 >= 1, beta * k integral.
  void validate() const;
};

/// Largest q with 2q + 1 <= alpha / gamma^2.
[[nodiscard]] int max_feasible_q(const BalanceConfig& cfg);

/// floor(alpha k / (2q + 1)).
[[nodiscard]] Index balance_sample_size(int q, const BalanceConfig& cfg);

/// phi(q) = (1 + (alpha - g sqrt(alpha p)) / (beta p + g sqrt(alpha beta p)) * gap^(2p))^{-1/2}
/// with p = 2q + 1 and g = gamma. Throws when 2q + 1 > alpha / gamma^2.
[[nodiscard]] double phi_gamma(int q, const BalanceConfig& cfg);

struct BalanceRow {
  int q = 0;
  Index l = 0;
  double phi = 0.0;
  // Per trial, the k true sines (ascending) against U_hat_l.
  std::vector<std::vector<double>> sines;

  [[nodiscard]] double mean_largest() const;
  [[nodiscard]] std::vector<double> mean_sines() const;
  [[nodiscard]] std::vector<double> min_sines() const;
  [[nodiscard]] std::vector<double> max_sines() const;
};

struct BalanceResult {
  std::vector<BalanceRow> rows;  // q = 0 .. max_feasible_q
  int argmin_q = 0;              // argmin of phi
};

/// phi over all feasible q plus, per trial t, the true sines of rsvd with
/// seed cfg.seed + t on the planted step-spectrum matrix of seed cfg.seed + t
/// (shared across q). trials = 0 gives phi only.
[[nodiscard]] BalanceResult balance_sweep(const BalanceConfig& cfg, int jobs = 1);

/// CSV with header q,l,kind,i,value (kind in phi, true_sine_mean,
/// true_sine_min, true_sine_max; i = 0 for phi).
void write_balance_csv(std::ostream& out, const BalanceResult& result);
[[nodiscard]] Panel balance_panel(const BalanceConfig& cfg, const BalanceResult& result);
void emit_balance(const BalanceConfig& cfg, const BalanceResult& result,
                  const std::filesystem::path& dir);

}  // namespace rsvdangle

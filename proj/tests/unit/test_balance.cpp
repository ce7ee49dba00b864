#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "rsvdangle/balance.hpp"
#include "rsvdangle/matgen.hpp"
#include "rsvdangle/prior_bounds.hpp"

namespace rsvdangle {
namespace {

TEST(Balance, FeasibleSetAndSampleSizes) {
  const BalanceConfig cfg;  // alpha 16, gamma 1.05: 2q + 1 <= 14.51
  EXPECT_EQ(max_feasible_q(cfg), 6);
  EXPECT_EQ(balance_sample_size(0, cfg), 160);
  EXPECT_EQ(balance_sample_size(1, cfg), 53);
  EXPECT_EQ(balance_sample_size(6, cfg), 12);
  EXPECT_THROW((void)phi_gamma(7, cfg), Error);
  BalanceConfig tight;
  tight.alpha = 1.2;
  tight.gamma = 1.05;
  EXPECT_EQ(max_feasible_q(tight), 0);
}

TEST(Balance, PhiMatchesSpaceAgnosticFormAtRealSampleSize) {
  for (double gap : {1.0, 1.01, 1.2, 1.5}) {
    BalanceConfig cfg;
    cfg.gap = gap;
    const Spectrum s = gen_step_spectrum(cfg.k, cfg.beta, cfg.gap);
    for (int q = 0; q <= max_feasible_q(cfg); ++q) {
      const double p = 2.0 * q + 1;
      const double l = cfg.alpha * static_cast<double>(cfg.k) / p;
      const double eps1 = cfg.gamma * std::sqrt(static_cast<double>(cfg.k) / l);
      const double eps2 = cfg.gamma * std::sqrt(l / (cfg.beta * static_cast<double>(cfg.k)));
      const auto v = detail::space_agnostic_values(s, cfg.k, l, 2 * p, (1 - eps1) / (1 + eps2));
      EXPECT_NEAR(phi_gamma(q, cfg), v.front(), 1e-12) << "gap=" << gap << " q=" << q;
    }
  }
}

TEST(Balance, FlatSpectrumClosedForm) {
  BalanceConfig cfg;
  cfg.gap = 1.0;
  const double coeff = (16 - 1.05 * 4) / (32 + 1.05 * std::sqrt(16.0 * 32));
  EXPECT_NEAR(phi_gamma(0, cfg), 1 / std::sqrt(1 + coeff), 1e-15);
}

TEST(Balance, ArgminDependsOnGap) {
  BalanceConfig cfg;
  cfg.trials = 0;
  cfg.gap = 1.01;
  EXPECT_EQ(balance_sweep(cfg).argmin_q, 0);
  cfg.gap = 1.5;
  EXPECT_EQ(balance_sweep(cfg).argmin_q, 6);
}

TEST(Balance, ZeroTrialsGivesPhiOnly) {
  BalanceConfig cfg;
  cfg.trials = 0;
  const BalanceResult r = balance_sweep(cfg);
  ASSERT_EQ(r.rows.size(), 7u);
  for (const auto& row : r.rows) {
    EXPECT_TRUE(row.sines.empty());
    EXPECT_TRUE(std::isnan(row.mean_largest()));
  }
  std::ostringstream out;
  write_balance_csv(out, r);
  EXPECT_EQ(out.str().rfind("q,l,kind,i,value\n0,160,phi,0,", 0), 0u);
}

TEST(Balance, SweepIsDeterministicAcrossJobs) {
  BalanceConfig cfg;
  cfg.k = 3;
  cfg.beta = 10;
  cfg.alpha = 6;
  cfg.gap = 1.3;
  cfg.trials = 3;
  cfg.seed = 2;
  const BalanceResult a = balance_sweep(cfg, 1);
  const BalanceResult b = balance_sweep(cfg, 2);
  ASSERT_EQ(a.rows.size(), 3u);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].sines, b.rows[i].sines);
    ASSERT_EQ(a.rows[i].sines.size(), 3u);
    EXPECT_EQ(a.rows[i].sines[0].size(), 3u);
    const auto lo = a.rows[i].min_sines(), mean = a.rows[i].mean_sines(),
               hi = a.rows[i].max_sines();
    for (std::size_t j = 0; j < 3; ++j) {
      EXPECT_LE(lo[j], mean[j] + 1e-15);
      EXPECT_LE(mean[j], hi[j] + 1e-15);
    }
  }
  std::ostringstream csv;
  write_balance_csv(csv, a);
  // Per q: one phi line plus mean, min and max for each of k indices.
  const std::string text = csv.str();
  EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')), 1u + 3 * (1 + 9));
}

TEST(Balance, Validation) {
  BalanceConfig cfg;
  cfg.gamma = 1.0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = BalanceConfig{};
  cfg.alpha = 1.0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = BalanceConfig{};
  cfg.beta = 0.25;
  cfg.k = 3;
  EXPECT_THROW(cfg.validate(), Error);
}

}  // namespace
}  // namespace rsvdangle

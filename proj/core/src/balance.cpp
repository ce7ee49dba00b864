#include "rsvdangle/balance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <string>

#include "rsvdangle/angles.hpp"
#include "rsvdangle/harness.hpp"
#include "rsvdangle/matgen.hpp"
#include "rsvdangle/rsvd.hpp"

namespace rsvdangle {

void BalanceConfig::validate() const {
  if (k < 1) throw Error("balance: k must be >= 1");
  if (!(gamma > 1.0)) throw Error("balance: gamma must be > 1");
  if (!(alpha / (gamma * gamma) >= 1.0)) throw Error("balance: alpha / gamma^2 must be >= 1");
  if (!(gap >= 1.0)) throw Error("balance: gap must be >= 1");
  if (trials < 0) throw Error("balance: trials must be >= 0");
  (void)gen_step_spectrum(k, beta, gap);
}

int max_feasible_q(const BalanceConfig& cfg) {
  cfg.validate();
  return static_cast<int>(std::floor((cfg.alpha / (cfg.gamma * cfg.gamma) - 1.0) / 2.0));
}

Index balance_sample_size(int q, const BalanceConfig& cfg) {
  return static_cast<Index>(
      std::floor(cfg.alpha * static_cast<double>(cfg.k) / (2.0 * q + 1.0)));
}

double phi_gamma(int q, const BalanceConfig& cfg) {
  cfg.validate();
  const double p = 2.0 * q + 1.0;
  if (q < 0 || p > cfg.alpha / (cfg.gamma * cfg.gamma)) {
    throw Error("balance: budget exceeded (2q + 1 > alpha / gamma^2)");
  }
  const double a = cfg.alpha, b = cfg.beta, g = cfg.gamma;
  const double coeff = (a - g * std::sqrt(a * p)) / (b * p + g * std::sqrt(a * b * p));
  if (coeff <= 0.0) return 1.0;
  const double t = std::log(coeff) + 2.0 * p * std::log(cfg.gap);
  const double softplus = t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
  return std::exp(-0.5 * softplus);
}

double BalanceRow::mean_largest() const {
  if (sines.empty()) return std::numeric_limits<double>::quiet_NaN();
  double sum = 0.0;
  for (const auto& s : sines) sum += s.back();
  return sum / static_cast<double>(sines.size());
}

std::vector<double> BalanceRow::mean_sines() const {
  if (sines.empty()) return {};
  std::vector<double> out(sines.front().size(), 0.0);
  for (const auto& s : sines) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += s[i];
  }
  for (double& x : out) x /= static_cast<double>(sines.size());
  return out;
}

std::vector<double> BalanceRow::min_sines() const {
  if (sines.empty()) return {};
  std::vector<double> out = sines.front();
  for (const auto& s : sines) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::min(out[i], s[i]);
  }
  return out;
}

std::vector<double> BalanceRow::max_sines() const {
  if (sines.empty()) return {};
  std::vector<double> out = sines.front();
  for (const auto& s : sines) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(out[i], s[i]);
  }
  return out;
}

BalanceResult balance_sweep(const BalanceConfig& cfg, int jobs) {
  const int q_max = max_feasible_q(cfg);
  BalanceResult result;
  for (int q = 0; q <= q_max; ++q) {
    BalanceRow row;
    row.q = q;
    row.l = balance_sample_size(q, cfg);
    row.phi = phi_gamma(q, cfg);
    row.sines.resize(static_cast<std::size_t>(cfg.trials));
    result.rows.push_back(std::move(row));
  }
  result.argmin_q = static_cast<int>(
      std::min_element(result.rows.begin(), result.rows.end(),
                       [](const BalanceRow& x, const BalanceRow& y) { return x.phi < y.phi; }) -
      result.rows.begin());

  const Spectrum spectrum = gen_step_spectrum(cfg.k, cfg.beta, cfg.gap);
  const auto r = static_cast<Index>(spectrum.size());
  parallel_for(static_cast<std::size_t>(cfg.trials), jobs, [&](std::size_t t) {
    const std::uint64_t seed = cfg.seed + t;
    const PlantedMatrix m = gen_gaussian_decay(r, r, spectrum, seed);
    const Eigen::MatrixXd u_k = m.factors.u.values().leftCols(cfg.k);
    for (auto& row : result.rows) {
      const RsvdOutput out = rsvd(m.a, SketchConfig{cfg.k, row.l, row.q, seed});
      row.sines[t] = detail::sines_orthonormal(out.factors.u.values(), u_k);
    }
  });
  return result;
}

void write_balance_csv(std::ostream& out, const BalanceResult& result) {
  out << "q,l,kind,i,value\n";
  for (const auto& row : result.rows) {
    out << row.q << ',' << row.l << ",phi,0," << format_value(row.phi) << '\n';
    const auto mean = row.mean_sines();
    const auto lo = row.min_sines();
    const auto hi = row.max_sines();
    const std::pair<const char*, const std::vector<double>*> kinds[] = {
        {"true_sine_mean", &mean}, {"true_sine_min", &lo}, {"true_sine_max", &hi}};
    for (const auto& [kind, values] : kinds) {
      for (std::size_t i = 0; i < values->size(); ++i) {
        out << row.q << ',' << row.l << ',' << kind << ',' << i + 1 << ','
            << format_value((*values)[i]) << '\n';
      }
    }
  }
}

Panel balance_panel(const BalanceConfig& cfg, const BalanceResult& result) {
  Panel panel;
  char title[160];
  std::snprintf(title, sizeof title, "k=%lld alpha=%g beta=%g gamma=%g gap=%g",
                static_cast<long long>(cfg.k), cfg.alpha, cfg.beta, cfg.gamma, cfg.gap);
  panel.title = title;
  panel.x_label = "power iterations q (l = floor(alpha k / (2q+1)))";
  panel.y_label = "phi(q) / largest sine";
  Series phi{"phi_gamma(q)", {}, {}, "#d62728", false};
  Series mean{"largest sine, mean", {}, {}, "#000000", false};
  Series lo{"largest sine, min", {}, {}, "#7f7f7f", true};
  Series hi{"largest sine, max", {}, {}, "#7f7f7f", true};
  for (const auto& row : result.rows) {
    const double q = row.q;
    phi.x.push_back(q);
    phi.y.push_back(row.phi);
    if (row.sines.empty()) continue;
    mean.x.push_back(q);
    mean.y.push_back(row.mean_largest());
    lo.x.push_back(q);
    lo.y.push_back(row.min_sines().back());
    hi.x.push_back(q);
    hi.y.push_back(row.max_sines().back());
  }
  panel.series.push_back(std::move(phi));
  if (!mean.x.empty()) {
    panel.series.push_back(std::move(mean));
    panel.series.push_back(std::move(lo));
    panel.series.push_back(std::move(hi));
  }
  return panel;
}

void emit_balance(const BalanceConfig& cfg, const BalanceResult& result,
                  const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "balance.csv", std::ios::binary);
    if (!out) throw Error("cannot write " + (dir / "balance.csv").string());
    write_balance_csv(out, result);
  }
  emit_svg(balance_panel(cfg, result), dir / "balance.svg");
}

}  // namespace rsvdangle

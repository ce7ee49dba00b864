#include "rsvdangle/prior_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace rsvdangle {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// 1 / sqrt(1 + exp(t)) without overflow.
double inv_sqrt_one_plus_exp(double t) {
  if (t == std::numeric_limits<double>::infinity()) return 0.0;
  if (t == kNegInf) return 1.0;
  const double softplus = t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
  return std::exp(-0.5 * softplus);
}

std::span<const double> tail_of(const Spectrum& spectrum, Index k) {
  const auto r = static_cast<Index>(spectrum.declared_rank());
  if (k < 1 || k >= r) {
    throw Error("requires 1 <= k < declared rank (k=" + std::to_string(k) +
                ", r=" + std::to_string(r) + ")");
  }
  return spectrum.values().subspan(static_cast<std::size_t>(k),
                                   static_cast<std::size_t>(r - k));
}

void check_sizes(const Spectrum& spectrum, Index k, Index l) {
  const auto r = static_cast<Index>(spectrum.declared_rank());
  if (!(1 <= k && k < l && l < r)) {
    throw InvalidParams("space-agnostic bound requires 1 <= k < l < r (k=" + std::to_string(k) +
                ", l=" + std::to_string(l) + ", r=" + std::to_string(r) + ")");
  }
}

BoundReport finish(BoundKind kind, Side side, std::vector<double> raw, const Distortion& d,
                   double eta_value) {
  BoundReport report = make_report(kind, side, std::move(raw));
  report.params["eps1"] = d.eps1;
  report.params["eps2"] = d.eps2;
  report.params["eta"] = eta_value;
  return report;
}

}  // namespace

namespace detail {

double log_power_sum(std::span<const double> values, double exponent) {
  double top = kNegInf;
  for (double x : values) {
    if (x > 0.0) top = std::max(top, exponent * std::log(x));
  }
  if (top == kNegInf) return kNegInf;
  double acc = 0.0;
  for (double x : values) {
    if (x > 0.0) acc += std::exp(exponent * std::log(x) - top);
  }
  return top + std::log(acc);
}

std::vector<double> space_agnostic_values(const Spectrum& spectrum, Index k, double l,
                                          double exponent, double factor) {
  const double log_tail = log_power_sum(tail_of(spectrum, k), exponent);
  if (log_tail == kNegInf) {
    throw TailTooShort("empty tail");
  }
  const double log_scale = std::log(factor) + std::log(l) - log_tail;
  std::vector<double> out(static_cast<std::size_t>(k));
  for (Index j = 0; j < k; ++j) {
    const double t = log_scale + exponent * std::log(spectrum.at(static_cast<std::size_t>(j)));
    out[static_cast<std::size_t>(j)] = inv_sqrt_one_plus_exp(t);
  }
  return out;
}

}  // namespace detail

double side_exponent(int q, Side side) {
  if (q < 0) throw Error("q must be >= 0");
  return side == Side::left ? 4.0 * q + 2.0 : 4.0 * q + 4.0;
}

double eta_exponent(const Spectrum& spectrum, Index k, double exponent) {
  const auto tail = tail_of(spectrum, k);
  const double s1 = detail::log_power_sum(tail, exponent);
  if (s1 == kNegInf) {
    throw TailTooShort("empty tail");
  }
  const double s2 = detail::log_power_sum(tail, 2.0 * exponent);
  return std::exp(2.0 * s1 - s2);
}

double eta(const Spectrum& spectrum, Index k, int q) {
  return eta_exponent(spectrum, k, side_exponent(q, Side::left));
}

Distortion resolve_distortion(const Spectrum& spectrum, Index k, double l, int q, Side side,
                              const DistortionParams& dp) {
  Distortion d;
  d.eps1 = dp.eps1 ? *dp.eps1 : dp.c1 * std::sqrt(static_cast<double>(k) / l);
  if (dp.eps2) {
    d.eps2 = *dp.eps2;
  } else if (dp.eps2_basis == Eps2Basis::tail_count) {
    const auto r = static_cast<double>(spectrum.declared_rank());
    d.eps2 = dp.c2 * std::sqrt(l / (r - static_cast<double>(k)));
  } else {
    d.eps2 = dp.c2 * std::sqrt(l / eta_exponent(spectrum, k, side_exponent(q, side)));
  }
  if (!(d.eps1 > 0.0 && std::isfinite(d.eps1) && d.eps2 > 0.0 && std::isfinite(d.eps2))) {
    throw InvalidParams("distortion factors must be positive and finite");
  }
  return d;
}

BoundReport space_agnostic_upper(const Spectrum& spectrum, Index k, Index l, int q, Side side,
                                 const DistortionParams& dp) {
  check_sizes(spectrum, k, l);
  const auto ld = static_cast<double>(l);
  const Distortion d = resolve_distortion(spectrum, k, ld, q, side, dp);
  if (d.eps1 >= 1.0) {
    throw InvalidParams("invalid distortion: eps1 = " + std::to_string(d.eps1) + " >= 1");
  }
  const double exponent = side_exponent(q, side);
  auto raw = detail::space_agnostic_values(spectrum, k, ld, exponent,
                                           (1.0 - d.eps1) / (1.0 + d.eps2));
  return finish(BoundKind::space_agnostic_upper, side, std::move(raw), d,
                eta_exponent(spectrum, k, exponent));
}

BoundReport space_agnostic_lower(const Spectrum& spectrum, Index k, Index l, int q, Side side,
                                 const DistortionParams& dp) {
  check_sizes(spectrum, k, l);
  const auto ld = static_cast<double>(l);
  const Distortion d = resolve_distortion(spectrum, k, ld, q, side, dp);
  if (d.eps2 >= 1.0) {
    throw InvalidParams("invalid distortion: eps2 = " + std::to_string(d.eps2) +
                " >= 1 (tail too short for the sample size)");
  }
  const double exponent = side_exponent(q, side);
  auto raw = detail::space_agnostic_values(spectrum, k, ld, exponent,
                                           (1.0 + d.eps1) / (1.0 - d.eps2));
  return finish(BoundKind::space_agnostic_lower, side, std::move(raw), d,
                eta_exponent(spectrum, k, exponent));
}

double sketch_coupling_norm(const DenseMatrix& omega1, const DenseMatrix& omega2) {
  if (omega1.cols() != omega2.cols()) {
    throw Error("sketch blocks must have the same number of columns");
  }
  const Eigen::VectorXd s = detail::singular_values(omega1.values());
  if (s(s.size() - 1) <= kDefaultPinvCutoff * s(0)) {
    throw Error("omega1 is rank deficient");
  }
  // omega2 omega1^+ = (omega1^+^T omega2^T)^T; pinv_apply gives omega1^T^+ omega2^T.
  const DenseMatrix coupled = pinv_apply(omega1.transpose(), omega2.transpose());
  return spectral_norm(coupled);
}

BoundReport saibaba_upper(const Spectrum& spectrum, const DenseMatrix& omega1,
                          const DenseMatrix& omega2, Index k, int q, Side side) {
  if (k < 1 || static_cast<std::size_t>(k) >= spectrum.size()) {
    throw Error("saibaba bound requires 1 <= k < spectrum length");
  }
  if (omega1.rows() != k) {
    throw Error("omega1 must have k rows");
  }
  const double coupling = sketch_coupling_norm(omega1, omega2);
  const double exponent = side_exponent(q, side);
  const double next = spectrum.at(static_cast<std::size_t>(k));
  std::vector<double> raw(static_cast<std::size_t>(k));
  for (Index j = 0; j < k; ++j) {
    const double sj = spectrum.at(static_cast<std::size_t>(j));
    // t = log(s_{k+1}^e ||.||^2 / s_j^e); the bound is 1/sqrt(1 + exp(-t)).
    double t = kNegInf;
    if (coupling > 0.0 && next > 0.0) {
      t = exponent * (std::log(next) - std::log(sj)) + 2.0 * std::log(coupling);
    }
    raw[static_cast<std::size_t>(j)] = inv_sqrt_one_plus_exp(-t);
  }
  BoundReport report = make_report(BoundKind::saibaba_upper, side, std::move(raw));
  report.params["coupling_norm"] = coupling;
  return report;
}

double saibaba_probabilistic_envelope(Index k, Index l, Index n, double delta) {
  if (!(l >= k + 2) || k < 1 || n < l) {
    throw Error("envelope requires 1 <= k, k + 2 <= l <= n");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error("envelope requires delta in (0, 1)");
  }
  const double p = static_cast<double>(l - k + 1);
  const double ld = static_cast<double>(l);
  const double log2d = std::log(2.0 / delta);
  return std::numbers::e * std::sqrt(ld) / p * std::exp(log2d / p) *
         (std::sqrt(static_cast<double>(n - k)) + std::sqrt(ld) + std::sqrt(2.0 * log2d));
}

}  // namespace rsvdangle

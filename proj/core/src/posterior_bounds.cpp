#include "rsvdangle/posterior_bounds.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace rsvdangle {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double top_singular(const Eigen::MatrixXd& m, NormMethod method, int iters, std::uint64_t seed) {
  if (method == NormMethod::power) {
    return detail::power_spectral_norm(m, iters, seed);
  }
  return detail::spectral_norm(m);
}

// a / b with a / inf = 0 and b > 0 assumed.
double ratio(double a, double b) { return b == kInf ? 0.0 : a / b; }

}  // namespace

Spectrum residual_spectrum(const DenseMatrix& a, const DenseMatrix& basis, Side side) {
  const Eigen::MatrixXd& am = a.values();
  const Eigen::MatrixXd& b = basis.values();
  Eigen::MatrixXd res;
  if (side == Side::left) {
    if (b.rows() != am.rows()) throw Error("residual_spectrum: basis must have m rows");
    res = am - b * (b.transpose() * am);
  } else {
    if (b.rows() != am.cols()) throw Error("residual_spectrum: basis must have n rows");
    res = am - (am * b) * b.transpose();
  }
  const Eigen::VectorXd s = detail::singular_values(res);
  return Spectrum(std::vector<double>(s.begin(), s.end()));
}

BoundReport posterior_residual_bound(const Spectrum& residual, const Spectrum& spectrum, Index k,
                                     Side side) {
  const auto ku = static_cast<std::size_t>(k);
  if (k < 1 || ku > spectrum.size() || ku > residual.size()) {
    throw Error("posterior residual bound requires 1 <= k <= spectrum lengths");
  }
  const double sk = spectrum.at(ku - 1);
  if (!(sk > 0.0)) {
    throw Error("target rank exceeds numerical rank");
  }
  const double r1 = residual.at(0);
  std::vector<double> raw(ku);
  for (std::size_t i = 1; i <= ku; ++i) {
    raw[i - 1] = std::min(residual.at(ku - i) / sk, r1 / spectrum.at(i - 1));
  }
  BoundReport report = make_report(BoundKind::posterior_residual, side, std::move(raw));
  report.params["sigma_k"] = sk;
  report.params["residual_norm"] = r1;
  return report;
}

ResidualStats residual_blocks(const DenseMatrix& a, const RsvdOutput& out, Index k,
                              NormMethod method, int power_iters, std::uint64_t seed) {
  const auto& f = out.factors;
  const auto l = static_cast<Index>(f.width());
  if (k < 1 || k >= l) {
    throw Error("residual blocks require 1 <= k < l");
  }
  const Eigen::MatrixXd& am = a.values();
  const Eigen::MatrixXd& u = f.u.values();
  const Eigen::MatrixXd& v = f.v.values();
  const Eigen::Map<const Eigen::VectorXd> s(f.sigma.data(), l);

  // (A - U S V^T) V = A V - U S.
  const Eigen::MatrixXd av = am * v;
  const Eigen::MatrixXd x = av - u * s.asDiagonal();
  const Eigen::MatrixXd e33 = am - av * v.transpose();

  ResidualStats stats;
  stats.method = method;
  stats.norms.e31_e32_spectral = top_singular(x, method, power_iters, seed);
  stats.norms.e31_e32_frobenius = x.norm();
  stats.norms.e32_spectral = top_singular(x.rightCols(l - k), method, power_iters, seed);
  stats.norms.e33_spectral = top_singular(e33, method, power_iters, seed);
  stats.sigma_hat_k_plus_1 = f.sigma[static_cast<std::size_t>(k)];
  return stats;
}

ResidualStats attach_gaps(ResidualStats stats, double sigma_k) {
  stats.sigma_k = sigma_k;
  stats.gaps.reset();
  const double next = stats.sigma_hat_k_plus_1;
  const double e33 = stats.norms.e33_spectral;
  if (sigma_k > next && sigma_k > e33) {
    const double small_gap = sigma_k * sigma_k - next * next;
    const double big_gap = sigma_k * sigma_k - e33 * e33;
    SpectralGaps g;
    g.gamma1 = small_gap / sigma_k;
    g.gamma2 = next > 0.0 ? small_gap / next : kInf;
    g.big_gamma1 = big_gap / sigma_k;
    g.big_gamma2 = e33 > 0.0 ? big_gap / e33 : kInf;
    if (g.gamma1 > 0.0 && g.big_gamma1 > 0.0) {
      stats.gaps = g;
    }
  }
  return stats;
}

std::vector<BoundReport> posterior_gap_bounds(const ResidualStats& input, const Spectrum& spectrum,
                                              Index k) {
  const auto ku = static_cast<std::size_t>(k);
  if (k < 1 || ku > spectrum.size()) {
    throw Error("posterior gap bounds require 1 <= k <= spectrum length");
  }
  const double sk = spectrum.at(ku - 1);
  if (!(sk > 0.0)) {
    throw Error("target rank exceeds numerical rank");
  }
  const ResidualStats stats = attach_gaps(input, sk);
  if (!stats.gaps) {
    throw GapViolation("gap assumption violated (sigma_k <= sigma_hat_{k+1} or sigma_k <= ||E33||)");
  }
  const SpectralGaps& g = *stats.gaps;
  const double x = stats.norms.e31_e32_spectral;
  const double e32 = stats.norms.e32_spectral;
  const double e33 = stats.norms.e33_spectral;

  auto constant = [&](BoundKind kind, Side side, double value) {
    return make_report(kind, side, std::vector<double>(ku, value));
  };
  auto per_index = [&](BoundKind kind, Side side, auto&& f) {
    std::vector<double> raw(ku);
    for (std::size_t j = 0; j < ku; ++j) {
      raw[j] = f(sk / spectrum.at(j));
    }
    return make_report(kind, side, std::move(raw));
  };

  const double left_l = x / g.big_gamma1;
  const double right_l = ratio(x, g.big_gamma2);
  const double e32_g2 = ratio(e32, g.gamma2);
  const double e32_g1 = e32 / g.gamma1;
  const double e33_sk = e33 / sk;

  std::vector<BoundReport> reports;
  reports.push_back(constant(BoundKind::posterior_gap_l, Side::left, left_l));
  reports.push_back(per_index(BoundKind::posterior_gap_l_anglewise, Side::left,
                              [&](double w) { return w * left_l; }));
  reports.push_back(constant(BoundKind::posterior_gap_k, Side::left,
                             left_l * std::hypot(1.0, e32_g2)));
  reports.push_back(per_index(BoundKind::posterior_gap_k_anglewise, Side::left,
                              [&](double w) { return left_l * std::hypot(1.0, w * e32_g2); }));
  reports.push_back(constant(BoundKind::posterior_gap_l, Side::right, right_l));
  reports.push_back(per_index(BoundKind::posterior_gap_l_anglewise, Side::right,
                              [&](double w) { return w * right_l; }));
  reports.push_back(constant(BoundKind::posterior_gap_k, Side::right,
                             left_l * std::hypot(e32_g1, e33_sk)));
  reports.push_back(per_index(BoundKind::posterior_gap_k_anglewise, Side::right,
                              [&](double w) { return left_l * std::hypot(w * e32_g1, e33_sk); }));
  for (auto& r : reports) {
    r.params["sigma_k"] = sk;
    r.params["gamma1"] = g.gamma1;
    r.params["gamma2"] = g.gamma2;
    r.params["Gamma1"] = g.big_gamma1;
    r.params["Gamma2"] = g.big_gamma2;
    r.params["norm_e31_e32"] = x;
    r.params["norm_e32"] = e32;
    r.params["norm_e33"] = e33;
  }
  return reports;
}

}  // namespace rsvdangle

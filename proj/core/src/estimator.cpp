#include "rsvdangle/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rsvdangle/random.hpp"

namespace rsvdangle {

namespace {

BoundReport band_report(const std::vector<double>& values, Side side, const char* band,
                        int n_trials) {
  BoundReport report = make_report(BoundKind::estimate, side, values);
  report.params["n_trials"] = n_trials;
  report.params[band] = 1.0;
  return report;
}

}  // namespace

BoundReport EstimateReport::as_report() const { return band_report(mean, side, "mean", n_trials); }
BoundReport EstimateReport::min_report() const {
  return band_report(min_band, side, "min", n_trials);
}
BoundReport EstimateReport::max_report() const {
  return band_report(max_band, side, "max", n_trials);
}

EstimateReport unbiased_estimate(const Spectrum& spectrum, Index k, Index l, int q, int n_trials,
                                 Side side, std::uint64_t seed) {
  const auto r = static_cast<Index>(spectrum.declared_rank());
  if (k < 1 || k > l) {
    throw Error("estimator requires 1 <= k <= l");
  }
  if (k >= r) {
    throw Error("estimator requires k < declared rank");
  }
  if (q < 0 || n_trials < 1) {
    throw Error("estimator requires q >= 0 and n_trials >= 1");
  }
  if (r - k < l) {
    throw TailTooShort("tail too short for estimator (r - k = " + std::to_string(r - k) +
                " < l = " + std::to_string(l) + ")");
  }
  const double p = side == Side::left ? 2.0 * q + 1.0 : 2.0 * q + 2.0;
  const double log_ref = std::log(spectrum.at(static_cast<std::size_t>(k)));
  Eigen::VectorXd weights(r);
  for (Index i = 0; i < r; ++i) {
    weights(i) = std::exp(p * (std::log(spectrum.at(static_cast<std::size_t>(i))) - log_ref));
  }

  EstimateReport out;
  out.per_trial.resize(n_trials, k);
  out.n_trials = n_trials;
  out.side = side;
  const CounterRng base = CounterRng(seed).split(stream::kEstimator);
  for (int t = 0; t < n_trials; ++t) {
    const Eigen::MatrixXd omega =
        gaussian_matrix(base.split(static_cast<std::uint64_t>(t)), r, l, 1.0 / static_cast<double>(l));
    const Eigen::MatrixXd top = weights.head(k).asDiagonal() * omega.topRows(k);
    const Eigen::MatrixXd tail = weights.tail(r - k).asDiagonal() * omega.bottomRows(r - k);

    Eigen::BDCSVD<Eigen::MatrixXd> svd(tail, Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) {
      throw Error("svd failed");
    }
    const Eigen::VectorXd& s2 = svd.singularValues();
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(s2.size());
    for (Index i = 0; i < s2.size(); ++i) {
      if (s2(i) > kDefaultPinvCutoff * s2(0)) {
        inv(i) = 1.0 / s2(i);
      } else {
        out.pinv_cutoff_applied = true;
      }
    }
    const Eigen::VectorXd nu = detail::singular_values(top * svd.matrixV() * inv.asDiagonal());
    for (Index j = 0; j < k; ++j) {
      out.per_trial(t, j) = 1.0 / std::hypot(1.0, nu(j));
    }
  }

  out.mean.resize(static_cast<std::size_t>(k));
  out.min_band.resize(static_cast<std::size_t>(k));
  out.max_band.resize(static_cast<std::size_t>(k));
  for (Index j = 0; j < k; ++j) {
    const auto col = out.per_trial.col(j);
    const auto idx = static_cast<std::size_t>(j);
    out.min_band[idx] = col.minCoeff();
    out.max_band[idx] = col.maxCoeff();
    // Rounding in the sum can push a constant column's mean one ulp outside.
    out.mean[idx] = std::clamp(col.mean(), out.min_band[idx], out.max_band[idx]);
    if (out.min_band[idx] < kEstimatePrecisionFloor) out.below_precision = true;
  }
  return out;
}

std::uint64_t estimate_cost_model(std::uint64_t r, std::uint64_t l, std::uint64_t n_trials) {
  return n_trials * r * l * l;
}

}  // namespace rsvdangle

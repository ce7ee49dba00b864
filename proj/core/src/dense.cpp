#include "rsvdangle/dense.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rsvdangle/random.hpp"

namespace rsvdangle {
namespace {

void require_valid_shape(Index rows, Index cols) {
  if (rows < 1 || cols < 1) {
    throw Error("DenseMatrix: shape must be at least 1 x 1, got " + std::to_string(rows) + " x " +
                std::to_string(cols));
  }
}

}  // namespace

DenseMatrix::DenseMatrix(Index rows, Index cols) {
  require_valid_shape(rows, cols);
  values_ = Eigen::MatrixXd::Zero(rows, cols);
}

DenseMatrix::DenseMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
  require_valid_shape(values_.rows(), values_.cols());
  if (!values_.allFinite()) {
    throw Error("DenseMatrix: entries must be finite");
  }
}

DenseMatrix DenseMatrix::identity(Index n) {
  require_valid_shape(n, n);
  return DenseMatrix(Eigen::MatrixXd::Identity(n, n));
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> diag) {
  const auto n = static_cast<Index>(diag.size());
  require_valid_shape(n, n);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    out(i, i) = diag[static_cast<std::size_t>(i)];
  }
  return DenseMatrix(std::move(out));
}

DenseMatrix DenseMatrix::diagonal(std::initializer_list<double> diag) {
  return diagonal(std::span<const double>(diag.begin(), diag.size()));
}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const auto n_rows = static_cast<Index>(rows.size());
  const auto n_cols = n_rows == 0 ? Index{0} : static_cast<Index>(rows.begin()->size());
  require_valid_shape(n_rows, n_cols);
  Eigen::MatrixXd out(n_rows, n_cols);
  Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Index>(row.size()) != n_cols) {
      throw Error("DenseMatrix::from_rows: ragged rows");
    }
    Index j = 0;
    for (double value : row) {
      out(i, j++) = value;
    }
    ++i;
  }
  return DenseMatrix(std::move(out));
}

DenseMatrix DenseMatrix::transpose() const { return DenseMatrix(values_.transpose()); }

DenseMatrix DenseMatrix::left_cols(Index count) const {
  if (count < 1 || count > cols()) {
    throw Error("DenseMatrix::left_cols: count out of range");
  }
  return DenseMatrix(values_.leftCols(count));
}

DenseMatrix SvdFactors::reconstruct() const {
  const Eigen::Map<const Eigen::VectorXd> s(sigma.data(), static_cast<Index>(sigma.size()));
  return DenseMatrix(u.values() * s.asDiagonal() * v.values().transpose());
}

Spectrum::Spectrum(std::vector<double> values)
    : Spectrum(values,
               static_cast<std::size_t>(std::count_if(values.begin(), values.end(),
                                                      [](double x) { return x > 0.0; }))) {}

Spectrum::Spectrum(std::vector<double> values, std::size_t declared_rank)
    : values_(std::move(values)), declared_rank_(declared_rank) {
  if (declared_rank_ > values_.size()) {
    throw Error("Spectrum: declared rank exceeds number of values");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double x = values_[i];
    if (!std::isfinite(x) || x < 0.0) {
      throw Error("Spectrum: values must be finite and non-negative");
    }
    if (i > 0 && x > values_[i - 1]) {
      throw Error("Spectrum: values must be non-increasing");
    }
    if (i < declared_rank_ && x == 0.0) {
      throw Error("Spectrum: declared values must be positive");
    }
    if (i >= declared_rank_ && x != 0.0) {
      throw Error("Spectrum: values beyond the declared rank must be zero");
    }
  }
}

Spectrum Spectrum::numerical(std::vector<double> values, double rel_tol) {
  const double cutoff = values.empty() ? 0.0 : rel_tol * values.front();
  std::size_t rank = 0;
  for (double& x : values) {
    if (x > cutoff && x > 0.0) {
      ++rank;
    } else {
      x = 0.0;
    }
  }
  return Spectrum(std::move(values), rank);
}

namespace detail {

Eigen::MatrixXd ortho(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  if (m.cols() > m.rows()) {
    throw Error("ortho: more columns than rows");
  }
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  const auto& packed = qr.matrixQR();
  const double threshold = 1e-12 * m.norm();
  Eigen::VectorXd signs(m.cols());
  for (Index j = 0; j < m.cols(); ++j) {
    const double r = packed(j, j);
    if (!(std::abs(r) >= threshold) || r == 0.0) {
      throw Error("rank deficient sketch");
    }
    signs(j) = r < 0.0 ? -1.0 : 1.0;
  }
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(m.rows(), m.cols());
  q.applyOnTheLeft(qr.householderQ());
  return q * signs.asDiagonal();
}

Eigen::VectorXd singular_values(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  if (svd.info() != Eigen::Success) {
    throw Error("svd failed");
  }
  return svd.singularValues();
}

double spectral_norm(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  if (m.size() == 0) {
    return 0.0;
  }
  return singular_values(m)(0);
}

double power_spectral_norm(const Eigen::Ref<const Eigen::MatrixXd>& m, int iters,
                           std::uint64_t seed) {
  if (iters < 1) {
    throw Error("spectral_norm_power: iters must be >= 1");
  }
  const CounterRng rng = CounterRng(seed).split(stream::kPowerMethod);
  Eigen::VectorXd x = gaussian_matrix(rng, m.cols(), 1);
  double norm = x.norm();
  if (norm == 0.0) {
    return 0.0;
  }
  x /= norm;
  for (int t = 0; t < iters; ++t) {
    Eigen::VectorXd next = m.transpose() * (m * x);
    norm = next.norm();
    if (norm == 0.0) {
      return 0.0;
    }
    x = next / norm;
  }
  return (m * x).norm();
}

}  // namespace detail

DenseMatrix ortho(const DenseMatrix& m) { return DenseMatrix(detail::ortho(m.values())); }

SvdFactors svd_full(const DenseMatrix& m) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m.values(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw Error("svd failed");
  }
  const Eigen::VectorXd& s = svd.singularValues();
  return SvdFactors{DenseMatrix(svd.matrixU()), std::vector<double>(s.begin(), s.end()),
                    DenseMatrix(svd.matrixV())};
}

std::vector<double> singular_values(const DenseMatrix& m) {
  const Eigen::VectorXd s = detail::singular_values(m.values());
  return {s.begin(), s.end()};
}

double spectral_norm(const DenseMatrix& m) { return detail::spectral_norm(m.values()); }

DenseMatrix pinv_apply(const DenseMatrix& m, const DenseMatrix& rhs, double rel_cutoff) {
  if (!(rel_cutoff >= 0.0 && rel_cutoff < 1.0)) {
    throw Error("pinv_apply: rel_cutoff must lie in [0, 1)");
  }
  if (rhs.rows() != m.rows()) {
    throw Error("pinv_apply: rhs rows must match m rows");
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m.values(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw Error("svd failed");
  }
  const Eigen::VectorXd& s = svd.singularValues();
  const double cutoff = s.size() == 0 ? 0.0 : rel_cutoff * s(0);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff && s(i) > 0.0) {
      inv(i) = 1.0 / s(i);
    }
  }
  return DenseMatrix(svd.matrixV() * inv.asDiagonal() *
                     (svd.matrixU().transpose() * rhs.values()));
}

double spectral_norm_power(const DenseMatrix& m, int iters, std::uint64_t seed) {
  return detail::power_spectral_norm(m.values(), iters, seed);
}

}  // namespace rsvdangle

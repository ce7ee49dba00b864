#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rsvdangle/error.hpp"

namespace rsvdangle {

using Index = Eigen::Index;

/// Real dense matrix with at least one row and one column and finite entries.
///
/// Values are immutable once constructed; every operation returns a new
/// matrix. Storage is an Eigen column-major matrix exposed read-only through
/// values() so callers can compose Eigen expressions.
class DenseMatrix {
 public:
  DenseMatrix(Index rows, Index cols);  // zero-filled
  explicit DenseMatrix(Eigen::MatrixXd values);

  static DenseMatrix identity(Index n);
  static DenseMatrix diagonal(std::span<const double> diag);
  static DenseMatrix diagonal(std::initializer_list<double> diag);
  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  [[nodiscard]] Index rows() const noexcept { return values_.rows(); }
  [[nodiscard]] Index cols() const noexcept { return values_.cols(); }
  [[nodiscard]] double operator()(Index row, Index col) const { return values_(row, col); }
  [[nodiscard]] const Eigen::MatrixXd& values() const noexcept { return values_; }

  [[nodiscard]] DenseMatrix transpose() const;
  [[nodiscard]] DenseMatrix left_cols(Index count) const;
  [[nodiscard]] double frobenius_norm() const { return values_.norm(); }

 private:
  Eigen::MatrixXd values_;
};

/// (u, sigma, v) with u: m x p, v: n x p orthonormal columns and sigma
/// non-increasing, non-negative.
struct SvdFactors {
  DenseMatrix u;
  std::vector<double> sigma;
  DenseMatrix v;

  [[nodiscard]] std::size_t width() const noexcept { return sigma.size(); }
  [[nodiscard]] DenseMatrix reconstruct() const;
};

/// Non-increasing non-negative singular values. The first declared_rank()
/// entries are positive, the rest are exactly zero.
class Spectrum {
 public:
  /// Declared rank is the number of positive entries.
  explicit Spectrum(std::vector<double> values);
  Spectrum(std::vector<double> values, std::size_t declared_rank);

  /// Zeroes entries below rel_tol * values[0] and declares the rest.
  static Spectrum numerical(std::vector<double> values, double rel_tol);

  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] std::size_t declared_rank() const noexcept { return declared_rank_; }
  /// Zero-based access; sigma_i in one-based notation is at(i - 1).
  [[nodiscard]] double at(std::size_t index) const { return values_.at(index); }

  friend bool operator==(const Spectrum&, const Spectrum&) = default;

 private:
  std::vector<double> values_;
  std::size_t declared_rank_ = 0;
};

inline constexpr double kDefaultPinvCutoff = 1e-12;

/// Orthonormal basis of range(m) from the reduced unpivoted Householder QR.
/// Column signs are fixed so that diag(R) >= 0. Throws "rank deficient sketch"
/// when some |R_ii| < 1e-12 * ||m||_F.
[[nodiscard]] DenseMatrix ortho(const DenseMatrix& m);

/// Economy SVD with p = min(rows, cols) triplets.
[[nodiscard]] SvdFactors svd_full(const DenseMatrix& m);

/// Singular values only, non-increasing, min(rows, cols) of them.
[[nodiscard]] std::vector<double> singular_values(const DenseMatrix& m);

[[nodiscard]] double spectral_norm(const DenseMatrix& m);

/// m^+ * rhs, treating singular values below rel_cutoff * sigma_max as zero.
[[nodiscard]] DenseMatrix pinv_apply(const DenseMatrix& m, const DenseMatrix& rhs,
                                     double rel_cutoff = kDefaultPinvCutoff);

/// Randomized power method on m^T m. Returns ||m x_iters|| where x_0 is a
/// seeded Gaussian unit vector and x_t = m^T m x_{t-1} / ||.||. Never exceeds
/// sigma_1(m) and is non-decreasing in iters for a fixed seed.
[[nodiscard]] double spectral_norm_power(const DenseMatrix& m, int iters, std::uint64_t seed);

namespace detail {

// Eigen-level kernels shared by the modules; they skip the finiteness scan of
// DenseMatrix construction on intermediates.
Eigen::MatrixXd ortho(const Eigen::Ref<const Eigen::MatrixXd>& m);
Eigen::VectorXd singular_values(const Eigen::Ref<const Eigen::MatrixXd>& m);
double spectral_norm(const Eigen::Ref<const Eigen::MatrixXd>& m);
double power_spectral_norm(const Eigen::Ref<const Eigen::MatrixXd>& m, int iters,
                           std::uint64_t seed);

}  // namespace detail

}  // namespace rsvdangle

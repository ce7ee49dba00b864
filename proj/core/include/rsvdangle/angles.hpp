#pragma once

#include <vector>

#include "rsvdangle/dense.hpp"

namespace rsvdangle {

/// Sines of the canonical angles, smallest angle first (non-decreasing).
struct AngleVector {
  std::vector<double> sines;

  [[nodiscard]] std::size_t size() const noexcept { return sines.size(); }
  [[nodiscard]] double largest() const { return sines.back(); }
};

/// sin of the canonical angles between span(big) (d x l) and span(small)
/// (d x k), k <= l <= d. Computed as the singular values of
/// (I - Qb Qb^T) Qs in ascending order.
[[nodiscard]] AngleVector canonical_sines(const DenseMatrix& big, const DenseMatrix& small);

/// Cosines sigma_i(Qb^T Qs), non-increasing, index-aligned with the sines.
[[nodiscard]] std::vector<double> canonical_cosines(const DenseMatrix& big,
                                                    const DenseMatrix& small);

namespace detail {
// Inputs with orthonormal columns already.
std::vector<double> sines_orthonormal(const Eigen::Ref<const Eigen::MatrixXd>& qb,
                                      const Eigen::Ref<const Eigen::MatrixXd>& qs);
}  // namespace detail

}  // namespace rsvdangle

#include "rsvdangle/angles.hpp"

#include <algorithm>

namespace rsvdangle {
namespace {

constexpr double kRangeTolerance = 1e-8;

double clamp_unit(double x) {
  if (x > 1.0 + kRangeTolerance) {
    throw Error("sine out of range");
  }
  return std::clamp(x, 0.0, 1.0);
}

void check_shapes(const DenseMatrix& big, const DenseMatrix& small) {
  if (big.rows() != small.rows()) {
    throw Error("canonical angles: inputs must have the same number of rows");
  }
  if (small.cols() > big.cols() || big.cols() > big.rows()) {
    throw Error("canonical angles: requires k <= l <= d");
  }
}

Eigen::MatrixXd orthonormal(const DenseMatrix& m) {
  try {
    return detail::ortho(m.values());
  } catch (const Error&) {
    throw Error("rank deficient input");
  }
}

}  // namespace

namespace detail {

std::vector<double> sines_orthonormal(const Eigen::Ref<const Eigen::MatrixXd>& qb,
                                      const Eigen::Ref<const Eigen::MatrixXd>& qs) {
  const Eigen::MatrixXd residual = qs - qb * (qb.transpose() * qs);
  const Eigen::VectorXd s = singular_values(residual);
  std::vector<double> out(static_cast<std::size_t>(s.size()));
  for (Index i = 0; i < s.size(); ++i) {
    out[static_cast<std::size_t>(i)] = clamp_unit(s(s.size() - 1 - i));
  }
  return out;
}

}  // namespace detail

AngleVector canonical_sines(const DenseMatrix& big, const DenseMatrix& small) {
  check_shapes(big, small);
  return AngleVector{detail::sines_orthonormal(orthonormal(big), orthonormal(small))};
}

std::vector<double> canonical_cosines(const DenseMatrix& big, const DenseMatrix& small) {
  check_shapes(big, small);
  const Eigen::VectorXd s =
      detail::singular_values(orthonormal(big).transpose() * orthonormal(small));
  std::vector<double> out(static_cast<std::size_t>(s.size()));
  for (Index i = 0; i < s.size(); ++i) {
    out[static_cast<std::size_t>(i)] = clamp_unit(s(i));
  }
  return out;
}

}  // namespace rsvdangle

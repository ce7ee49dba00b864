#include "rsvdangle/rsvd.hpp"

#include <algorithm>
#include <string>

#include "rsvdangle/random.hpp"

namespace rsvdangle {

void SketchConfig::validate(Index rows, Index cols) const {
  if (k < 1 || k > l) {
    throw Error("sketch config: requires 1 <= k <= l (k=" + std::to_string(k) +
                ", l=" + std::to_string(l) + ")");
  }
  if (l > std::min(rows, cols)) {
    throw Error("sketch config: l=" + std::to_string(l) + " exceeds min(m, n)=" +
                std::to_string(std::min(rows, cols)));
  }
  if (q < 0) {
    throw Error("sketch config: q must be >= 0");
  }
}

RsvdOutput rsvd(const DenseMatrix& a, const SketchConfig& cfg) {
  cfg.validate(a.rows(), a.cols());
  return rsvd(a, cfg, gaussian_sketch(a.cols(), cfg.l, cfg.seed));
}

RsvdOutput rsvd(const DenseMatrix& a, const SketchConfig& cfg, const DenseMatrix& omega) {
  cfg.validate(a.rows(), a.cols());
  if (omega.rows() != a.cols() || omega.cols() != cfg.l) {
    throw Error("rsvd: sketch must be n x l");
  }
  const Eigen::MatrixXd& am = a.values();
  Eigen::MatrixXd x = detail::ortho(am * omega.values());
  for (int i = 0; i < cfg.q; ++i) {
    const Eigen::MatrixXd y = detail::ortho(am.transpose() * x);
    x = detail::ortho(am * y);
  }
  const Eigen::MatrixXd small = am.transpose() * x;  // n x l
  Eigen::BDCSVD<Eigen::MatrixXd> svd(small, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw Error("svd failed");
  }
  const Eigen::VectorXd& s = svd.singularValues();
  SvdFactors factors{DenseMatrix(x * svd.matrixV()), std::vector<double>(s.begin(), s.end()),
                     DenseMatrix(svd.matrixU())};
  return RsvdOutput{std::move(factors), cfg.q, cfg.seed};
}

DenseMatrix orthogonal_complement(const DenseMatrix& basis) {
  if (basis.cols() >= basis.rows()) {
    throw Error("orthogonal_complement: requires cols < rows");
  }
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis.values());
  Eigen::MatrixXd full = Eigen::MatrixXd::Identity(basis.rows(), basis.rows());
  full.applyOnTheLeft(qr.householderQ());
  return DenseMatrix(full.rightCols(basis.rows() - basis.cols()));
}

}  // namespace rsvdangle

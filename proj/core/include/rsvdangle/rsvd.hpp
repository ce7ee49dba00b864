#pragma once

#include <cstdint>

#include "rsvdangle/dense.hpp"

namespace rsvdangle {

struct SketchConfig {
  Index k = 1;
  Index l = 1;
  int q = 0;
  std::uint64_t seed = 0;

  /// Throws unless 1 <= k <= l <= min(rows, cols) and q >= 0.
  void validate(Index rows, Index cols) const;
};

struct RsvdOutput {
  SvdFactors factors;  // width l: U_hat (m x l), sigma_hat, V_hat (n x l)
  int q_used = 0;
  std::uint64_t seed = 0;
};

/// Randomized SVD with q stabilized power iterations:
///   X0 = ortho(A Omega),  Xi = ortho(A ortho(A^T X_{i-1})),
///   [U~, S, V] = svd(A^T X_q),  U = X_q U~.
/// Omega = gaussian_sketch(cols, l, seed).
[[nodiscard]] RsvdOutput rsvd(const DenseMatrix& a, const SketchConfig& cfg);

/// Same recursion with a caller-supplied n x l sketch (cfg.seed is only
/// recorded).
[[nodiscard]] RsvdOutput rsvd(const DenseMatrix& a, const SketchConfig& cfg,
                              const DenseMatrix& omega);

/// Orthonormal basis of range(basis)^perp, rows x (rows - cols).
[[nodiscard]] DenseMatrix orthogonal_complement(const DenseMatrix& basis);

}  // namespace rsvdangle

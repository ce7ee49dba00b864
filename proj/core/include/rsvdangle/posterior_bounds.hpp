#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rsvdangle/bounds.hpp"
#include "rsvdangle/dense.hpp"
#include "rsvdangle/rsvd.hpp"

namespace rsvdangle {

/// Singular values of (I - B B^T) A (left) or A (I - B B^T) (right).
[[nodiscard]] Spectrum residual_spectrum(const DenseMatrix& a, const DenseMatrix& basis,
                                         Side side);

/// Residual-spectrum bound at ascending position i (1-based):
///   min(s_{k-i+1}(res) / s_k, s_1(res) / s_i).
/// Throws "target rank exceeds numerical rank" when s_k = 0.
[[nodiscard]] BoundReport posterior_residual_bound(const Spectrum& residual,
                                                   const Spectrum& spectrum, Index k, Side side);

enum class NormMethod { exact, power };

/// Block residual norms of a rank-l approximation A_hat = U S V^T:
///   X  = (A - A_hat) V       ([E31, E32] in the completed bases)
///   E32 = (A - A_hat) V(:, k+1:l)
///   E33 = A - A V V^T
struct ResidualNorms {
  double e31_e32_spectral = 0.0;
  double e31_e32_frobenius = 0.0;
  double e32_spectral = 0.0;
  double e33_spectral = 0.0;
};

struct SpectralGaps {
  double gamma1 = 0.0;      // (s_k^2 - shat_{k+1}^2) / s_k
  double gamma2 = 0.0;      // (s_k^2 - shat_{k+1}^2) / shat_{k+1}
  double big_gamma1 = 0.0;  // (s_k^2 - ||E33||^2) / s_k
  double big_gamma2 = 0.0;  // (s_k^2 - ||E33||^2) / ||E33||
};

struct ResidualStats {
  ResidualNorms norms;
  double sigma_hat_k_plus_1 = 0.0;
  double sigma_k = 0.0;               // set by attach_gaps
  std::optional<SpectralGaps> gaps;   // present iff s_k > shat_{k+1} and s_k > ||E33||
  NormMethod method = NormMethod::exact;
};

/// Norms for target rank k < l. The power path runs `power_iters` iterations
/// of spectral_norm_power seeded with `seed` on each block (never above the
/// exact value).
[[nodiscard]] ResidualStats residual_blocks(const DenseMatrix& a, const RsvdOutput& out, Index k,
                                            NormMethod method = NormMethod::exact,
                                            int power_iters = 50, std::uint64_t seed = 0);

/// Copy of stats with sigma_k recorded and gaps evaluated when they exist.
[[nodiscard]] ResidualStats attach_gaps(ResidualStats stats, double sigma_k);

/// Gap bounds for both sides given the spectrum the caller trusts (its
/// first k values are used). Returns, per side (left then right):
///   posterior_gap_l            X / G           (G = Gamma1 left, Gamma2 right)
///   posterior_gap_l_anglewise  (s_k / s_j) X / G at ascending position j
///   posterior_gap_k            X / Gamma1 * sqrt(1 + ||E32||^2/gamma2^2)          (left)
///                              X / Gamma1 * sqrt(||E32||^2/gamma1^2 + ||E33||^2/s_k^2) (right)
///   posterior_gap_k_anglewise  the same with ||E32|| scaled by s_k / s_j
/// Norm-type reports repeat the norm bound at every index. Throws
/// "gap assumption violated" when gaps are absent.
[[nodiscard]] std::vector<BoundReport> posterior_gap_bounds(const ResidualStats& stats,
                                                            const Spectrum& spectrum, Index k);

}  // namespace rsvdangle

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "rsvdangle/bounds.hpp"
#include "rsvdangle/dense.hpp"

namespace rsvdangle {

enum class Eps2Basis {
  tail_count,  // eps2 = c2 * sqrt(l / (r - k))
  tail_spread, // eps2 = c2 * sqrt(l / eta)
};

/// Distortion constants of the space-agnostic bounds:
///   eps1 = c1 * sqrt(k / l),  eps2 = c2 * sqrt(l / (r - k))  (or l / eta).
/// Explicit eps1 / eps2 override the formulas.
struct DistortionParams {
  double c1 = 1.0;
  double c2 = 1.0;
  Eps2Basis eps2_basis = Eps2Basis::tail_count;
  std::optional<double> eps1;
  std::optional<double> eps2;

  static DistortionParams upper_default() { return {}; }
  static DistortionParams lower_default() {
    DistortionParams dp;
    dp.c1 = 2.0;
    dp.c2 = 2.0;
    return dp;
  }
};

struct Distortion {
  double eps1 = 0.0;
  double eps2 = 0.0;
};

/// Resolves eps1, eps2 for a spectrum and (k, l, q, side). Throws if either
/// is not positive and finite.
[[nodiscard]] Distortion resolve_distortion(const Spectrum& spectrum, Index k, double l, int q,
                                            Side side, const DistortionParams& dp);

/// Power applied to singular values: 4q + 2 on the left, 4q + 4 on the right.
[[nodiscard]] double side_exponent(int q, Side side);

/// Tail spread (sum_{j>k} s_j^e)^2 / sum_{j>k} s_j^{2e} with e = 4q + 2,
/// evaluated in the log domain. Throws "empty tail".
[[nodiscard]] double eta(const Spectrum& spectrum, Index k, int q);
[[nodiscard]] double eta_exponent(const Spectrum& spectrum, Index k, double exponent);

/// (1 + (1 - eps1)/(1 + eps2) * l * s_j^e / sum_{j>k} s_j^e)^{-1/2} at
/// ascending position j. Requires k < l < r and eps1 < 1.
[[nodiscard]] BoundReport space_agnostic_upper(const Spectrum& spectrum, Index k, Index l, int q,
                                               Side side,
                                               const DistortionParams& dp = {});

/// Same form with (1 + eps1)/(1 - eps2). Requires eps2 < 1.
[[nodiscard]] BoundReport space_agnostic_lower(
    const Spectrum& spectrum, Index k, Index l, int q, Side side,
    const DistortionParams& dp = DistortionParams::lower_default());

/// (1 + s_j^e / (s_{k+1}^e ||omega2 omega1^+||^2))^{-1/2} where omega1 = V_k^T Omega
/// (k x l) and omega2 = V_{r\k}^T Omega.
[[nodiscard]] BoundReport saibaba_upper(const Spectrum& spectrum, const DenseMatrix& omega1,
                                        const DenseMatrix& omega2, Index k, int q, Side side);

/// ||omega2 omega1^+||_2, throwing if omega1 is rank deficient.
[[nodiscard]] double sketch_coupling_norm(const DenseMatrix& omega1, const DenseMatrix& omega2);

/// High-probability bound on ||omega2 omega1^+||_2:
///   e sqrt(l)/(l-k+1) (2/delta)^{1/(l-k+1)} (sqrt(n-k) + sqrt(l) + sqrt(2 log(2/delta))).
[[nodiscard]] double saibaba_probabilistic_envelope(Index k, Index l, Index n, double delta);

namespace detail {

// Real-valued l and exponent; used by the balance study and the exponent
// identity tests.
std::vector<double> space_agnostic_values(const Spectrum& spectrum, Index k, double l,
                                          double exponent, double factor);

double log_power_sum(std::span<const double> values, double exponent);

}  // namespace detail

}  // namespace rsvdangle

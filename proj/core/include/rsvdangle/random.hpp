#pragma once

#include <cstdint>

#include "rsvdangle/dense.hpp"

namespace rsvdangle {

/// Counter-based 64-bit generator.
///
/// A generator is a 64-bit key; draw number c is mix(key + c * golden_gamma)
/// with mix the SplitMix64 finalizer. Draws are therefore addressable by
/// (key, counter) alone, independent of call order and thread scheduling.
/// split(stream) derives an independent child key, so a tree of
/// (seed, stream, sub-stream, ...) identifies every random quantity.
///
/// Gaussian draws use Box-Muller on the uniform pair (2p, 2p + 1): even
/// indices take the cosine branch and odd indices the sine branch.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) noexcept;

  [[nodiscard]] CounterRng split(std::uint64_t stream) const noexcept;
  [[nodiscard]] std::uint64_t key() const noexcept { return key_; }

  [[nodiscard]] std::uint64_t bits(std::uint64_t counter) const noexcept;
  /// Uniform on (0, 1], 53-bit resolution.
  [[nodiscard]] double uniform(std::uint64_t counter) const noexcept;
  /// Standard normal draw number `index`.
  [[nodiscard]] double normal(std::uint64_t index) const noexcept;

 private:
  struct FromKey {};
  CounterRng(FromKey, std::uint64_t key) noexcept : key_(key) {}

  std::uint64_t key_;
};

// Stream identifiers. Distinct consumers of one user seed never share draws.
namespace stream {
inline constexpr std::uint64_t kSketch = 1;
inline constexpr std::uint64_t kLeftFactor = 2;
inline constexpr std::uint64_t kRightFactor = 3;
inline constexpr std::uint64_t kSparseVectors = 4;
inline constexpr std::uint64_t kEstimator = 5;
inline constexpr std::uint64_t kPowerMethod = 6;
inline constexpr std::uint64_t kSampling = 7;
}  // namespace stream

/// rows x cols matrix of i.i.d. N(0, variance) with entry (i, j) taken from
/// normal draw j * rows + i of `rng`.
[[nodiscard]] Eigen::MatrixXd gaussian_matrix(const CounterRng& rng, Index rows, Index cols,
                                              double variance = 1.0);

/// Sketching matrix Omega (n x l) with entries N(0, 1/l), so E[Omega Omega^T] = I_n.
/// Deterministic in (n, l, seed). Requires n >= l >= 1.
[[nodiscard]] DenseMatrix gaussian_sketch(Index n, Index l, std::uint64_t seed);

}  // namespace rsvdangle

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "rsvdangle/dense.hpp"

namespace rsvdangle {

struct PlantedMatrix {
  DenseMatrix a;
  SvdFactors factors;     // planted (exact) or svd_full(a) when factors_computed
  Spectrum spectrum;      // singular values the experiments treat as true
  bool factors_computed = false;
  std::string descriptor;
};

/// 1 for i <= r1, then 1 / sqrt(i - r1 + 1).
[[nodiscard]] Spectrum spectrum_slower(Index r, Index r1);
/// 1 for i <= r1, then max(0.99^(i - r1), 1e-3).
[[nodiscard]] Spectrum spectrum_faster(Index r, Index r1);
/// k copies of `gap` followed by beta * k ones.
[[nodiscard]] Spectrum gen_step_spectrum(Index k, double beta, double gap);

/// A = U diag(s) V^T with U = ortho(G_m), V = ortho(G_n) for Gaussian G_m
/// (m x r) and G_n (n x r), r = spectrum.declared_rank(). G_m uses stream
/// kLeftFactor and G_n kRightFactor of `seed`.
[[nodiscard]] PlantedMatrix gen_gaussian_decay(Index m, Index n, const Spectrum& spectrum,
                                               std::uint64_t seed);

struct SnnParams {
  Index m = 500;
  Index n = 500;
  Index r1 = 20;
  double a = 1.0;
  double density = 0.05;
  Index terms = 0;  // 0 means min(m, n)
};

/// A = sum_{i <= r1} (a/i) x_i y_i^T + sum_{r1 < i <= terms} (1/i) x_i y_i^T with
/// sparse non-negative x_i, y_i: each entry is nonzero with probability
/// `density`, nonzeros uniform on (0, 1]. Factors are svd_full(A) and the
/// spectrum is its numerical-rank truncation.
[[nodiscard]] PlantedMatrix gen_snn(const SnnParams& params, std::uint64_t seed);

/// Relative cutoff used when a computed spectrum stands in for the true one.
[[nodiscard]] double numerical_rank_tolerance(Index m, Index n);

/// Computed factors and numerical spectrum for a matrix without planted ones.
[[nodiscard]] PlantedMatrix from_data(DenseMatrix a, std::string descriptor);

/// n_samples rows drawn without replacement from an IDX3 image file, each
/// image flattened row-major and scaled by 1/255. Throws "malformed IDX file".
[[nodiscard]] DenseMatrix load_mnist(const std::filesystem::path& images, Index n_samples,
                                     std::uint64_t seed);

}  // namespace rsvdangle

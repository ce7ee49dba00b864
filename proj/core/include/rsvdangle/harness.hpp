#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "rsvdangle/matgen.hpp"
#include "rsvdangle/posterior_bounds.hpp"
#include "rsvdangle/prior_bounds.hpp"
#include "rsvdangle/report_io.hpp"

namespace rsvdangle {

/// Extends sigma_hat (length l) to length r by repeating its last value.
[[nodiscard]] Spectrum pad_spectrum(const Spectrum& approx, Index r);

/// Which matrix an experiment runs on.
///   gaussian_slower / gaussian_faster: m x n, rank r, r1 flat values
///   step: r = (1 + beta) k square matrix with gap on the top k values
///   snn: SnnParams
///   mnist: n_samples rows of the IDX3 file at `path`
///   file: Matrix Market array file at `path`
struct MatrixSpec {
  std::string name;
  std::string generator;
  Index m = 500;
  Index n = 500;
  Index r = 500;
  Index r1 = 20;
  double a = 1.0;
  double density = 0.05;
  Index terms = 0;
  Index step_k = 10;
  double beta = 32.0;
  double gap = 1.01;
  std::string path;
  Index n_samples = 800;
  std::uint64_t seed = 0;
};

/// Loaded data (mnist, file) has no planted factors.
[[nodiscard]] bool is_loaded_data(const MatrixSpec& spec);
[[nodiscard]] PlantedMatrix make_matrix(const MatrixSpec& spec);

struct GridPoint {
  Index k = 0;
  Index l = 0;
  int q = 0;
};

struct ExperimentConfig {
  std::vector<MatrixSpec> matrices;
  std::vector<GridPoint> grid;
  std::vector<Side> sides{Side::left, Side::right};
  int trials = 3;            // estimator trials N
  int seeds = 1;             // rsvd seeds base_seed, ..., base_seed + seeds - 1
  std::uint64_t base_seed = 0;
  DistortionParams upper = DistortionParams::upper_default();
  DistortionParams lower = DistortionParams::lower_default();
  NormMethod norm_method = NormMethod::exact;
  std::string output_dir = "results";
  int jobs = 1;

  /// Throws unless the grid is nonempty and every k < l <= min(m, n).
  void validate_against(const std::vector<PlantedMatrix>& built) const;
};

/// Every quantity kind the harness emits, in CSV order.
[[nodiscard]] const std::vector<std::string>& experiment_kinds();

/// Rows for one (matrix, grid point, seed): true sines (true_sine against
/// U_hat_l / V_hat_l and true_sine_k against the leading k columns), then
/// every bound and estimate against the true and the padded spectrum.
[[nodiscard]] ResultTable run_single(const PlantedMatrix& matrix, const MatrixSpec& spec,
                                     const GridPoint& point, std::uint64_t seed,
                                     const ExperimentConfig& cfg);

/// All (matrix, grid point, seed) runs on cfg.jobs threads, merged in
/// (matrix, side, k, l, q, seed, i, kind, source) order.
[[nodiscard]] ResultTable run_experiment(const ExperimentConfig& cfg);
/// Same with matrices already built (index-aligned with cfg.matrices).
[[nodiscard]] ResultTable run_experiment(const ExperimentConfig& cfg,
                                         const std::vector<PlantedMatrix>& built);

/// Writes results.csv and one SVG per (matrix, side, k, l, q) into dir.
void emit_experiment(const ExperimentConfig& cfg, const ResultTable& table,
                     const std::filesystem::path& dir);

/// Runs fn(0), ..., fn(count - 1) on up to `jobs` threads. Exceptions are
/// rethrown (the first by index) after all tasks finish.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace rsvdangle

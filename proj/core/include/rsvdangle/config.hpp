#pragma once

#include <filesystem>
#include <string>

#include "rsvdangle/balance.hpp"
#include "rsvdangle/harness.hpp"

namespace rsvdangle {

inline constexpr int kConfigSchemaVersion = 1;

/// JSON experiment description:
///   {
///     "schema_version": 1,
///     "matrices": [{"name": "slower", "generator": "gaussian_slower",
///                   "m": 500, "n": 500, "r": 500, "r1": 20, "seed": 7}],
///     "grid": {"k": [50], "l": [80, 200], "q": [0, 1]},
///     "sides": ["left", "right"],
///     "trials": 3, "seeds": 10, "base_seed": 0,
///     "upper": {"c1": 1, "c2": 1, "eps2_basis": "tail_count"},
///     "lower": {"c1": 2, "c2": 2},
///     "norm_method": "exact", "jobs": 1, "output_dir": "results"
///   }
/// Unknown keys are rejected. "grid" may also be a list of {"k","l","q"}.
[[nodiscard]] ExperimentConfig parse_experiment_config(const std::string& json_text);
[[nodiscard]] ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// {"schema_version": 1, "k": 10, "alpha": 16, "beta": 32, "gamma": 1.05,
///  "gap": 1.01, "trials": 5, "seed": 0}
[[nodiscard]] BalanceConfig parse_balance_config(const std::string& json_text);
[[nodiscard]] BalanceConfig load_balance_config(const std::filesystem::path& path);

}  // namespace rsvdangle

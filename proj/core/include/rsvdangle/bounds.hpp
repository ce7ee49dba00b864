#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace rsvdangle {

enum class Side { left, right };
enum class SpectrumSource { true_spectrum, padded };

enum class BoundKind {
  space_agnostic_upper,
  space_agnostic_lower,
  saibaba_upper,
  posterior_residual,
  posterior_gap_l,
  posterior_gap_l_anglewise,
  posterior_gap_k,
  posterior_gap_k_anglewise,
  estimate,
};

[[nodiscard]] std::string_view to_string(Side side);
[[nodiscard]] std::string_view to_string(SpectrumSource source);
[[nodiscard]] std::string_view to_string(BoundKind kind);

Side parse_side(std::string_view text);

/// Per-index bound (or estimate) on the canonical-angle sines, in the same
/// ascending order as AngleVector. `values` are clamped to [0, 1]; `raw`
/// keeps the unclamped numbers.
struct BoundReport {
  BoundKind kind = BoundKind::space_agnostic_upper;
  Side side = Side::left;
  SpectrumSource source = SpectrumSource::true_spectrum;
  std::vector<double> values;
  std::vector<double> raw;
  std::map<std::string, double> params;

  /// True when some raw value exceeded 1 (the bound says nothing there).
  [[nodiscard]] bool trivial() const;
};

/// Builds a report from raw values, clamping into [0, 1].
[[nodiscard]] BoundReport make_report(BoundKind kind, Side side, std::vector<double> raw);

}  // namespace rsvdangle

#include "rsvdangle/bounds.hpp"

#include <algorithm>
#include <string>

#include "rsvdangle/error.hpp"

namespace rsvdangle {

std::string_view to_string(Side side) { return side == Side::left ? "left" : "right"; }

std::string_view to_string(SpectrumSource source) {
  return source == SpectrumSource::true_spectrum ? "true" : "padded";
}

std::string_view to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::space_agnostic_upper: return "space_agnostic_upper";
    case BoundKind::space_agnostic_lower: return "space_agnostic_lower";
    case BoundKind::saibaba_upper: return "saibaba_upper";
    case BoundKind::posterior_residual: return "posterior_residual";
    case BoundKind::posterior_gap_l: return "posterior_gap_l";
    case BoundKind::posterior_gap_l_anglewise: return "posterior_gap_l_anglewise";
    case BoundKind::posterior_gap_k: return "posterior_gap_k";
    case BoundKind::posterior_gap_k_anglewise: return "posterior_gap_k_anglewise";
    case BoundKind::estimate: return "estimate";
  }
  return "unknown";
}

Side parse_side(std::string_view text) {
  if (text == "left") return Side::left;
  if (text == "right") return Side::right;
  throw Error("unknown side '" + std::string(text) + "' (expected left or right)");
}

bool BoundReport::trivial() const {
  return std::any_of(raw.begin(), raw.end(), [](double x) { return x > 1.0; });
}

BoundReport make_report(BoundKind kind, Side side, std::vector<double> raw) {
  BoundReport report;
  report.kind = kind;
  report.side = side;
  report.values.reserve(raw.size());
  for (double x : raw) {
    report.values.push_back(std::clamp(x, 0.0, 1.0));
  }
  report.raw = std::move(raw);
  return report;
}

}  // namespace rsvdangle

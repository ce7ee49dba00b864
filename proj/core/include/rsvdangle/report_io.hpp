#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "rsvdangle/bounds.hpp"
#include "rsvdangle/dense.hpp"

namespace rsvdangle {

enum class RowStatus { ok, gap_violated, tail_short, trivial_bound, invalid_params, skipped };

[[nodiscard]] std::string_view to_string(RowStatus status);

/// One CSV line: matrix,side,k,l,q,seed,i,kind,spectrum_source,value,status.
/// `i` is the 1-based ascending-angle position. Missing values are NaN and
/// print as "nan".
struct ResultRow {
  std::string matrix;
  Side side = Side::left;
  Index k = 0;
  Index l = 0;
  int q = 0;
  std::uint64_t seed = 0;
  Index i = 0;
  std::string kind;
  SpectrumSource source = SpectrumSource::true_spectrum;
  double value = 0.0;
  RowStatus status = RowStatus::ok;
};

using ResultTable = std::vector<ResultRow>;

inline constexpr const char* kCsvHeader =
    "matrix,side,k,l,q,seed,i,kind,spectrum_source,value,status";

/// %.17g, with "nan" / "inf" / "-inf" spelled out.
[[nodiscard]] std::string format_value(double x);

void write_csv(std::ostream& out, const ResultTable& table);
void emit_csv(const ResultTable& table, const std::filesystem::path& path);

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#000000";
  bool dashed = false;
};

struct Panel {
  std::string title;
  std::string x_label = "i";
  std::string y_label = "sine";
  bool log_y = true;
  std::vector<Series> series;
};

/// Standalone SVG line chart with a legend. Non-positive values on a log
/// axis are drawn at the axis floor. Output bytes depend only on the panel.
void write_svg(std::ostream& out, const Panel& panel);
void emit_svg(const Panel& panel, const std::filesystem::path& path);

/// Panel of one (matrix, side, k, l, q): per (kind, source) the mean over
/// seeds of rows with a finite value; padded-spectrum curves dashed.
[[nodiscard]] Panel experiment_panel(const ResultTable& table, const std::string& matrix,
                                     Side side, Index k, Index l, int q);

/// Escapes &, <, >, " and ' for XML text and attributes.
[[nodiscard]] std::string xml_escape(std::string_view text);

}  // namespace rsvdangle

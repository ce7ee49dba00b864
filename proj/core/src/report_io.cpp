#include "rsvdangle/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>

#include "rsvdangle/harness.hpp"

namespace rsvdangle {
namespace {

std::string fmt(const char* format, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, x);
  return buf;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write " + path.string());
  }
  return out;
}

const char* kind_color(std::string_view kind) {
  static const std::map<std::string_view, const char*> colors{
      {"true_sine", "#000000"},
      {"true_sine_k", "#555555"},
      {"space_agnostic_upper", "#d62728"},
      {"space_agnostic_lower", "#ff9896"},
      {"saibaba_upper", "#c800c8"},
      {"posterior_residual", "#2ca02c"},
      {"posterior_gap_l", "#17becf"},
      {"posterior_gap_l_anglewise", "#1f77b4"},
      {"posterior_gap_k", "#bcbd22"},
      {"posterior_gap_k_anglewise", "#8c564b"},
      {"estimate", "#0000ff"},
      {"estimate_min", "#9999ff"},
      {"estimate_max", "#9999ff"},
  };
  const auto it = colors.find(kind);
  return it == colors.end() ? "#7f7f7f" : it->second;
}

}  // namespace

std::string_view to_string(RowStatus status) {
  switch (status) {
    case RowStatus::ok: return "ok";
    case RowStatus::gap_violated: return "gap_violated";
    case RowStatus::tail_short: return "tail_short";
    case RowStatus::trivial_bound: return "trivial_bound";
    case RowStatus::invalid_params: return "invalid_params";
    case RowStatus::skipped: return "skipped";
  }
  return "unknown";
}

std::string format_value(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt("%.17g", x);
}

void write_csv(std::ostream& out, const ResultTable& table) {
  out << kCsvHeader << '\n';
  for (const auto& r : table) {
    out << r.matrix << ',' << to_string(r.side) << ',' << r.k << ',' << r.l << ',' << r.q << ','
        << r.seed << ',' << r.i << ',' << r.kind << ',' << to_string(r.source) << ','
        << format_value(r.value) << ',' << to_string(r.status) << '\n';
  }
}

void emit_csv(const ResultTable& table, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  write_csv(out, table);
  if (!out) throw Error("write failed: " + path.string());
}

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

void write_svg(std::ostream& out, const Panel& panel) {
  constexpr double kWidth = 760, kHeight = 480;
  constexpr double kLeft = 80, kRight = 230, kTop = 40, kBottom = 50;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const auto& s : panel.series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x_lo = std::min(x_lo, s.x[i]);
      x_hi = std::max(x_hi, s.x[i]);
      if (!panel.log_y || s.y[i] > 0.0) {
        y_lo = std::min(y_lo, s.y[i]);
        y_hi = std::max(y_hi, s.y[i]);
      }
    }
  }
  if (!std::isfinite(x_lo)) { x_lo = 0; x_hi = 1; }
  if (x_hi <= x_lo) { x_lo -= 0.5; x_hi += 0.5; }
  double t_lo, t_hi;  // axis range in transformed units
  if (panel.log_y) {
    if (!std::isfinite(y_lo)) { y_lo = 0.1; y_hi = 1.0; }
    t_lo = std::floor(std::log10(y_lo));
    t_hi = std::ceil(std::log10(y_hi));
    if (t_hi <= t_lo) t_hi = t_lo + 1;
  } else {
    if (!std::isfinite(y_lo)) { y_lo = 0; y_hi = 1; }
    if (y_hi <= y_lo) { y_lo -= 0.5; y_hi += 0.5; }
    t_lo = y_lo;
    t_hi = y_hi;
  }
  auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double y) {
    double t = panel.log_y ? (y > 0.0 ? std::log10(y) : t_lo) : y;
    t = std::clamp(t, t_lo, t_hi);
    return kTop + (t_hi - t) / (t_hi - t_lo) * plot_h;
  };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"#ffffff\"/>\n";
  out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"24\" font-family=\"sans-serif\" "
      << "font-size=\"14\" text-anchor=\"middle\">" << xml_escape(panel.title) << "</text>\n";
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\""
      << plot_h << "\" fill=\"none\" stroke=\"#000000\"/>\n";

  // y ticks
  if (panel.log_y) {
    const int decades = static_cast<int>(t_hi - t_lo);
    const int step = std::max(1, (decades + 7) / 8);
    for (int e = static_cast<int>(t_lo); e <= static_cast<int>(t_hi); e += step) {
      const double y = py(std::pow(10.0, e));
      out << "<line x1=\"" << kLeft - 4 << "\" y1=\"" << fmt("%.6g", y) << "\" x2=\"" << kLeft
          << "\" y2=\"" << fmt("%.6g", y) << "\" stroke=\"#000000\"/>\n";
      out << "<text x=\"" << kLeft - 6 << "\" y=\"" << fmt("%.6g", y + 4)
          << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">1e" << e
          << "</text>\n";
    }
  } else {
    for (int t = 0; t <= 4; ++t) {
      const double v = t_lo + (t_hi - t_lo) * t / 4.0;
      const double y = py(v);
      out << "<line x1=\"" << kLeft - 4 << "\" y1=\"" << fmt("%.6g", y) << "\" x2=\"" << kLeft
          << "\" y2=\"" << fmt("%.6g", y) << "\" stroke=\"#000000\"/>\n";
      out << "<text x=\"" << kLeft - 6 << "\" y=\"" << fmt("%.6g", y + 4)
          << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
          << fmt("%.3g", v) << "</text>\n";
    }
  }
  // x ticks
  for (int t = 0; t <= 5; ++t) {
    const double v = x_lo + (x_hi - x_lo) * t / 5.0;
    const double x = px(v);
    out << "<line x1=\"" << fmt("%.6g", x) << "\" y1=\"" << kTop + plot_h << "\" x2=\""
        << fmt("%.6g", x) << "\" y2=\"" << kTop + plot_h + 4 << "\" stroke=\"#000000\"/>\n";
    out << "<text x=\"" << fmt("%.6g", x) << "\" y=\"" << kTop + plot_h + 18
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
        << fmt("%.4g", v) << "</text>\n";
  }
  out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 10
      << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">"
      << xml_escape(panel.x_label) << "</text>\n";
  out << "<text x=\"18\" y=\"" << kTop + plot_h / 2 << "\" font-family=\"sans-serif\" "
      << "font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << kTop + plot_h / 2
      << ")\">" << xml_escape(panel.y_label) << "</text>\n";

  double legend_y = kTop + 8;
  const double legend_x = kLeft + plot_w + 12;
  for (const auto& s : panel.series) {
    const std::string dash = s.dashed ? " stroke-dasharray=\"6 3\"" : "";
    out << "<polyline fill=\"none\" stroke=\"" << xml_escape(s.color) << "\" stroke-width=\"1.5\""
        << dash << " points=\"";
    bool first = true;
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      out << (first ? "" : " ") << fmt("%.6g", px(s.x[i])) << ',' << fmt("%.6g", py(s.y[i]));
      first = false;
    }
    out << "\"/>\n";
    out << "<line x1=\"" << legend_x << "\" y1=\"" << legend_y << "\" x2=\"" << legend_x + 24
        << "\" y2=\"" << legend_y << "\" stroke=\"" << xml_escape(s.color)
        << "\" stroke-width=\"1.5\"" << dash << "/>\n";
    out << "<text x=\"" << legend_x + 30 << "\" y=\"" << legend_y + 4
        << "\" font-family=\"sans-serif\" font-size=\"10\">" << xml_escape(s.label)
        << "</text>\n";
    legend_y += 15;
  }
  out << "</svg>\n";
}

void emit_svg(const Panel& panel, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  write_svg(out, panel);
  if (!out) throw Error("write failed: " + path.string());
}

Panel experiment_panel(const ResultTable& table, const std::string& matrix, Side side, Index k,
                       Index l, int q) {
  Panel panel;
  panel.title = matrix + " " + std::string(to_string(side)) + " k=" + std::to_string(k) +
                " l=" + std::to_string(l) + " q=" + std::to_string(q);
  panel.x_label = "index i";
  panel.y_label = side == Side::left ? "sin angle_i(U_k, U_hat)" : "sin angle_i(V_k, V_hat)";
  for (const auto& kind : experiment_kinds()) {
    for (const SpectrumSource source : {SpectrumSource::true_spectrum, SpectrumSource::padded}) {
      std::map<Index, std::pair<double, int>> acc;
      for (const auto& r : table) {
        if (r.matrix != matrix || r.side != side || r.k != k || r.l != l || r.q != q ||
            r.kind != kind || r.source != source || !std::isfinite(r.value)) {
          continue;
        }
        auto& [sum, count] = acc[r.i];
        sum += r.value;
        ++count;
      }
      if (acc.empty()) continue;
      Series s;
      s.label = kind + (source == SpectrumSource::padded ? " (padded)" : "");
      s.color = kind_color(kind);
      s.dashed = source == SpectrumSource::padded;
      for (const auto& [i, sc] : acc) {
        s.x.push_back(static_cast<double>(i));
        s.y.push_back(sc.first / sc.second);
      }
      panel.series.push_back(std::move(s));
    }
  }
  return panel;
}

}  // namespace rsvdangle

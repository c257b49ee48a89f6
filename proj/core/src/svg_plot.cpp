#include "edgecons/svg_plot.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

#include "edgecons/errors.hpp"

namespace edgecons {

namespace {

constexpr double kWidth = 800.0;
constexpr double kPanelHeight = 220.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 30.0;
constexpr double kGap = 40.0;
constexpr double kLogFloor = 1e-16;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

struct Series {
  std::string css_class;
  std::string color;
  std::vector<double> values;
  bool dashed = false;
};

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  // Degenerate ranges are widened so every point maps inside the panel.
  void finalize() {
    if (!(hi > lo)) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

class Panel {
 public:
  Panel(double top, std::string title, bool log_scale)
      : top_(top), title_(std::move(title)), log_(log_scale) {}

  void add(Series s) { series_.push_back(std::move(s)); }

  void render(std::ostringstream& svg, const std::vector<double>& t) const {
    Range tr;
    for (double v : t) tr.include(v);
    tr.finalize();
    Range yr;
    for (const auto& s : series_) {
      for (double v : s.values) yr.include(transform(v));
    }
    yr.finalize();

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    auto px = [&](double v) { return kMarginLeft + (v - tr.lo) / (tr.hi - tr.lo) * plot_w; };
    auto py = [&](double v) {
      return top_ + kPanelHeight - (transform(v) - yr.lo) / (yr.hi - yr.lo) * kPanelHeight;
    };

    svg << "<g class=\"panel\">\n";
    svg << "<rect x=\"" << kMarginLeft << "\" y=\"" << top_ << "\" width=\"" << plot_w
        << "\" height=\"" << kPanelHeight << "\" fill=\"none\" stroke=\"#444\"/>\n";
    svg << "<text x=\"" << kMarginLeft << "\" y=\"" << top_ - 8 << "\" font-size=\"13\">" << title_
        << "</text>\n";
    svg << "<text x=\"" << kMarginLeft - 6 << "\" y=\"" << top_ + 10
        << "\" font-size=\"10\" text-anchor=\"end\">" << label(yr.hi) << "</text>\n";
    svg << "<text x=\"" << kMarginLeft - 6 << "\" y=\"" << top_ + kPanelHeight
        << "\" font-size=\"10\" text-anchor=\"end\">" << label(yr.lo) << "</text>\n";
    svg << "<text x=\"" << kWidth - kMarginRight << "\" y=\"" << top_ + kPanelHeight + 14
        << "\" font-size=\"10\" text-anchor=\"end\">t = " << tr.hi << " s</text>\n";

    for (const auto& s : series_) {
      svg << "<polyline class=\"" << s.css_class << "\" fill=\"none\" stroke=\"" << s.color
          << "\" stroke-width=\"1\"" << (s.dashed ? " stroke-dasharray=\"6,4\"" : "")
          << " points=\"";
      for (std::size_t i = 0; i < s.values.size(); ++i) {
        svg << (i ? " " : "") << px(t[i]) << "," << py(s.values[i]);
      }
      svg << "\"/>\n";
      if (s.values.size() == 1) {
        svg << "<circle class=\"marker\" cx=\"" << px(t[0]) << "\" cy=\"" << py(s.values[0])
            << "\" r=\"2\" fill=\"" << s.color << "\"/>\n";
      }
    }
    svg << "</g>\n";
  }

 private:
  double transform(double v) const { return log_ ? std::log10(std::max(v, kLogFloor)) : v; }

  std::string label(double v) const {
    std::ostringstream s;
    s.precision(3);
    if (log_) {
      s << "1e" << std::lround(v);
    } else {
      s << v;
    }
    return s.str();
  }

  double top_;
  std::string title_;
  bool log_;
  std::vector<Series> series_;
};

std::vector<double> column_values(const CsvTable& table, std::size_t col) {
  std::vector<double> out;
  out.reserve(table.rows.size());
  for (const auto& row : table.rows) out.push_back(row[col]);
  return out;
}

}  // namespace

std::string render_trajectory_svg(const CsvTable& table) {
  if (table.rows.empty()) throw Error(ErrorCode::InvalidArgument, "no samples");
  const auto t_col = table.column("t");
  const auto norm_col = table.column("z_T_norm");
  if (!t_col || !norm_col) {
    throw Error(ErrorCode::InvalidArgument, "CSV needs 't' and 'z_T_norm' columns");
  }
  const std::vector<double> t = column_values(table, *t_col);

  Panel positions(kMarginTop, "positions x", false);
  Panel velocities(kMarginTop + kPanelHeight + kGap, "velocities v", false);
  Panel norm(kMarginTop + 2 * (kPanelHeight + kGap), "|z_T| (log scale)", true);

  for (std::size_t c = 0; c < table.header.size(); ++c) {
    const std::string& name = table.header[c];
    if (name.size() < 2 || (name[0] != 'x' && name[0] != 'v') || !std::isdigit(name[1])) continue;
    const auto underscore = name.find('_');
    const std::size_t dim = underscore == std::string::npos ? 1 : std::stoul(name.substr(underscore + 1));
    Series s{name[0] == 'x' ? "trace position" : "trace velocity",
             kPalette[(dim - 1) % std::size(kPalette)], column_values(table, c)};
    (name[0] == 'x' ? positions : velocities).add(std::move(s));
  }
  norm.add({"norm", "#000000", column_values(table, *norm_col)});
  if (const auto env = table.column("envelope")) {
    norm.add({"envelope", "#d62728", column_values(table, *env), true});
  }

  const double height = kMarginTop + 3 * kPanelHeight + 2 * kGap + 30.0;
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << height << "\" viewBox=\"0 0 " << kWidth << " " << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  positions.render(svg, t);
  velocities.render(svg, t);
  norm.render(svg, t);
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace edgecons

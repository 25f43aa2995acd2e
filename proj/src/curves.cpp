#include "uci/curves.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

#include "uci/errors.hpp"
#include "uci/io.hpp"

namespace uci {
namespace {

constexpr double kWidth = 960.0;
constexpr double kHeight = 720.0;
constexpr double kPanelW = 480.0;
constexpr double kPanelH = 360.0;
constexpr double kMarginLeft = 64.0;
constexpr double kMarginRight = 16.0;
constexpr double kMarginTop = 36.0;
constexpr double kMarginBottom = 48.0;

constexpr std::array<const char*, 6> kPalette = {"#1f77b4", "#d62728", "#2ca02c",
                                                 "#9467bd", "#ff7f0e", "#8c564b"};

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string escape_xml(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

Side curve_side(Method m) { return implied_side(m).value_or(Side::upper); }

void write_panel(std::ostream& os, const CurveSet& set, std::size_t index) {
  const double ox = static_cast<double>(index % 2) * kPanelW;
  const double oy = static_cast<double>(index / 2) * kPanelH;
  const double x0 = ox + kMarginLeft;
  const double x1 = ox + kPanelW - kMarginRight;
  const double y0 = oy + kPanelH - kMarginBottom;
  const double y1 = oy + kMarginTop;

  double n_lo = std::numeric_limits<double>::infinity();
  double n_hi = -n_lo;
  double v_lo = n_lo;
  double v_hi = -n_lo;
  for (const auto& p : set.points) {
    n_lo = std::min(n_lo, static_cast<double>(p.n));
    n_hi = std::max(n_hi, static_cast<double>(p.n));
    v_lo = std::min(v_lo, p.value);
    v_hi = std::max(v_hi, p.value);
  }
  if (set.points.empty()) {
    n_lo = 0.0;
    n_hi = 1.0;
    v_lo = 0.0;
    v_hi = 1.0;
  }
  if (n_hi == n_lo) n_hi = n_lo + 1.0;
  if (v_hi == v_lo) v_hi = v_lo + 1.0;
  const double pad = 0.04 * (v_hi - v_lo);
  v_lo -= pad;
  v_hi += pad;
  auto sx = [&](double n) { return x0 + (n - n_lo) / (n_hi - n_lo) * (x1 - x0); };
  auto sy = [&](double v) { return y0 - (v - v_lo) / (v_hi - v_lo) * (y0 - y1); };

  const char letter = static_cast<char>('A' + index);
  std::string title = set.spec.title;
  if (title.empty()) {
    title = std::string(1, letter) + ": S_n^2 = " + format_double(set.spec.s2) +
            ", delta = " + format_double(set.spec.delta);
  }
  os << "<g id=\"panel-" << letter << "\">\n";
  os << "<text x=\"" << fixed2(ox + kPanelW / 2) << "\" y=\"" << fixed2(oy + 22)
     << "\" text-anchor=\"middle\" font-size=\"14\">" << escape_xml(title) << "</text>\n";
  os << "<rect x=\"" << fixed2(x0) << "\" y=\"" << fixed2(y1) << "\" width=\"" << fixed2(x1 - x0)
     << "\" height=\"" << fixed2(y0 - y1) << "\" fill=\"none\" stroke=\"#000\"/>\n";

  for (int t = 0; t <= 4; ++t) {
    const double fn = n_lo + (n_hi - n_lo) * t / 4.0;
    const double fv = v_lo + (v_hi - v_lo) * t / 4.0;
    os << "<text x=\"" << fixed2(sx(fn)) << "\" y=\"" << fixed2(y0 + 16)
       << "\" text-anchor=\"middle\" font-size=\"10\">" << tick(fn) << "</text>\n";
    os << "<text x=\"" << fixed2(x0 - 4) << "\" y=\"" << fixed2(sy(fv) + 3)
       << "\" text-anchor=\"end\" font-size=\"10\">" << tick(fv) << "</text>\n";
  }
  os << "<text x=\"" << fixed2((x0 + x1) / 2) << "\" y=\"" << fixed2(y0 + 34)
     << "\" text-anchor=\"middle\" font-size=\"11\">n</text>\n";
  os << "<text x=\"" << fixed2(ox + 14) << "\" y=\"" << fixed2((y0 + y1) / 2)
     << "\" text-anchor=\"middle\" font-size=\"11\" transform=\"rotate(-90 " << fixed2(ox + 14)
     << " " << fixed2((y0 + y1) / 2) << ")\">"
     << (set.spec.scale == CurveScale::log ? "log half-width" : "half-width") << "</text>\n";

  std::size_t series = 0;
  for (Method m : set.spec.methods) {
    std::string pts;
    for (const auto& p : set.points) {
      if (p.method != m) continue;
      if (!pts.empty()) pts += ' ';
      pts += fixed2(sx(static_cast<double>(p.n))) + "," + fixed2(sy(p.value));
    }
    if (pts.empty()) continue;
    const char* color = kPalette[series % kPalette.size()];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\""
       << pts << "\"/>\n";
    const double ly = y1 + 14.0 + 14.0 * static_cast<double>(series);
    os << "<line x1=\"" << fixed2(x1 - 150) << "\" y1=\"" << fixed2(ly - 4) << "\" x2=\""
       << fixed2(x1 - 130) << "\" y2=\"" << fixed2(ly - 4) << "\" stroke=\"" << color
       << "\" stroke-width=\"1.5\"/>\n";
    os << "<text x=\"" << fixed2(x1 - 126) << "\" y=\"" << fixed2(ly)
       << "\" font-size=\"10\">" << escape_xml(legend_label(m)) << "</text>\n";
    ++series;
  }
  os << "</g>\n";
}

}  // namespace

std::vector<Method> figure_methods() {
  return {Method::mean_improved_hoeffding_1, Method::mean_improved_hoeffding_2,
          Method::mean_audibert, Method::mean_maurer};
}

std::vector<std::size_t> figure_n_grid() {
  std::vector<std::size_t> out;
  for (std::size_t n = 4; n <= 1000; n += 2) out.push_back(n);
  return out;
}

std::vector<CurveSpec> figure_panels() {
  std::vector<CurveSpec> out;
  for (double s2 : {0.05, 0.25}) {
    for (double delta : {0.01, 0.1}) {
      CurveSpec spec;
      spec.methods = figure_methods();
      spec.n_values = figure_n_grid();
      spec.s2 = s2;
      spec.delta = delta;
      out.push_back(std::move(spec));
    }
  }
  return out;
}

double curve_half_width(Method method, std::size_t n, double s2, double delta) {
  CiInputs in;
  in.n = n;
  in.s2 = s2;
  in.w = s2;
  in.xbar = 0.5;
  in.u = 0.5;
  return compute_ci(method, curve_side(method), in, delta).half_width;
}

CurveSet compute_curves(const CurveSpec& spec) {
  CurveSet set;
  set.spec = spec;
  for (Method m : spec.methods) {
    for (std::size_t n : spec.n_values) {
      try {
        const double hw = curve_half_width(m, n, spec.s2, spec.delta);
        const double v = spec.scale == CurveScale::log ? std::log(hw) : hw;
        set.points.push_back({n, m, v});
      } catch (const PreconditionError& e) {
        set.gaps.push_back({n, m, e.what()});
      }
    }
  }
  return set;
}

std::string_view legend_label(Method method) {
  switch (method) {
    case Method::mean_improved_hoeffding_1:
      return "Improved Hoeffding 1";
    case Method::mean_improved_hoeffding_2:
      return "Improved Hoeffding 2";
    case Method::mean_audibert:
      return "Audibert";
    case Method::mean_maurer:
      return "Maurer";
    default:
      return to_string(method);
  }
}

std::string_view scale_column(CurveScale scale) {
  return scale == CurveScale::log ? "log_half_width" : "half_width";
}

void write_curves_csv(std::ostream& os, const std::vector<CurveSet>& sets) {
  const CurveScale scale = sets.empty() ? CurveScale::log : sets.front().spec.scale;
  os << "n,method," << scale_column(scale) << ",s2,delta\n";
  for (const auto& set : sets) {
    for (const auto& p : set.points) {
      os << p.n << ',' << to_string(p.method) << ',' << format_double(p.value) << ','
         << format_double(set.spec.s2) << ',' << format_double(set.spec.delta) << '\n';
    }
  }
}

void write_curves_svg(std::ostream& os, const std::vector<CurveSet>& sets) {
  if (sets.size() > 4) throw PreconditionError("the SVG layout holds at most four panels");
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
     << "\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" fill=\"#fff\"/>\n";
  for (std::size_t i = 0; i < sets.size(); ++i) write_panel(os, sets[i], i);
  os << "</svg>\n";
}

}  // namespace uci

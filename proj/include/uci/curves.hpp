#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "uci/ci.hpp"

namespace uci {

enum class CurveScale { linear, log };

// One comparison panel: half-widths of several CI methods across n at a
// fixed plug-in sample variance and delta.
struct CurveSpec {
  std::vector<Method> methods;
  std::vector<std::size_t> n_values;
  double s2 = 0.05;
  double delta = 0.1;
  CurveScale scale = CurveScale::log;
  std::string title;
};

struct CurvePoint {
  std::size_t n = 0;
  Method method = Method::mean_improved_hoeffding_1;
  double value = 0.0;  // half-width, or its natural log
};

// A method skipped at some n because its preconditions fail there.
struct CurveGap {
  std::size_t n = 0;
  Method method = Method::mean_improved_hoeffding_1;
  std::string reason;
};

struct CurveSet {
  CurveSpec spec;
  std::vector<CurvePoint> points;  // method-major, n ascending
  std::vector<CurveGap> gaps;
};

// The four mean CIs of the comparison figure.
std::vector<Method> figure_methods();
// Even n from 4 to 1000.
std::vector<std::size_t> figure_n_grid();
// Panels A-D: S_n^2 in {0.05, 0.25} by delta in {0.01, 0.1}.
std::vector<CurveSpec> figure_panels();

// Sample mean fixed at 1/2; it does not affect any half-width.
double curve_half_width(Method method, std::size_t n, double s2, double delta);

CurveSet compute_curves(const CurveSpec& spec);

std::string_view legend_label(Method method);
std::string_view scale_column(CurveScale scale);

// Columns: n,method,<log_half_width|half_width>,s2,delta
void write_curves_csv(std::ostream& os, const std::vector<CurveSet>& sets);
// Self-contained SVG, viewBox 0 0 960 720, up to four panels in a 2x2 grid,
// one polyline per plotted series.
void write_curves_svg(std::ostream& os, const std::vector<CurveSet>& sets);

}  // namespace uci

#pragma once

// Pairs every CI with the tail bound it was inverted from and reports, per
// union component, the tail probability at the CI's half-width alongside
// the budget that component was given.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "uci/ci.hpp"
#include "uci/tail_bounds.hpp"

namespace reversal {

struct Check {
  std::string label;
  double tail = 0.0;
  double budget = 0.0;
};

inline double k_hi() { return std::sqrt(2.0) / 2.0 + std::sqrt(42.0) / 6.0; }

// Tail of the failure event of a one-sided SD CI of half-width hw when the
// true variance is v. The CI uses blocks of 2m points.
inline double sd_failure_tail(bool upper, double v, double hw, std::size_t n, std::size_t m,
                              bool floor_free) {
  const double root = std::sqrt(v);
  double eps = 0.0;
  if (upper) {
    // sqrt(V) > sqrt(W) + hw  <=>  V - W > V - (sqrt(V) - hw)^2
    if (root <= hw) return 0.0;
    eps = v - (root - hw) * (root - hw);
  } else {
    // sqrt(V) < sqrt(W) - hw  <=>  W - V > (sqrt(V) + hw)^2 - V
    eps = (root + hw) * (root + hw) - v;
  }
  return uci::bernstein_ustat_tail(n, 2 * m, eps, v, 1.0, false, floor_free);
}

inline std::string tag(const char* what, uci::Side side, std::size_t n, std::size_t m, double stat,
                       double delta) {
  return std::string(what) + ":" + std::string(uci::to_string(side)) + " n=" + std::to_string(n) +
         " m=" + std::to_string(m) + " stat=" + std::to_string(stat) +
         " delta=" + std::to_string(delta);
}

// All (bound, CI) pairs at one grid point. `stat` plays the plug-in
// statistic (S_n^2 or W_n) and, for the SD CIs, the true variance.
inline std::vector<Check> checks(std::size_t n, double stat, double delta,
                                 const uci::CiOptions& opts = {}) {
  using namespace uci;
  std::vector<Check> out;
  const bool ff = opts.floor_free;
  const Side sides[] = {Side::upper, Side::lower, Side::two_sided};

  for (std::size_t m : {1u, 2u, 3u}) {
    if (n < 2 * m) continue;
    for (Side side : sides) {
      const bool two = side == Side::two_sided;
      const auto ci = ci_wstat(WKind::hoeffding, stat, n, m, delta, side, opts);
      out.push_back({tag("var_hoeffding", side, n, m, stat, delta),
                     hoeffding_ustat_tail(n, 2 * m, ci.half_width, 0.5, two, ff), delta});
    }
    for (Side side : {Side::upper, Side::lower}) {
      const auto ci = ci_wstat(WKind::bernstein, stat, n, m, delta, side, opts);
      out.push_back({tag("sd_bernstein", side, n, m, stat, delta),
                     sd_failure_tail(side == Side::upper, stat, ci.half_width, n, m, ff), delta});
    }
    for (WKind kind : {WKind::hoeffding, WKind::bernstein}) {
      for (Side side : sides) {
        const bool two = side == Side::two_sided;
        const double nb = two ? delta / 3.0 : delta / 2.0;
        const double blocks2 = block_count(n, 2 * m, ff);
        double v_up = 0.0;
        double nuisance_tail = 0.0;
        if (kind == WKind::hoeffding) {
          const double dev = std::sqrt(std::log(1.0 / nb) / (8.0 * blocks2));
          v_up = stat + dev;
          nuisance_tail = hoeffding_ustat_tail(n, 2 * m, dev, 0.5, false, ff);
        } else {
          const double dev = k_hi() * std::sqrt(std::log(1.0 / nb) / blocks2);
          v_up = (std::sqrt(stat) + dev) * (std::sqrt(stat) + dev);
          nuisance_tail = sd_failure_tail(true, stat, dev, n, m, ff);
        }
        const auto ci = ci_ustat_empirical(kind, 0.5, stat, n, m, delta, side, opts);
        const char* name = kind == WKind::hoeffding ? "ustat_hoeffding" : "ustat_bernstein";
        out.push_back({tag(name, side, n, m, stat, delta) + " main",
                       bernstein_ustat_tail(n, m, ci.half_width, v_up, 2.0, two, ff), delta - nb});
        out.push_back({tag(name, side, n, m, stat, delta) + " nuisance", nuisance_tail, nb});
      }
    }
  }

  if (n >= 2) {
    for (ImprovedKind kind : {ImprovedKind::hoeffding_plugin, ImprovedKind::bernstein_plugin}) {
      for (Side side : sides) {
        const bool two = side == Side::two_sided;
        const double nb = two ? delta / 3.0 : delta / 2.0;
        const double blocks2 = block_count(n, 2, ff);
        double v_up = 0.0;
        double nuisance_tail = 0.0;
        if (kind == ImprovedKind::hoeffding_plugin) {
          const double dev = std::sqrt(std::log(1.0 / nb) / (8.0 * blocks2));
          v_up = stat + dev;
          nuisance_tail = hoeffding_ustat_tail(n, 2, dev, 0.5, false, ff);
        } else {
          const double dev = k_hi() * std::sqrt(std::log(1.0 / nb) / blocks2);
          v_up = (std::sqrt(stat) + dev) * (std::sqrt(stat) + dev);
          nuisance_tail = sd_failure_tail(true, stat, dev, n, 1, ff);
        }
        const auto ci = ci_mean_improved(kind, 0.5, stat, n, delta, side, opts);
        const char* name = kind == ImprovedKind::hoeffding_plugin ? "mean_improved_1" : "mean_improved_2";
        out.push_back({tag(name, side, n, 1, stat, delta) + " main",
                       improved_hoeffding_mean_tail(n, ci.half_width, 1.0, v_up, two), delta - nb});
        out.push_back({tag(name, side, n, 1, stat, delta) + " nuisance", nuisance_tail, nb});
      }
    }
  }
  return out;
}

}  // namespace reversal

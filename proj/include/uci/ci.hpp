#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "uci/kernel.hpp"
#include "uci/tail_bounds.hpp"
#include "uci/ustat.hpp"

namespace uci {

enum class Method {
  var_hoeffding,
  sd_bernstein_upper,
  sd_bernstein_lower,
  ustat_empirical_hoeffding,
  ustat_empirical_bernstein,
  ustat_empirical_bernstein_2sided,
  mean_improved_hoeffding_1,
  mean_improved_hoeffding_2,
  mean_improved_2sided_1,
  mean_improved_2sided_2,
  mean_audibert,
  mean_maurer,
  sd_maurer_upper,
  sd_maurer_lower,
};

// upper: the target is at most center + half_width.
// lower: the target is at least center - half_width.
// two_sided: |target - center| <= half_width.
enum class Side { upper, lower, two_sided };

std::string_view to_string(Method m);
std::string_view to_string(Side s);
std::optional<Method> parse_method(std::string_view name);
std::optional<Side> parse_side(std::string_view name);
std::span<const Method> all_methods();

// The pieces a half-width is assembled from. For bounds without a nuisance
// parameter the cross term is zero; square-root terms that do not depend
// on the plugged-in variance are reported with the variance term.
struct HalfWidthTerms {
  double variance = 0.0;
  double cross = 0.0;
  double linear = 0.0;

  [[nodiscard]] double total() const { return variance + cross + linear; }
};

struct CiResult {
  Method method = Method::var_hoeffding;
  Side side = Side::upper;
  double delta = 0.0;
  double level = 0.0;  // 1 - delta
  double center = 0.0;
  double half_width = 0.0;
  HalfWidthTerms terms;
  bool floor_free = false;
  // Interval endpoints clipped to the target's admissible range. A one-sided
  // interval reports the range limit on its open side.
  double lower = 0.0;
  double upper = 0.0;

  [[nodiscard]] bool covers(double target) const;
};

struct CiOptions {
  bool floor_free = false;
  // Reproduce the printed two-sided mean display (log(4/delta) in the
  // leading term) instead of the uniform log(3/delta).
  bool as_printed = false;
};

// sqrt(2)/2 + sqrt(6)/6: lower confidence bound on a standard deviation.
double sd_lower_constant();
// sqrt(2)/2 + sqrt(42)/6: upper confidence bound on a standard deviation.
double sd_upper_constant();
// (4 + sqrt(2)(3 + sqrt(21)))/3: linear-plus-cross coefficient of the
// two-sided empirical Bernstein U-statistic CI when 2m divides n.
double two_sided_ustat_constant();

// sqrt((C/B) log(A/delta)) + (D/B) log(A/delta). Throws VacuousBoundError
// when log(A/delta) <= 0.
double invert_bound(const BoundParams& bp, double delta);
// The exact root of A exp(-B eps^2/(C + D eps)) = delta, before the square
// root inequality is applied. Never larger than invert_bound.
double invert_bound_exact(const BoundParams& bp, double delta);

/// A sub-gamma bound whose C constant depends linearly on an unknown
/// variance: C = c_fixed + c_per_variance * variance.
struct VarianceSlotBound {
  double a_const = 1.0;
  double b_const = 1.0;
  double c_fixed = 0.0;
  double c_per_variance = 0.0;
  double d_const = 0.0;

  [[nodiscard]] BoundParams at(double variance) const {
    return {a_const, b_const, c_fixed + c_per_variance * variance, d_const};
  }
};

enum class NuisanceForm {
  variance_additive,  // variance <= estimate + deviation(budget)
  sd_additive,        // sqrt(variance) <= sqrt(estimate) + deviation(budget)
};

struct NuisanceBound {
  NuisanceForm form = NuisanceForm::variance_additive;
  std::function<double(double budget)> deviation;
};

enum class ComponentRole { main_upper, main_lower, nuisance };

struct UnionComponent {
  ComponentRole role;
  double budget;
};

struct Composition {
  HalfWidthTerms terms;
  double main_budget = 0.0;
  // The variance value the main bound was effectively evaluated at (the
  // nuisance upper bound, or the estimate when there is no nuisance).
  double variance_upper = 0.0;
};

/// Union-bound composition: each event gets its own share of delta, the
/// nuisance variance is replaced by its upper confidence bound, and the
/// square-root inequality splits the result into variance, cross and linear
/// terms. Budgets must sum to delta. With a single main component and no
/// nuisance this is invert_bound at the plugged variance.
Composition compose_union(const VarianceSlotBound& main, double variance_estimate,
                          const std::optional<NuisanceBound>& nuisance,
                          std::span<const UnionComponent> components, double delta);

enum class WKind { hoeffding, bernstein };

// CIs for sigma^2 = V h (hoeffding) or sqrt(sigma^2) (bernstein) from W_n or
// W~_n, with blocks of 2m points. Bernstein supports one-sided sides only.
CiResult ci_wstat(WKind kind, double w, std::size_t n, std::size_t m, double delta, Side side,
                  const CiOptions& opts = {});
// The m = 1 cases, for the unbiased sample variance of data in [0, 1].
CiResult ci_variance_hoeffding(double s2, std::size_t n, double delta, Side side,
                               const CiOptions& opts = {});
CiResult ci_sd_bernstein(double s2, std::size_t n, double delta, Side side,
                         const CiOptions& opts = {});

// Empirical CI for theta from U_n and W_n (or W~_n) of a [0, 1] kernel.
CiResult ci_ustat_empirical(WKind kind, double u, double w, std::size_t n, std::size_t m,
                            double delta, Side side, const CiOptions& opts = {});

enum class ImprovedKind { hoeffding_plugin = 1, bernstein_plugin = 2 };

// Empirical CIs for the mean of [0, 1] data from the improved Hoeffding
// inequality, with the variance replaced by a Hoeffding (kind 1) or
// Bernstein standard-deviation (kind 2) upper bound.
CiResult ci_mean_improved(ImprovedKind kind, double xbar, double s2, std::size_t n, double delta,
                          Side side, const CiOptions& opts = {});

enum class Baseline { audibert, maurer };

// Empirical Bernstein baselines for the mean. One-sided only.
CiResult ci_mean_baselines(Baseline which, double xbar, double s2, std::size_t n, double delta,
                           Side side);

// Maurer-Pontil bound on the standard deviation. One-sided only.
CiResult ci_sd_maurer(double s2, std::size_t n, double delta, Side side);

// Everything a method can draw on. `m` and `u`/`w` matter only to the
// U-statistic methods; var/sd methods use s2, mean methods xbar and s2.
struct CiInputs {
  std::size_t n = 0;
  std::size_t m = 1;
  double u = 0.0;
  double w = 0.0;
  double s2 = 0.0;
  double xbar = 0.0;
};

// Dispatches on the method tag. For tags that fix the side
// (sd_*_upper/lower, *_2sided_*, ustat_empirical_bernstein_2sided) the side
// argument must agree with the tag.
CiResult compute_ci(Method method, Side side, const CiInputs& in, double delta,
                    const CiOptions& opts = {});

// The side implied by a tag, if any.
std::optional<Side> implied_side(Method method);

/// Empirical U-statistic CI straight from data. The kernel range must lie in
/// [0, 1]; kernels on other ranges go through rescale_to_unit first and the
/// result comes back through map_from_unit.
CiResult empirical_ustat_ci(const Sample& sample, const KernelSpec& k, WKind kind, double delta,
                            Side side, const CiOptions& opts = {}, bool symmetrized = true,
                            std::uint64_t cap = kDefaultEnumerationCap);

// Maps a CI for (h - a)/(b - a) back to the scale of h. Variance-type CIs
// scale by (b - a)^2, standard-deviation CIs by (b - a).
CiResult map_from_unit(const CiResult& ci, double a, double b);

}  // namespace uci

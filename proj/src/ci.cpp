#include "uci/ci.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <utility>

#include "uci/detail/debug_log.hpp"
#include "uci/errors.hpp"

namespace uci {
namespace {

constexpr std::array<std::pair<Method, std::string_view>, 14> kMethodNames{{
    {Method::var_hoeffding, "var_hoeffding"},
    {Method::sd_bernstein_upper, "sd_bernstein_upper"},
    {Method::sd_bernstein_lower, "sd_bernstein_lower"},
    {Method::ustat_empirical_hoeffding, "ustat_empirical_hoeffding"},
    {Method::ustat_empirical_bernstein, "ustat_empirical_bernstein"},
    {Method::ustat_empirical_bernstein_2sided, "ustat_empirical_bernstein_2sided"},
    {Method::mean_improved_hoeffding_1, "mean_improved_hoeffding_1"},
    {Method::mean_improved_hoeffding_2, "mean_improved_hoeffding_2"},
    {Method::mean_improved_2sided_1, "mean_improved_2sided_1"},
    {Method::mean_improved_2sided_2, "mean_improved_2sided_2"},
    {Method::mean_audibert, "mean_audibert"},
    {Method::mean_maurer, "mean_maurer"},
    {Method::sd_maurer_upper, "sd_maurer_upper"},
    {Method::sd_maurer_lower, "sd_maurer_lower"},
}};

constexpr std::array<Method, 14> kAllMethods = [] {
  std::array<Method, 14> out{};
  for (std::size_t i = 0; i < kMethodNames.size(); ++i) out[i] = kMethodNames[i].first;
  return out;
}();

// Admissible ranges of the targets for a [0, 1] kernel.
struct Range {
  double lo;
  double hi;
};
constexpr Range kUnit{0.0, 1.0};
constexpr Range kVariance{0.0, 0.25};
constexpr Range kSd{0.0, 0.5};

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    std::ostringstream os;
    os << "delta must lie in (0, 1), got " << delta;
    throw PreconditionError(os.str());
  }
}

void check_min_n(std::size_t n, std::size_t needed) {
  if (n < needed) {
    std::ostringstream os;
    os << "this CI needs n >= " << needed << ", got n = " << n;
    throw PreconditionError(os.str());
  }
}

void check_nonnegative(double v, const char* what) {
  if (!(v >= 0.0)) throw PreconditionError(std::string(what) + " must be nonnegative");
}

void check_unit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) throw PreconditionError(std::string(what) + " must lie in [0, 1]");
}

void require_one_sided(Side side, std::string_view what) {
  if (side == Side::two_sided) {
    throw PreconditionError(std::string(what) + " is one-sided; use side upper or lower");
  }
}

CiResult make_result(Method method, Side side, double delta, double center,
                     const HalfWidthTerms& terms, bool floor_free, Range range) {
  CiResult r;
  r.method = method;
  r.side = side;
  r.delta = delta;
  r.level = 1.0 - delta;
  r.center = center;
  r.terms = terms;
  r.half_width = terms.total();
  r.floor_free = floor_free;
  const double lo = std::clamp(center - r.half_width, range.lo, range.hi);
  const double hi = std::clamp(center + r.half_width, range.lo, range.hi);
  r.lower = side == Side::upper ? range.lo : lo;
  r.upper = side == Side::lower ? range.hi : hi;
  return r;
}

// Union-bound layout: one main event per guarded direction plus the nuisance.
std::vector<UnionComponent> equal_split(double delta, Side side) {
  if (side == Side::two_sided) {
    return {{ComponentRole::main_upper, delta / 3.0},
            {ComponentRole::main_lower, delta / 3.0},
            {ComponentRole::nuisance, delta / 3.0}};
  }
  const auto role = side == Side::upper ? ComponentRole::main_upper : ComponentRole::main_lower;
  return {{role, delta / 2.0}, {ComponentRole::nuisance, delta / 2.0}};
}

NuisanceBound variance_hoeffding_nuisance(double blocks) {
  return {NuisanceForm::variance_additive,
          [blocks](double budget) { return std::sqrt(std::log(1.0 / budget) / (8.0 * blocks)); }};
}

NuisanceBound sd_bernstein_nuisance(double blocks) {
  return {NuisanceForm::sd_additive, [blocks](double budget) {
            return sd_upper_constant() * std::sqrt(std::log(1.0 / budget) / blocks);
          }};
}

void plausible_variance(double s2) {
  if (s2 > 0.25) {
    std::ostringstream os;
    os << "variance estimate " << s2 << " exceeds 1/4, the maximum for data in [0, 1]";
    detail::debug_log(os.str());
  }
}

}  // namespace

std::string_view to_string(Method m) {
  for (const auto& [tag, name] : kMethodNames) {
    if (tag == m) return name;
  }
  return "unknown";
}

std::string_view to_string(Side s) {
  switch (s) {
    case Side::upper:
      return "upper";
    case Side::lower:
      return "lower";
    case Side::two_sided:
      return "two";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  for (const auto& [tag, text] : kMethodNames) {
    if (text == name) return tag;
  }
  return std::nullopt;
}

std::optional<Side> parse_side(std::string_view name) {
  if (name == "upper") return Side::upper;
  if (name == "lower") return Side::lower;
  if (name == "two" || name == "two_sided") return Side::two_sided;
  return std::nullopt;
}

std::span<const Method> all_methods() { return kAllMethods; }

bool CiResult::covers(double target) const {
  switch (side) {
    case Side::upper:
      return target <= center + half_width;
    case Side::lower:
      return target >= center - half_width;
    case Side::two_sided:
      return std::abs(target - center) <= half_width;
  }
  return false;
}

double sd_lower_constant() { return std::sqrt(2.0) / 2.0 + std::sqrt(6.0) / 6.0; }

double sd_upper_constant() { return std::sqrt(2.0) / 2.0 + std::sqrt(42.0) / 6.0; }

double two_sided_ustat_constant() {
  return (4.0 + std::sqrt(2.0) * (3.0 + std::sqrt(21.0))) / 3.0;
}

double invert_bound(const BoundParams& bp, double delta) {
  if (!(delta > 0.0)) throw PreconditionError("delta must be positive");
  const double log_term = std::log(bp.a_const / delta);
  if (!(log_term > 0.0)) {
    throw VacuousBoundError("delta >= A: the tail bound carries no information at this level");
  }
  return std::sqrt(bp.c_const / bp.b_const * log_term) + bp.d_const / bp.b_const * log_term;
}

double invert_bound_exact(const BoundParams& bp, double delta) {
  if (!(delta > 0.0)) throw PreconditionError("delta must be positive");
  const double l = std::log(bp.a_const / delta);
  if (!(l > 0.0)) {
    throw VacuousBoundError("delta >= A: the tail bound carries no information at this level");
  }
  const double dl = bp.d_const * l;
  return (dl + std::sqrt(dl * dl + 4.0 * bp.b_const * bp.c_const * l)) / (2.0 * bp.b_const);
}

Composition compose_union(const VarianceSlotBound& main, double variance_estimate,
                          const std::optional<NuisanceBound>& nuisance,
                          std::span<const UnionComponent> components, double delta) {
  check_delta(delta);
  check_nonnegative(variance_estimate, "variance estimate");
  double total = 0.0;
  double main_budget = 1.0;
  std::size_t mains = 0;
  std::optional<double> nuisance_budget;
  for (const auto& c : components) {
    if (!(c.budget > 0.0)) throw PreconditionError("union budgets must be positive");
    total += c.budget;
    if (c.role == ComponentRole::nuisance) {
      if (nuisance_budget) throw PreconditionError("at most one nuisance component is allowed");
      nuisance_budget = c.budget;
    } else {
      ++mains;
      main_budget = std::min(main_budget, c.budget);
    }
  }
  if (mains == 0) throw PreconditionError("union composition needs a main component");
  if (nuisance_budget.has_value() != nuisance.has_value()) {
    throw PreconditionError("nuisance component and nuisance bound must come together");
  }
  if (std::abs(total - delta) > 1e-12 * std::max(1.0, delta)) {
    std::ostringstream os;
    os.precision(17);
    os << "union budgets sum to " << total << ", expected delta = " << delta;
    throw PreconditionError(os.str());
  }

  const double log_term = std::log(main.a_const / main_budget);
  if (!(log_term > 0.0)) {
    throw VacuousBoundError("a union component budget is at least A; the bound is vacuous");
  }
  const double scale = log_term / main.b_const;

  Composition out;
  out.main_budget = main_budget;
  out.terms.linear = main.d_const * scale;
  if (!nuisance) {
    out.variance_upper = variance_estimate;
    out.terms.variance =
        std::sqrt((main.c_fixed + main.c_per_variance * variance_estimate) * scale);
    return out;
  }

  const double dev = nuisance->deviation(*nuisance_budget);
  switch (nuisance->form) {
    case NuisanceForm::variance_additive:
      out.variance_upper = variance_estimate + dev;
      out.terms.variance =
          std::sqrt((main.c_fixed + main.c_per_variance * variance_estimate) * scale);
      out.terms.cross = std::sqrt(main.c_per_variance * dev * scale);
      break;
    case NuisanceForm::sd_additive: {
      const double sd_upper = std::sqrt(variance_estimate) + dev;
      out.variance_upper = sd_upper * sd_upper;
      out.terms.variance = std::sqrt(main.c_fixed * scale) +
                           std::sqrt(main.c_per_variance * variance_estimate * scale);
      out.terms.cross = std::sqrt(main.c_per_variance * scale) * dev;
      break;
    }
  }
  return out;
}

CiResult ci_wstat(WKind kind, double w, std::size_t n, std::size_t m, double delta, Side side,
                  const CiOptions& opts) {
  check_delta(delta);
  if (m < 1) throw PreconditionError("kernel order must be at least 1");
  check_min_n(n, 2 * m);
  check_nonnegative(w, "W_n");
  plausible_variance(w);

  if (kind == WKind::hoeffding) {
    // eta lies in [0, 1/2]; Hoeffding with blocks of 2m points.
    const auto bp =
        hoeffding_ustat_params(n, 2 * m, 0.5, side == Side::two_sided, opts.floor_free);
    HalfWidthTerms terms;
    terms.variance = invert_bound(bp, delta);
    return make_result(Method::var_hoeffding, side, delta, w, terms, opts.floor_free, kVariance);
  }

  require_one_sided(side, "the Bernstein standard-deviation CI");
  const double blocks = block_count(n, 2 * m, opts.floor_free);
  const double constant = side == Side::upper ? sd_upper_constant() : sd_lower_constant();
  HalfWidthTerms terms;
  terms.variance = constant * std::sqrt(std::log(1.0 / delta) / blocks);
  const Method tag = side == Side::upper ? Method::sd_bernstein_upper : Method::sd_bernstein_lower;
  return make_result(tag, side, delta, std::sqrt(w), terms, opts.floor_free, kSd);
}

CiResult ci_variance_hoeffding(double s2, std::size_t n, double delta, Side side,
                               const CiOptions& opts) {
  return ci_wstat(WKind::hoeffding, s2, n, 1, delta, side, opts);
}

CiResult ci_sd_bernstein(double s2, std::size_t n, double delta, Side side,
                         const CiOptions& opts) {
  return ci_wstat(WKind::bernstein, s2, n, 1, delta, side, opts);
}

CiResult ci_ustat_empirical(WKind kind, double u, double w, std::size_t n, std::size_t m,
                            double delta, Side side, const CiOptions& opts) {
  check_delta(delta);
  if (m < 1) throw PreconditionError("kernel order must be at least 1");
  check_min_n(n, 2 * m);
  check_nonnegative(w, "W_n");
  check_unit(u, "U_n");

  // One-sided Bernstein for U_n with c = 2 (h in [0, 1]).
  const VarianceSlotBound main{1.0, block_count(n, m, opts.floor_free), 0.0, 2.0, 4.0 / 3.0};
  const double var_blocks = block_count(n, 2 * m, opts.floor_free);
  const NuisanceBound nuisance = kind == WKind::hoeffding
                                     ? variance_hoeffding_nuisance(var_blocks)
                                     : sd_bernstein_nuisance(var_blocks);
  const auto parts = equal_split(delta, side);
  const Composition c = compose_union(main, w, nuisance, parts, delta);

  Method tag = Method::ustat_empirical_hoeffding;
  if (kind == WKind::bernstein) {
    tag = side == Side::two_sided ? Method::ustat_empirical_bernstein_2sided
                                  : Method::ustat_empirical_bernstein;
  }
  return make_result(tag, side, delta, u, c.terms, opts.floor_free, kUnit);
}

CiResult ci_mean_improved(ImprovedKind kind, double xbar, double s2, std::size_t n, double delta,
                          Side side, const CiOptions& opts) {
  check_delta(delta);
  check_min_n(n, 2);
  check_nonnegative(s2, "S_n^2");
  check_unit(xbar, "the sample mean");
  plausible_variance(s2);

  const bool two = side == Side::two_sided;
  Method tag;
  if (kind == ImprovedKind::hoeffding_plugin) {
    tag = two ? Method::mean_improved_2sided_1 : Method::mean_improved_hoeffding_1;
  } else {
    tag = two ? Method::mean_improved_2sided_2 : Method::mean_improved_hoeffding_2;
  }

  const double nd = static_cast<double>(n);
  const double var_blocks = block_count(n, 2, opts.floor_free);

  if (two && opts.as_printed && kind == ImprovedKind::hoeffding_plugin) {
    // The printed display: log(4/delta) leading, log^{3/2}(3/delta) cross.
    HalfWidthTerms terms;
    terms.variance = std::sqrt((1.0 + 2.0 * s2) / (3.0 * nd) * std::log(4.0 / delta));
    terms.cross = std::sqrt(1.0 / (12.0 * nd) * std::sqrt(8.0 / var_blocks) *
                            std::pow(std::log(3.0 / delta), 1.5));
    return make_result(tag, side, delta, xbar, terms, opts.floor_free, kUnit);
  }

  // Improved Hoeffding: A = 1, B = 3n, C = 1 + 2 V, D = 0 on [0, 1].
  const VarianceSlotBound main{1.0, 3.0 * nd, 1.0, 2.0, 0.0};
  const NuisanceBound nuisance = kind == ImprovedKind::hoeffding_plugin
                                     ? variance_hoeffding_nuisance(var_blocks)
                                     : sd_bernstein_nuisance(var_blocks);
  const auto parts = equal_split(delta, side);
  const Composition c = compose_union(main, s2, nuisance, parts, delta);
  return make_result(tag, side, delta, xbar, c.terms, opts.floor_free, kUnit);
}

CiResult ci_mean_baselines(Baseline which, double xbar, double s2, std::size_t n, double delta,
                           Side side) {
  check_delta(delta);
  check_min_n(n, 2);
  check_nonnegative(s2, "S_n^2");
  check_unit(xbar, "the sample mean");
  require_one_sided(side, "the empirical Bernstein baseline");
  const double nd = static_cast<double>(n);
  const double l = std::log(2.0 / delta);
  HalfWidthTerms terms;
  if (which == Baseline::audibert) {
    terms.variance = std::sqrt(2.0 * (nd - 1.0) * s2 / (nd * nd) * l);
    terms.linear = 3.0 / nd * l;
    return make_result(Method::mean_audibert, side, delta, xbar, terms, false, kUnit);
  }
  terms.variance = std::sqrt(2.0 * s2 / nd * l);
  terms.linear = 7.0 / (3.0 * (nd - 1.0)) * l;
  return make_result(Method::mean_maurer, side, delta, xbar, terms, false, kUnit);
}

CiResult ci_sd_maurer(double s2, std::size_t n, double delta, Side side) {
  check_delta(delta);
  check_min_n(n, 2);
  check_nonnegative(s2, "S_n^2");
  require_one_sided(side, "the Maurer-Pontil standard-deviation CI");
  HalfWidthTerms terms;
  terms.variance = std::sqrt(2.0 / (static_cast<double>(n) - 1.0) * std::log(1.0 / delta));
  const Method tag = side == Side::upper ? Method::sd_maurer_upper : Method::sd_maurer_lower;
  return make_result(tag, side, delta, std::sqrt(s2), terms, false, kSd);
}

std::optional<Side> implied_side(Method method) {
  switch (method) {
    case Method::sd_bernstein_upper:
    case Method::sd_maurer_upper:
      return Side::upper;
    case Method::sd_bernstein_lower:
    case Method::sd_maurer_lower:
      return Side::lower;
    case Method::ustat_empirical_bernstein_2sided:
    case Method::mean_improved_2sided_1:
    case Method::mean_improved_2sided_2:
      return Side::two_sided;
    default:
      return std::nullopt;
  }
}

CiResult compute_ci(Method method, Side side, const CiInputs& in, double delta,
                    const CiOptions& opts) {
  if (const auto fixed = implied_side(method); fixed && *fixed != side) {
    std::ostringstream os;
    os << "method " << to_string(method) << " is " << to_string(*fixed) << "-sided, not "
       << to_string(side);
    throw PreconditionError(os.str());
  }
  switch (method) {
    case Method::var_hoeffding:
      return ci_variance_hoeffding(in.s2, in.n, delta, side, opts);
    case Method::sd_bernstein_upper:
    case Method::sd_bernstein_lower:
      return ci_sd_bernstein(in.s2, in.n, delta, side, opts);
    case Method::ustat_empirical_hoeffding:
      return ci_ustat_empirical(WKind::hoeffding, in.u, in.w, in.n, in.m, delta, side, opts);
    case Method::ustat_empirical_bernstein:
      require_one_sided(side, "ustat_empirical_bernstein");
      return ci_ustat_empirical(WKind::bernstein, in.u, in.w, in.n, in.m, delta, side, opts);
    case Method::ustat_empirical_bernstein_2sided:
      return ci_ustat_empirical(WKind::bernstein, in.u, in.w, in.n, in.m, delta, side, opts);
    case Method::mean_improved_hoeffding_1:
      require_one_sided(side, "mean_improved_hoeffding_1");
      return ci_mean_improved(ImprovedKind::hoeffding_plugin, in.xbar, in.s2, in.n, delta, side,
                              opts);
    case Method::mean_improved_2sided_1:
      return ci_mean_improved(ImprovedKind::hoeffding_plugin, in.xbar, in.s2, in.n, delta, side,
                              opts);
    case Method::mean_improved_hoeffding_2:
      require_one_sided(side, "mean_improved_hoeffding_2");
      return ci_mean_improved(ImprovedKind::bernstein_plugin, in.xbar, in.s2, in.n, delta, side,
                              opts);
    case Method::mean_improved_2sided_2:
      return ci_mean_improved(ImprovedKind::bernstein_plugin, in.xbar, in.s2, in.n, delta, side,
                              opts);
    case Method::mean_audibert:
      return ci_mean_baselines(Baseline::audibert, in.xbar, in.s2, in.n, delta, side);
    case Method::mean_maurer:
      return ci_mean_baselines(Baseline::maurer, in.xbar, in.s2, in.n, delta, side);
    case Method::sd_maurer_upper:
    case Method::sd_maurer_lower:
      return ci_sd_maurer(in.s2, in.n, delta, side);
  }
  throw PreconditionError("unknown method");
}

CiResult empirical_ustat_ci(const Sample& sample, const KernelSpec& k, WKind kind, double delta,
                            Side side, const CiOptions& opts, bool symmetrized,
                            std::uint64_t cap) {
  if (!k.within_unit_interval()) {
    throw PreconditionError("kernel '" + k.name() +
                            "' has a range outside [0, 1]; apply rescale_to_unit first");
  }
  check_min_n(sample.size(), 2 * k.order());
  const double u = compute_ustat(sample, k, cap);
  const double w = compute_w(sample, VarianceKernel(k, symmetrized), cap);
  return ci_ustat_empirical(kind, u, w, sample.size(), k.order(), delta, side, opts);
}

CiResult map_from_unit(const CiResult& ci, double a, double b) {
  if (!(a < b)) throw PreconditionError("map_from_unit requires a < b");
  const double width = b - a;
  CiResult out = ci;
  switch (ci.method) {
    case Method::var_hoeffding: {
      const double s = width * width;
      out.center *= s;
      out.half_width *= s;
      out.terms = {ci.terms.variance * s, ci.terms.cross * s, ci.terms.linear * s};
      out.lower *= s;
      out.upper *= s;
      return out;
    }
    case Method::sd_bernstein_upper:
    case Method::sd_bernstein_lower:
    case Method::sd_maurer_upper:
    case Method::sd_maurer_lower:
      out.center *= width;
      out.half_width *= width;
      out.terms = {ci.terms.variance * width, ci.terms.cross * width, ci.terms.linear * width};
      out.lower *= width;
      out.upper *= width;
      return out;
    default:
      out.center = a + width * ci.center;
      out.half_width *= width;
      out.terms = {ci.terms.variance * width, ci.terms.cross * width, ci.terms.linear * width};
      out.lower = a + width * ci.lower;
      out.upper = a + width * ci.upper;
      return out;
  }
}

}  // namespace uci

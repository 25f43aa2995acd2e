#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>

namespace uci {

using KernelFn = std::function<double(std::span<const double>)>;

// Built-in kernels carry their kind so oracles can recognise them.
enum class KernelKind { identity, variance, closure };

/// A symmetric kernel h of order m with a declared range [a, b].
///
/// Evaluation checks arity and range; a value outside [a, b] throws
/// KernelRangeError rather than being clamped. The symmetric flag is the
/// constructor's assertion and can be spot-checked with
/// `check_permutation_symmetry`.
class KernelSpec {
 public:
  KernelSpec(std::string name, std::size_t order, double range_lo, double range_hi, KernelFn fn,
             bool symmetric = true, KernelKind kind = KernelKind::closure);

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] std::size_t order() const { return order_; }
  [[nodiscard]] double range_lo() const { return range_lo_; }
  [[nodiscard]] double range_hi() const { return range_hi_; }
  [[nodiscard]] double range_width() const { return range_hi_ - range_lo_; }
  [[nodiscard]] bool symmetric() const { return symmetric_; }
  [[nodiscard]] KernelKind kind() const { return kind_; }

  // c = 2 max{|a|, |b|}, the linear constant of the Bernstein-type bounds.
  [[nodiscard]] double bernstein_c() const;

  // True when [a, b] is contained in [0, 1].
  [[nodiscard]] bool within_unit_interval() const;

  // Evaluates without arity checks; used by the hot enumeration loops.
  [[nodiscard]] double eval_unchecked(std::span<const double> points) const;

 private:
  std::string name_;
  std::size_t order_;
  double range_lo_;
  double range_hi_;
  std::shared_ptr<const KernelFn> fn_;
  bool symmetric_;
  KernelKind kind_;
};

// h(x) = x on [lo, hi]. Its U-statistic is the sample mean.
KernelSpec identity_kernel(double lo = 0.0, double hi = 1.0);

// h(x1, x2) = (x1 - x2)^2 / 2 for data in [lo, hi]; range [0, (hi-lo)^2/2].
// Its U-statistic is the unbiased sample variance.
KernelSpec variance_kernel(double lo = 0.0, double hi = 1.0);

// Wraps a user closure.
KernelSpec closure_kernel(std::string name, std::size_t order, double range_lo, double range_hi,
                          KernelFn fn, bool symmetric = true);

// h' = (h - a) / (b - a), a kernel with range [0, 1]. CIs computed for h'
// map back to h through `AffineMap`.
KernelSpec rescale_to_unit(const KernelSpec& k);

double eval_kernel(const KernelSpec& k, std::span<const double> points);

// Evaluates k on `trials` random argument permutations of `points` and
// returns the largest absolute deviation from the unpermuted value.
double check_permutation_symmetry(const KernelSpec& k, std::span<const double> points,
                                  std::size_t trials, std::uint64_t seed);

/// The order-2m kernel eta(x_1..x_2m) = [h(x_1..x_m) - h(x_{m+1}..x_2m)]^2 / 2,
/// whose expectation is the variance of h. When `symmetrized` is set it
/// stands for the permutation average of eta.
class VarianceKernel {
 public:
  explicit VarianceKernel(KernelSpec base, bool symmetrized = false);

  [[nodiscard]] const KernelSpec& base() const { return base_; }
  [[nodiscard]] std::size_t order() const { return 2 * base_.order(); }
  [[nodiscard]] bool symmetrized() const { return symmetrized_; }
  // eta lies in [0, (b - a)^2 / 2].
  [[nodiscard]] double range_hi() const;

  // Dispatches to eta or eta-tilde depending on `symmetrized()`.
  [[nodiscard]] double eval(std::span<const double> points) const;

 private:
  KernelSpec base_;
  bool symmetrized_;
};

double eval_eta(const VarianceKernel& vk, std::span<const double> points);

// Average of eta over all C(2m, m) ways to pick which points feed the first
// slot. Equal to the (2m)!-permutation average because h is symmetric and
// eta is invariant under swapping its two slots.
double eval_eta_symmetrized(const VarianceKernel& vk, std::span<const double> points);

}  // namespace uci

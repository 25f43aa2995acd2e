#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "uci/kernel.hpp"

namespace uci {

inline constexpr std::uint64_t kDefaultEnumerationCap = 2'000'000;

/// An IID sample of scalar points.
class Sample {
 public:
  Sample() = default;
  explicit Sample(std::vector<double> values) : values_(std::move(values)) {}

  [[nodiscard]] std::size_t size() const { return values_.size(); }
  [[nodiscard]] bool empty() const { return values_.empty(); }
  [[nodiscard]] std::span<const double> values() const { return values_; }
  [[nodiscard]] bool within(double lo, double hi) const;

 private:
  std::vector<double> values_;
};

struct UStatSummary {
  double u_n = 0.0;
  std::optional<double> w_n;
  std::optional<double> s2;
  std::size_t m = 0;
  std::size_t n = 0;
  bool symmetrized = false;
};

// binomial(n, m)^-1 * sum of h over all m-subsets, visited in lexicographic
// order with compensated accumulation.
double compute_ustat(const Sample& sample, const KernelSpec& k,
                     std::uint64_t cap = kDefaultEnumerationCap);

// Unbiased sample variance by the two-pass (mean, then deviations) formula.
double compute_sample_variance(const Sample& sample);

// W_n (eta) or W~_n (eta-tilde) by enumeration over all 2m-subsets.
double compute_w(const Sample& sample, const VarianceKernel& vk,
                 std::uint64_t cap = kDefaultEnumerationCap);

// W~_n for kernels of order 1 or 2 in O(n^2) time, without enumerating
// 2m-subsets. Agrees with compute_w(symmetrized) up to rounding.
double compute_w_symmetrized_fast(const Sample& sample, const KernelSpec& k);

// U_n plus W_n or W~_n, and S_n^2 when n >= 2.
UStatSummary summarize(const Sample& sample, const KernelSpec& k, bool symmetrized,
                       std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace uci

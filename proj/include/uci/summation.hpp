#pragma once

#include <cmath>
#include <span>

namespace uci {

/// Neumaier's variant of Kahan summation. The running compensation also
/// absorbs the error when an addend is larger than the partial sum.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(double initial) : sum_(initial) {}

  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  // Merging adds both the partial sum and its compensation, so a sum split
  // into partitions and merged in a fixed order is reproducible.
  void merge(const CompensatedSum& other) {
    add(other.sum_);
    add(other.compensation_);
  }

  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }

  [[nodiscard]] double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

inline double compensated_sum(std::span<const double> values) {
  CompensatedSum acc;
  for (double v : values) acc.add(v);
  return acc.value();
}

}  // namespace uci

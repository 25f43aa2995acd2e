#include "uci/combinations.hpp"

#include <limits>
#include <numeric>

namespace uci {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i, reduced first so the product stays exact.
    std::uint64_t num = n - k + i;
    std::uint64_t den = i;
    const std::uint64_t g = std::gcd(result, den);
    const std::uint64_t r = result / g;
    den /= g;
    num /= den;  // den divides num here because C(n-k+i, i) is integral
    if (num != 0 && r > kMax / num) return kMax;
    result = r * num;
  }
  return result;
}

KSubsets::KSubsets(std::size_t n, std::size_t k) : n_(n), indices_(k), valid_(k <= n) {
  std::iota(indices_.begin(), indices_.end(), std::size_t{0});
}

bool KSubsets::next() {
  if (!valid_) return false;
  const std::size_t k = indices_.size();
  // Rightmost position that can still be incremented.
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (indices_[i] < n_ - k + i) {
      ++indices_[i];
      for (std::size_t j = i + 1; j < k; ++j) indices_[j] = indices_[j - 1] + 1;
      return true;
    }
  }
  valid_ = false;
  return false;
}

}  // namespace uci

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace uci {

// Binomial coefficient C(n, k). Saturates at UINT64_MAX instead of
// overflowing, which is enough for comparisons against an enumeration cap.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Visits every k-subset of {0, ..., n-1} in lexicographic ascending order.
///
///   KSubsets subsets(5, 3);
///   do {
///     use(subsets.current());   // {0,1,2}, {0,1,3}, ..., {2,3,4}
///   } while (subsets.next());
///
/// For k == 0 there is exactly one (empty) subset. For k > n there is none
/// and `valid()` is false from the start.
class KSubsets {
 public:
  KSubsets(std::size_t n, std::size_t k);

  [[nodiscard]] bool valid() const { return valid_; }
  [[nodiscard]] std::span<const std::size_t> current() const { return indices_; }

  // Advances to the next subset; returns false once the last one was passed.
  bool next();

 private:
  std::size_t n_;
  std::vector<std::size_t> indices_;
  bool valid_;
};

// Calls fn(span<const size_t>) for every k-subset of {0..n-1} in
// lexicographic order.
template <typename Fn>
void for_each_k_subset(std::size_t n, std::size_t k, Fn&& fn) {
  KSubsets subsets(n, k);
  if (!subsets.valid()) return;
  do {
    fn(subsets.current());
  } while (subsets.next());
}

}  // namespace uci

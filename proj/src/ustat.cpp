#include "uci/ustat.hpp"

#include <sstream>

#include "uci/combinations.hpp"
#include "uci/detail/debug_log.hpp"
#include "uci/errors.hpp"
#include "uci/summation.hpp"

namespace uci {
namespace {

void check_cap(std::size_t n, std::size_t k, std::uint64_t cap) {
  const std::uint64_t count = binomial(n, k);
  if (count > cap) {
    std::ostringstream os;
    os << "C(" << n << ", " << k << ") = " << count << " combinations exceeds the enumeration cap "
       << cap;
    throw EnumerationCapError(os.str());
  }
}

void check_size(std::size_t n, std::size_t needed, const char* what) {
  if (n < needed) {
    std::ostringstream os;
    os << what << " needs at least " << needed << " points, got " << n;
    throw PreconditionError(os.str());
  }
}

// Rounding can push a nonnegative estimate to about -1e-17.
double clamp_nonnegative(double v, const char* what) {
  if (v < 0.0) {
    std::ostringstream os;
    os.precision(17);
    os << "clamped " << what << " = " << v << " to 0";
    detail::debug_log(os.str());
    return 0.0;
  }
  return v;
}

template <typename Eval>
double enumerate_mean(const Sample& sample, std::size_t order, Eval&& eval) {
  const auto values = sample.values();
  std::vector<double> points(order);
  CompensatedSum acc;
  std::uint64_t count = 0;
  for_each_k_subset(values.size(), order, [&](std::span<const std::size_t> idx) {
    for (std::size_t i = 0; i < order; ++i) points[i] = values[idx[i]];
    acc.add(eval(std::span<const double>(points)));
    ++count;
  });
  return acc.value() / static_cast<double>(count);
}

}  // namespace

bool Sample::within(double lo, double hi) const {
  for (double v : values_) {
    if (!(v >= lo && v <= hi)) return false;
  }
  return true;
}

double compute_ustat(const Sample& sample, const KernelSpec& k, std::uint64_t cap) {
  check_size(sample.size(), k.order(), "U-statistic");
  check_cap(sample.size(), k.order(), cap);
  return enumerate_mean(sample, k.order(),
                        [&](std::span<const double> p) { return k.eval_unchecked(p); });
}

double compute_sample_variance(const Sample& sample) {
  check_size(sample.size(), 2, "sample variance");
  const auto values = sample.values();
  const double n = static_cast<double>(values.size());
  const double mean = compensated_sum(values) / n;
  // Corrected two-pass: subtracting (sum d)^2 / n removes the rounding
  // error of the mean, so a constant sample gives exactly 0.
  CompensatedSum ss;
  CompensatedSum sd;
  for (double v : values) {
    const double d = v - mean;
    ss.add(d * d);
    sd.add(d);
  }
  const double bias = sd.value() * sd.value() / n;
  return clamp_nonnegative((ss.value() - bias) / (n - 1.0), "S_n^2");
}

double compute_w(const Sample& sample, const VarianceKernel& vk, std::uint64_t cap) {
  check_size(sample.size(), vk.order(), "W_n");
  check_cap(sample.size(), vk.order(), cap);
  const double w = enumerate_mean(sample, vk.order(), [&](std::span<const double> p) {
    return vk.symmetrized() ? eval_eta_symmetrized(vk, p) : eval_eta(vk, p);
  });
  return clamp_nonnegative(w, "W_n");
}

double compute_w_symmetrized_fast(const Sample& sample, const KernelSpec& k) {
  const auto x = sample.values();
  const std::size_t n = x.size();
  if (k.order() == 1) {
    check_size(n, 2, "W_n");
    std::vector<double> h(n);
    for (std::size_t i = 0; i < n; ++i) h[i] = k.eval_unchecked(x.subspan(i, 1));
    return compute_sample_variance(Sample(std::move(h)));
  }
  if (k.order() != 2) {
    throw PreconditionError("fast W~_n supports kernels of order 1 or 2 only");
  }
  check_size(n, 4, "W_n");

  // Pair values h_ij, centered; differences of pair values are unaffected.
  std::vector<double> h(n * n, 0.0);
  CompensatedSum total;
  double pair[2];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      pair[0] = x[i];
      pair[1] = x[j];
      const double v = k.eval_unchecked(pair);
      h[i * n + j] = v;
      h[j * n + i] = v;
      total.add(v);
    }
  }
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  const double mean = total.value() / pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) h[i * n + j] -= mean;
    }
  }

  // Sum over unordered pairs {P, Q} of distinct index pairs of (h_P - h_Q)^2
  // is N * sum h^2 - (sum h)^2. Subtract the pairs {P, Q} that share an index;
  // what remains runs over the three pairings of every 4-subset.
  CompensatedSum s1;
  CompensatedSum s2;
  CompensatedSum overlapping;
  for (std::size_t i = 0; i < n; ++i) {
    CompensatedSum r1;
    CompensatedSum r2;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double v = h[i * n + j];
      r1.add(v);
      r2.add(v * v);
      if (j > i) {
        s1.add(v);
        s2.add(v * v);
      }
    }
    const double a = r1.value();
    overlapping.add(static_cast<double>(n - 1) * r2.value());
    overlapping.add(-a * a);
  }
  const double sum1 = s1.value();
  CompensatedSum disjoint;
  disjoint.add(pairs * s2.value());
  disjoint.add(-sum1 * sum1);
  disjoint.add(-overlapping.value());
  const double quads = static_cast<double>(binomial(n, 4));
  return clamp_nonnegative(disjoint.value() / (2.0 * 3.0 * quads), "W~_n");
}

UStatSummary summarize(const Sample& sample, const KernelSpec& k, bool symmetrized,
                       std::uint64_t cap) {
  UStatSummary s;
  s.m = k.order();
  s.n = sample.size();
  s.symmetrized = symmetrized;
  s.u_n = compute_ustat(sample, k, cap);
  if (s.n >= 2 * s.m) s.w_n = compute_w(sample, VarianceKernel(k, symmetrized), cap);
  if (s.n >= 2) s.s2 = compute_sample_variance(sample);
  return s;
}

}  // namespace uci

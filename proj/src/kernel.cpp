#include "uci/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "uci/combinations.hpp"
#include "uci/errors.hpp"
#include "uci/philox.hpp"

namespace uci {
namespace {

void check_arity(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got) {
    std::ostringstream os;
    os << what << " expects " << expected << " points, got " << got;
    throw PreconditionError(os.str());
  }
}

}  // namespace

KernelSpec::KernelSpec(std::string name, std::size_t order, double range_lo, double range_hi,
                       KernelFn fn, bool symmetric, KernelKind kind)
    : name_(std::move(name)),
      order_(order),
      range_lo_(range_lo),
      range_hi_(range_hi),
      fn_(std::make_shared<const KernelFn>(std::move(fn))),
      symmetric_(symmetric),
      kind_(kind) {
  if (order_ == 0) throw PreconditionError("kernel order must be at least 1");
  if (!(range_lo_ < range_hi_)) throw PreconditionError("kernel range requires a < b");
  if (!*fn_) throw PreconditionError("kernel evaluation rule is empty");
}

double KernelSpec::bernstein_c() const {
  return 2.0 * std::max(std::abs(range_lo_), std::abs(range_hi_));
}

bool KernelSpec::within_unit_interval() const { return range_lo_ >= 0.0 && range_hi_ <= 1.0; }

double KernelSpec::eval_unchecked(std::span<const double> points) const {
  const double v = (*fn_)(points);
  if (!(v >= range_lo_ && v <= range_hi_)) {
    std::ostringstream os;
    os.precision(17);
    os << "kernel '" << name_ << "' returned " << v << " outside its declared range ["
       << range_lo_ << ", " << range_hi_ << "]";
    throw KernelRangeError(os.str());
  }
  return v;
}

double eval_kernel(const KernelSpec& k, std::span<const double> points) {
  check_arity(k.order(), points.size(), "kernel");
  return k.eval_unchecked(points);
}

KernelSpec identity_kernel(double lo, double hi) {
  return KernelSpec(
      "mean", 1, lo, hi, [](std::span<const double> x) { return x[0]; }, true,
      KernelKind::identity);
}

KernelSpec variance_kernel(double lo, double hi) {
  const double w = hi - lo;
  return KernelSpec(
      "variance", 2, 0.0, w * w / 2.0,
      [](std::span<const double> x) {
        const double d = x[0] - x[1];
        return d * d / 2.0;
      },
      true, KernelKind::variance);
}

KernelSpec closure_kernel(std::string name, std::size_t order, double range_lo, double range_hi,
                          KernelFn fn, bool symmetric) {
  return KernelSpec(std::move(name), order, range_lo, range_hi, std::move(fn), symmetric);
}

KernelSpec rescale_to_unit(const KernelSpec& k) {
  const double a = k.range_lo();
  const double width = k.range_width();
  return KernelSpec(
      k.name() + "_unit", k.order(), 0.0, 1.0,
      [k, a, width](std::span<const double> x) { return (k.eval_unchecked(x) - a) / width; },
      k.symmetric());
}

double check_permutation_symmetry(const KernelSpec& k, std::span<const double> points,
                                  std::size_t trials, std::uint64_t seed) {
  const double reference = eval_kernel(k, points);
  std::vector<double> shuffled(points.begin(), points.end());
  PhiloxStream rng(seed, 0);
  double worst = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    worst = std::max(worst, std::abs(eval_kernel(k, shuffled) - reference));
  }
  return worst;
}

VarianceKernel::VarianceKernel(KernelSpec base, bool symmetrized)
    : base_(std::move(base)), symmetrized_(symmetrized) {}

double VarianceKernel::range_hi() const {
  const double w = base_.range_width();
  return w * w / 2.0;
}

double VarianceKernel::eval(std::span<const double> points) const {
  return symmetrized_ ? eval_eta_symmetrized(*this, points) : eval_eta(*this, points);
}

double eval_eta(const VarianceKernel& vk, std::span<const double> points) {
  check_arity(vk.order(), points.size(), "eta");
  const std::size_t m = vk.base().order();
  const double d = vk.base().eval_unchecked(points.first(m)) -
                   vk.base().eval_unchecked(points.subspan(m));
  return d * d / 2.0;
}

double eval_eta_symmetrized(const VarianceKernel& vk, std::span<const double> points) {
  check_arity(vk.order(), points.size(), "eta-tilde");
  const std::size_t m = vk.base().order();
  const std::size_t two_m = 2 * m;
  std::vector<double> first(m);
  std::vector<double> second(m);
  double total = 0.0;
  std::size_t count = 0;
  for_each_k_subset(two_m, m, [&](std::span<const std::size_t> chosen) {
    std::size_t f = 0;
    std::size_t s = 0;
    std::size_t c = 0;
    for (std::size_t i = 0; i < two_m; ++i) {
      if (c < m && chosen[c] == i) {
        first[f++] = points[i];
        ++c;
      } else {
        second[s++] = points[i];
      }
    }
    const double d = vk.base().eval_unchecked(first) - vk.base().eval_unchecked(second);
    total += d * d / 2.0;
    ++count;
  });
  return total / static_cast<double>(count);
}

}  // namespace uci

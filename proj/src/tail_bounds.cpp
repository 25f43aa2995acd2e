#include "uci/tail_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "uci/errors.hpp"

namespace uci {
namespace {

void check_eps(double eps) {
  if (!(eps > 0.0)) throw PreconditionError("tail bounds require eps > 0");
}

void check_order(std::size_t n, std::size_t m) {
  if (m < 1 || m > n) {
    std::ostringstream os;
    os << "tail bound requires 1 <= m <= n, got m=" << m << ", n=" << n;
    throw PreconditionError(os.str());
  }
}

void check_nonnegative(double v, const char* what) {
  if (!(v >= 0.0)) throw PreconditionError(std::string(what) + " must be nonnegative");
}

void check_positive(double v, const char* what) {
  if (!(v > 0.0)) throw PreconditionError(std::string(what) + " must be positive");
}

}  // namespace

double block_count(std::size_t n, std::size_t k, bool floor_free) {
  if (k == 0) throw PreconditionError("block size must be positive");
  if (floor_free) {
    return (static_cast<double>(n) - static_cast<double>(k) + 1.0) / static_cast<double>(k);
  }
  return static_cast<double>(n / k);
}

double generic_tail(const BoundParams& bp, double eps) {
  check_eps(eps);
  const double denom = bp.c_const + bp.d_const * eps;
  if (denom <= 0.0) return 0.0;
  return std::min(1.0, bp.a_const * std::exp(-bp.b_const * eps * eps / denom));
}

BoundParams hoeffding_ustat_params(std::size_t n, std::size_t m, double range_width,
                                   bool two_sided, bool floor_free) {
  check_order(n, m);
  check_positive(range_width, "range width");
  return {two_sided ? 2.0 : 1.0, 2.0 * block_count(n, m, floor_free), range_width * range_width,
          0.0};
}

BoundParams bernstein_ustat_params(std::size_t n, std::size_t m, double sigma_sq, double c,
                                   bool two_sided, bool floor_free) {
  check_order(n, m);
  check_nonnegative(sigma_sq, "sigma^2");
  check_nonnegative(c, "c");
  return {two_sided ? 2.0 : 1.0, block_count(n, m, floor_free), 2.0 * sigma_sq, 2.0 * c / 3.0};
}

double arcones_linear_coefficient(std::size_t m) {
  const double md = static_cast<double>(m);
  return std::pow(2.0, md + 3.0) * std::pow(md, md - 1.0) + (2.0 / 3.0) / (md * md);
}

BoundParams arcones_params(std::size_t n, const ArconesParams& ap, bool floor_free) {
  check_order(n, ap.m);
  check_nonnegative(ap.varsigma_sq, "varsigma^2");
  return {4.0, block_count(n, ap.m, floor_free),
          2.0 * static_cast<double>(ap.m) * ap.varsigma_sq, arcones_linear_coefficient(ap.m)};
}

BoundParams bennett_mean_params(std::size_t n, double big_sigma_sq, double c, bool two_sided,
                                bool as_printed) {
  if (n < 1) throw PreconditionError("mean bounds require n >= 1");
  check_nonnegative(big_sigma_sq, "Sigma_n^2");
  check_nonnegative(c, "c");
  const double rate = (two_sided && as_printed) ? 1.0 : static_cast<double>(n);
  return {two_sided ? 2.0 : 1.0, rate, big_sigma_sq / 2.0, 2.0 * c / 3.0};
}

BoundParams improved_hoeffding_mean_params(std::size_t n, double range_width, double var,
                                           bool two_sided) {
  if (n < 1) throw PreconditionError("mean bounds require n >= 1");
  check_positive(range_width, "range width");
  check_nonnegative(var, "variance");
  return {two_sided ? 2.0 : 1.0, 3.0 * static_cast<double>(n),
          range_width * range_width + 2.0 * var, 0.0};
}

BoundParams hoeffding_mean_params(std::size_t n, double range_width, bool two_sided) {
  if (n < 1) throw PreconditionError("mean bounds require n >= 1");
  check_positive(range_width, "range width");
  return {two_sided ? 2.0 : 1.0, 2.0 * static_cast<double>(n), range_width * range_width, 0.0};
}

double hoeffding_ustat_tail(std::size_t n, std::size_t m, double eps, double range_width,
                            bool two_sided, bool floor_free) {
  return generic_tail(hoeffding_ustat_params(n, m, range_width, two_sided, floor_free), eps);
}

double bernstein_ustat_tail(std::size_t n, std::size_t m, double eps, double sigma_sq, double c,
                            bool two_sided, bool floor_free) {
  return generic_tail(bernstein_ustat_params(n, m, sigma_sq, c, two_sided, floor_free), eps);
}

double arcones_tail(std::size_t n, double eps, const ArconesParams& ap, bool floor_free) {
  return generic_tail(arcones_params(n, ap, floor_free), eps);
}

double bennett_mean_tail(std::size_t n, double eps, double big_sigma_sq, double c, bool two_sided,
                         bool as_printed) {
  return generic_tail(bennett_mean_params(n, big_sigma_sq, c, two_sided, as_printed), eps);
}

double improved_hoeffding_mean_tail(std::size_t n, double eps, double range_width, double var,
                                    bool two_sided) {
  return generic_tail(improved_hoeffding_mean_params(n, range_width, var, two_sided), eps);
}

double hoeffding_mean_tail(std::size_t n, double eps, double range_width, bool two_sided) {
  return generic_tail(hoeffding_mean_params(n, range_width, two_sided), eps);
}

}  // namespace uci

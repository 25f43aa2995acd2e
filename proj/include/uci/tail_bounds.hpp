#pragma once

#include <cstddef>

namespace uci {

/// Parameters of the sub-gamma tail family
///   Pr(X >= eps) <= A exp(-B eps^2 / (C + D eps)).
/// D = 0 is the Hoeffding (sub-Gaussian) form.
struct BoundParams {
  double a_const = 1.0;
  double b_const = 1.0;
  double c_const = 0.0;
  double d_const = 0.0;
};

// Conditional variance of the first Hajek projection, used by Arcones'
// bound. Must be supplied by the caller; there is no estimator for it here.
struct ArconesParams {
  double varsigma_sq = 0.0;
  std::size_t m = 1;
};

// Number of independent blocks of size k in n points: floor(n/k), or its
// lower bound (n - k + 1)/k when floor_free is set.
double block_count(std::size_t n, std::size_t k, bool floor_free = false);

// min(1, A exp(-B eps^2 / (C + D eps))). With C = D = 0 the bound is the
// limit 0 for every eps > 0.
double generic_tail(const BoundParams& bp, double eps);

BoundParams hoeffding_ustat_params(std::size_t n, std::size_t m, double range_width,
                                   bool two_sided = false, bool floor_free = false);
BoundParams bernstein_ustat_params(std::size_t n, std::size_t m, double sigma_sq, double c,
                                   bool two_sided = false, bool floor_free = false);
BoundParams arcones_params(std::size_t n, const ArconesParams& ap, bool floor_free = false);
// as_printed drops the factor n from the two-sided exponent, reproducing the
// printed two-sided classic Bernstein display. One-sided is unaffected.
BoundParams bennett_mean_params(std::size_t n, double big_sigma_sq, double c, bool two_sided,
                                bool as_printed = false);
BoundParams improved_hoeffding_mean_params(std::size_t n, double range_width, double var,
                                           bool two_sided = false);
BoundParams hoeffding_mean_params(std::size_t n, double range_width, bool two_sided = false);

// 2^{m+3} m^{m-1} + (2/3) m^{-2}, the linear coefficient in Arcones' bound.
double arcones_linear_coefficient(std::size_t m);

// Upper bounds on Pr(U_n - theta >= eps) (or |U_n - theta| when two-sided).
double hoeffding_ustat_tail(std::size_t n, std::size_t m, double eps, double range_width,
                            bool two_sided = false, bool floor_free = false);
double bernstein_ustat_tail(std::size_t n, std::size_t m, double eps, double sigma_sq, double c,
                            bool two_sided = false, bool floor_free = false);
double arcones_tail(std::size_t n, double eps, const ArconesParams& ap, bool floor_free = false);

// Upper bounds on Pr(Xbar_n - E Xbar_n >= eps) (or its absolute value).
double bennett_mean_tail(std::size_t n, double eps, double big_sigma_sq, double c, bool two_sided,
                         bool as_printed = false);
double improved_hoeffding_mean_tail(std::size_t n, double eps, double range_width, double var,
                                    bool two_sided = false);
double hoeffding_mean_tail(std::size_t n, double eps, double range_width, bool two_sided = false);

}  // namespace uci

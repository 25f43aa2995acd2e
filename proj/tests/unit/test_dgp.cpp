#include <cmath>
#include <vector>

#include "doctest.h"
#include "uci/dgp.hpp"
#include "uci/errors.hpp"

using namespace uci;

TEST_CASE("true theta examples") {
  CHECK(true_theta(DgpSpec::bernoulli(0.5), variance_kernel()) == 0.25);
  CHECK(true_theta(DgpSpec::uniform01(), variance_kernel()) == doctest::Approx(1.0 / 12.0));
  CHECK(true_theta(DgpSpec::discrete({0.0, 1.0}, {0.3, 0.7}), identity_kernel()) ==
        doctest::Approx(0.7).epsilon(1e-15));
  const auto b = DgpSpec::beta(2.0, 5.0);
  CHECK(b.true_mean() == doctest::Approx(2.0 / 7.0));
  CHECK(b.true_variance() == doctest::Approx(10.0 / (49.0 * 8.0)));
}

TEST_CASE("discrete enumeration handles user kernels") {
  const auto d = DgpSpec::discrete({0.0, 0.5, 1.0}, {0.2, 0.5, 0.3});
  const auto absdiff = closure_kernel("absdiff", 2, 0.0, 1.0,
                                      [](std::span<const double> x) { return std::abs(x[0] - x[1]); });
  // E|X - Y| = 2 sum_{i<j} p_i p_j |x_i - x_j|
  const double expected = 2.0 * (0.2 * 0.5 * 0.5 + 0.2 * 0.3 * 1.0 + 0.5 * 0.3 * 0.5);
  CHECK(true_theta(d, absdiff) == doctest::Approx(expected).epsilon(1e-15));
  CHECK(true_theta(d, variance_kernel()) == doctest::Approx(d.true_variance()).epsilon(1e-14));
  CHECK_THROWS_AS(true_theta(DgpSpec::uniform01(), absdiff), PreconditionError);
}

TEST_CASE("DGP invariants") {
  for (const auto& d : {DgpSpec::bernoulli(0.1), DgpSpec::bernoulli(0.5), DgpSpec::uniform01(),
                        DgpSpec::beta(2.0, 5.0), DgpSpec::point_mass(0.3)}) {
    CHECK(d.true_variance() <= 0.25);
    CHECK(d.true_variance() >= 0.0);
  }
  CHECK(DgpSpec::bernoulli(0.1).true_variance() == doctest::Approx(0.09));
  CHECK(DgpSpec::point_mass(0.3).true_variance() == 0.0);
  CHECK_THROWS_AS(DgpSpec::bernoulli(1.5), PreconditionError);
  CHECK_THROWS_AS(DgpSpec::beta(0.0, 1.0), PreconditionError);
  CHECK_THROWS_AS(DgpSpec::discrete({0.0, 2.0}, {0.5, 0.5}), PreconditionError);
  CHECK_THROWS_AS(DgpSpec::discrete({0.0, 1.0}, {0.5, 0.6}), PreconditionError);
}

TEST_CASE("draws match the moments") {
  for (const auto& d : {DgpSpec::bernoulli(0.1), DgpSpec::uniform01(), DgpSpec::beta(2.0, 5.0),
                        DgpSpec::beta(0.5, 0.5), DgpSpec::discrete({0.0, 0.5, 1.0}, {0.2, 0.5, 0.3})}) {
    PhiloxStream rng(10, 0);
    const auto xs = d.draw(rng, 200000);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (double x : xs) {
      CHECK_UNARY(x >= 0.0 && x <= 1.0);
      sum += x;
      sum_sq += x * x;
    }
    const double mean = sum / static_cast<double>(xs.size());
    const double var = sum_sq / static_cast<double>(xs.size()) - mean * mean;
    INFO(d.name());
    const double se = std::sqrt(d.true_variance() / static_cast<double>(xs.size()));
    CHECK(std::abs(mean - d.true_mean()) < 5.0 * se);
    CHECK(var == doctest::Approx(d.true_variance()).epsilon(0.02));
  }
}

TEST_CASE("gamma sampler mean") {
  PhiloxStream rng(11, 0);
  for (double shape : {0.5, 1.0, 2.0, 7.5}) {
    double sum = 0.0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) sum += draw_gamma(rng, shape);
    CHECK(sum / draws == doctest::Approx(shape).epsilon(0.03));
  }
}

TEST_CASE("draws are reproducible") {
  PhiloxStream a(3, 9);
  PhiloxStream b(3, 9);
  CHECK(DgpSpec::beta(2.0, 5.0).draw(a, 50) == DgpSpec::beta(2.0, 5.0).draw(b, 50));
}

TEST_CASE("parse_dgp") {
  CHECK(parse_dgp("bernoulli(0.5)").true_mean() == 0.5);
  CHECK(parse_dgp("uniform01").family() == DgpFamily::uniform01);
  CHECK(parse_dgp("beta(2,5)").name() == "beta(2,5)");
  CHECK(parse_dgp("point(0.3)").true_mean() == doctest::Approx(0.3));
  CHECK(parse_dgp("discrete(0:0.3|1:0.7)").true_mean() == doctest::Approx(0.7));
  CHECK_THROWS_AS(parse_dgp("gauss(0,1)"), ParseError);
  CHECK_THROWS_AS(parse_dgp("beta(2)"), ParseError);
  CHECK_THROWS_AS(parse_dgp("bernoulli(x)"), ParseError);
}

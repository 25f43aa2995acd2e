#include <cmath>
#include <functional>
#include <vector>

#include "doctest.h"
#include "uci/errors.hpp"
#include "uci/philox.hpp"
#include "uci/tail_bounds.hpp"

using namespace uci;

namespace {

double fl(std::size_t n, std::size_t k) { return static_cast<double>(n / k); }

}  // namespace

TEST_CASE("tail bound examples") {
  CHECK(hoeffding_ustat_tail(8, 2, 0.5, 1.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  CHECK(hoeffding_ustat_tail(8, 2, 0.5, 1.0) == doctest::Approx(0.135335).epsilon(1e-6));
  CHECK(bernstein_ustat_tail(4, 2, 1.0, 0.5, 1.0) == doctest::Approx(std::exp(-1.2)).epsilon(1e-14));
  CHECK(improved_hoeffding_mean_tail(3, 1.0, 1.0, 0.0) == doctest::Approx(std::exp(-9.0)).epsilon(1e-14));
  CHECK(hoeffding_mean_tail(2, 0.5, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(generic_tail({1, 1, 1, 0}, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("tails tend to one as eps shrinks") {
  const double tiny = 1e-12;
  CHECK(hoeffding_ustat_tail(8, 2, tiny, 1.0) == doctest::Approx(1.0));
  CHECK(bernstein_ustat_tail(8, 2, tiny, 0.1, 1.0) == doctest::Approx(1.0));
  CHECK(arcones_tail(8, tiny, {0.1, 2}) == 1.0);
  CHECK(bennett_mean_tail(8, tiny, 0.1, 1.0, false) == doctest::Approx(1.0));
  CHECK(hoeffding_mean_tail(8, tiny, 1.0) == doctest::Approx(1.0));
  CHECK(generic_tail({4, 1, 1, 0}, tiny) == 1.0);
}

TEST_CASE("doubling n squares the Hoeffding bound") {
  const double b8 = hoeffding_ustat_tail(8, 2, 0.3, 1.0);
  const double b16 = hoeffding_ustat_tail(16, 2, 0.3, 1.0);
  CHECK(b16 == doctest::Approx(b8 * b8).epsilon(1e-13));
}

TEST_CASE("degenerate and invalid parameters") {
  CHECK(generic_tail({1, 1, 0, 0}, 0.5) == 0.0);
  CHECK_THROWS_AS(generic_tail({1, 1, 1, 0}, 0.0), PreconditionError);
  CHECK_THROWS_AS(hoeffding_ustat_tail(3, 4, 0.1, 1.0), PreconditionError);
  CHECK_THROWS_AS(hoeffding_ustat_tail(3, 0, 0.1, 1.0), PreconditionError);
  CHECK_THROWS_AS(bernstein_ustat_tail(4, 2, 0.1, -1.0, 1.0), PreconditionError);
  CHECK_THROWS_AS(hoeffding_mean_tail(4, 0.1, 0.0), PreconditionError);
}

TEST_CASE("wrappers agree with the written-out formulas") {
  PhiloxStream rng(4, 0);
  for (int t = 0; t < 500; ++t) {
    const std::size_t m = 1 + rng.next_u64() % 3;
    const std::size_t n = m + rng.next_u64() % 60;
    const double eps = 0.01 + rng.uniform();
    const double w = 0.1 + 2.0 * rng.uniform();
    const double s2 = rng.uniform() * 0.3;
    const double c = 0.5 + rng.uniform();
    const double nd = static_cast<double>(n);
    const double md = static_cast<double>(m);
    auto capped = [](double v) { return std::min(1.0, v); };

    CHECK(hoeffding_ustat_tail(n, m, eps, w) ==
          doctest::Approx(capped(std::exp(-2.0 * fl(n, m) * eps * eps / (w * w)))).epsilon(1e-13));
    CHECK(hoeffding_ustat_tail(n, m, eps, w, true) ==
          doctest::Approx(capped(2.0 * std::exp(-2.0 * fl(n, m) * eps * eps / (w * w)))).epsilon(1e-13));
    CHECK(bernstein_ustat_tail(n, m, eps, s2, c) ==
          doctest::Approx(capped(std::exp(-fl(n, m) * eps * eps / (2.0 * s2 + 2.0 * c / 3.0 * eps))))
              .epsilon(1e-13));
    CHECK(bernstein_ustat_tail(n, m, eps, s2, c, true) ==
          doctest::Approx(capped(2.0 * std::exp(-fl(n, m) * eps * eps / (2.0 * s2 + 2.0 * c / 3.0 * eps))))
              .epsilon(1e-13));
    const double lin = std::pow(2.0, md + 3.0) * std::pow(md, md - 1.0) + 2.0 / 3.0 / (md * md);
    CHECK(arcones_tail(n, eps, {s2, m}) ==
          doctest::Approx(capped(4.0 * std::exp(-fl(n, m) * eps * eps / (2.0 * md * s2 + lin * eps))))
              .epsilon(1e-13));
    CHECK(bennett_mean_tail(n, eps, s2, c, false) ==
          doctest::Approx(capped(std::exp(-nd * eps * eps / (s2 / 2.0 + 2.0 * c / 3.0 * eps)))).epsilon(1e-13));
    CHECK(bennett_mean_tail(n, eps, s2, c, true) ==
          doctest::Approx(capped(2.0 * std::exp(-nd * eps * eps / (s2 / 2.0 + 2.0 * c / 3.0 * eps))))
              .epsilon(1e-13));
    CHECK(bennett_mean_tail(n, eps, s2, c, true, true) ==
          doctest::Approx(capped(2.0 * std::exp(-eps * eps / (s2 / 2.0 + 2.0 * c / 3.0 * eps)))).epsilon(1e-13));
    CHECK(improved_hoeffding_mean_tail(n, eps, w, s2) ==
          doctest::Approx(capped(std::exp(-3.0 * nd * eps * eps / (w * w + 2.0 * s2)))).epsilon(1e-13));
    CHECK(hoeffding_mean_tail(n, eps, w, true) ==
          doctest::Approx(capped(2.0 * std::exp(-2.0 * nd * eps * eps / (w * w)))).epsilon(1e-13));
  }
}

TEST_CASE("Arcones linear coefficient") {
  CHECK(arcones_linear_coefficient(1) == doctest::Approx(16.0 + 2.0 / 3.0));
  CHECK(arcones_linear_coefficient(2) == doctest::Approx(64.0 + 1.0 / 6.0));
}

TEST_CASE("tails are nonincreasing in eps and n and lie in (0, 1]") {
  PhiloxStream rng(6, 0);
  for (int t = 0; t < 300; ++t) {
    const std::size_t m = 1 + rng.next_u64() % 3;
    const std::size_t n = m + rng.next_u64() % 40;
    const double eps = 0.01 + 0.5 * rng.uniform();
    const double s2 = 0.25 * rng.uniform();
    const std::vector<std::function<double(std::size_t, double)>> tails = {
        [&](std::size_t nn, double e) { return hoeffding_ustat_tail(nn, m, e, 1.0); },
        [&](std::size_t nn, double e) { return bernstein_ustat_tail(nn, m, e, s2, 1.0, true); },
        [&](std::size_t nn, double e) { return arcones_tail(nn, e, {s2, m}); },
        [&](std::size_t nn, double e) { return bennett_mean_tail(nn, e, s2, 1.0, false); },
        [&](std::size_t nn, double e) { return improved_hoeffding_mean_tail(nn, e, 1.0, s2); },
        [&](std::size_t nn, double e) { return hoeffding_mean_tail(nn, e, 1.0); },
    };
    for (const auto& f : tails) {
      const double base = f(n, eps);
      CHECK(base > 0.0);
      CHECK(base <= 1.0);
      CHECK(f(n, eps * 1.5) <= base);
      CHECK(f(n + 1, eps) <= base);
    }
  }
}

TEST_CASE("improved Hoeffding never exceeds classic Hoeffding when 4 var <= width^2") {
  PhiloxStream rng(7, 0);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 1 + rng.next_u64() % 100;
    const double w = 0.1 + 3.0 * rng.uniform();
    const double var = rng.uniform() * w * w / 4.0;
    const double eps = 0.001 + rng.uniform() * w;
    CHECK(improved_hoeffding_mean_tail(n, eps, w, var) <= hoeffding_mean_tail(n, eps, w) * (1.0 + 1e-14));
  }
  // Equality at the binary extremes.
  CHECK(improved_hoeffding_mean_tail(10, 0.2, 1.0, 0.25) ==
        doctest::Approx(hoeffding_mean_tail(10, 0.2, 1.0)).epsilon(1e-14));
  CHECK(improved_hoeffding_mean_tail(10, 0.2, 1.0, 0.1) < hoeffding_mean_tail(10, 0.2, 1.0));
}

TEST_CASE("block counts") {
  CHECK(block_count(10, 3) == 3.0);
  CHECK(block_count(10, 3, true) == doctest::Approx(8.0 / 3.0));
  CHECK(block_count(12, 4, true) == doctest::Approx(9.0 / 4.0));
  for (std::size_t n = 1; n < 50; ++n) {
    for (std::size_t k = 1; k <= n; ++k) CHECK(block_count(n, k, true) <= block_count(n, k));
  }
  CHECK_THROWS_AS(block_count(4, 0), PreconditionError);
}

// Copyright 2026 The polldrift Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "oracles.hpp"
#include "polldrift/ot.hpp"
#include "polldrift/rng.hpp"

using namespace polldrift;

namespace {

std::vector<double> random_values(Rng& rng, std::size_t n, double scale = 4.0) {
  std::vector<double> v(n);
  for (auto& x : v) x = scale * (rng.uniform01() - 0.5);
  return v;
}

}  // namespace

TEST_SUITE("ot") {
  TEST_CASE("w1 between empiricals: point cases") {
    const EmpiricalDistribution a({0.0});
    const EmpiricalDistribution b({1.0});
    CHECK(w1_empirical_empirical(a, a) == 0.0);
    CHECK(w1_empirical_empirical(a, b) == doctest::Approx(1.0));
    CHECK(w1_empirical_empirical(EmpiricalDistribution({0.0, 2.0}),
                                 EmpiricalDistribution({1.0, 3.0})) == doctest::Approx(1.0));
    CHECK_THROWS_AS(w1_empirical_empirical(EmpiricalDistribution{}, a),
                    std::invalid_argument);
  }

  TEST_CASE("w1 equal sizes matches the transportation LP") {
    Rng rng(11);
    for (int inst = 0; inst < 100; ++inst) {
      const std::size_t n = 1 + rng.below(8);
      const auto x = random_values(rng, n);
      const auto y = random_values(rng, n);
      const double got = w1_empirical_empirical(EmpiricalDistribution(x),
                                                EmpiricalDistribution(y));
      CHECK(got == doctest::Approx(oracle::lp_w1(x, y)).epsilon(1e-11));
    }
  }

  TEST_CASE("w1 unequal sizes matches the transportation LP") {
    Rng rng(12);
    for (int inst = 0; inst < 100; ++inst) {
      const std::size_t n = 1 + rng.below(8);
      std::size_t m = 1 + rng.below(8);
      if (m == n) m = n % 8 + 1;  // n+1, or 1 when n = 8
      const auto x = random_values(rng, n);
      const auto y = random_values(rng, m);
      const double got = w1_empirical_empirical(EmpiricalDistribution(x),
                                                EmpiricalDistribution(y));
      CHECK(got == doctest::Approx(oracle::lp_w1(x, y)).epsilon(1e-10));
    }
  }

  TEST_CASE("w1 metric properties on random triples") {
    Rng rng(13);
    for (int inst = 0; inst < 60; ++inst) {
      const EmpiricalDistribution a(random_values(rng, 1 + rng.below(10)));
      const EmpiricalDistribution b(random_values(rng, 1 + rng.below(10)));
      const EmpiricalDistribution c(random_values(rng, 1 + rng.below(10)));
      const double ab = w1_empirical_empirical(a, b);
      const double ba = w1_empirical_empirical(b, a);
      const double ac = w1_empirical_empirical(a, c);
      const double cb = w1_empirical_empirical(c, b);
      CHECK(ab >= 0.0);
      CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
      CHECK(ab <= ac + cb + 1e-12);
      CHECK(w1_empirical_empirical(a, a) == 0.0);
    }
  }

  TEST_CASE("w1 against an analytic cdf: hand integrals") {
    const auto uniform = DistributionSpec::beta(1, 1);
    CHECK(w1_empirical_cdf(EmpiricalDistribution({0.5}), uniform) == doctest::Approx(0.25));
    CHECK(w1_empirical_cdf(EmpiricalDistribution({0.25, 0.75}), uniform) ==
          doctest::Approx(0.125));
  }

  TEST_CASE("w1 against an analytic cdf matches dense numeric integration") {
    Rng rng(14);
    for (const auto& d : {DistributionSpec::beta(2, 2), DistributionSpec::beta(2, 5),
                          DistributionSpec::normal(0, 1)}) {
      for (int inst = 0; inst < 5; ++inst) {
        std::vector<double> xs(6 + rng.below(20));
        for (auto& x : xs) x = d.sample(rng);
        const EmpiricalDistribution e(xs);
        const double got = w1_empirical_cdf(e, d);
        const double lo = std::min(e.min(), d.support_lo());
        const double hi = std::max(e.max(), d.support_hi());
        const double num = oracle::simpson(
            [&](double t) { return std::fabs(e.cdf(t) - d.cdf(t)); }, lo, hi, 200'000);
        CHECK(got == doctest::Approx(num).epsilon(5e-4));
      }
    }
  }

  TEST_CASE("w1 of exact quantile grids shrinks with refinement") {
    const auto d = DistributionSpec::beta(2, 2);
    double prev = 1e9;
    for (std::size_t n : {10, 100, 1000}) {
      std::vector<double> grid(n);
      for (std::size_t i = 0; i < n; ++i) {
        grid[i] = d.quantile((static_cast<double>(i) + 0.5) / static_cast<double>(n));
      }
      const double v = w1_empirical_cdf(EmpiricalDistribution(grid), d);
      CHECK(v < prev);
      CHECK(v < 1.0 / static_cast<double>(n));  // quantile-spacing scale
      prev = v;
    }
  }

  TEST_CASE("gaussian W2") {
    CHECK(w2_gaussian(0, 1, 0, 1) == 0.0);
    CHECK(w2_gaussian(0, 1, 1, 1) == doctest::Approx(1.0));
    CHECK(w2_gaussian(0, 1, 0, 2) == doctest::Approx(1.0));
    CHECK_THROWS_AS(w2_gaussian(0, 0, 0, 1), std::invalid_argument);
  }

  TEST_CASE("qq correlation") {
    const auto n01 = DistributionSpec::normal(0, 1);
    CHECK(qq_pearson(n01, n01, 100) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(qq_pearson(n01, DistributionSpec::normal(3, 2), 500) ==
          doctest::Approx(1.0).epsilon(1e-12));

    // Hand-rolled grid correlation as the reference at grid 10^4.
    const auto beta22 = DistributionSpec::beta(2, 2);
    const auto narrow = DistributionSpec::normal(0.5, 0.05);
    const std::size_t grid = 10'000;
    double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
    for (std::size_t k = 0; k < grid; ++k) {
      const double q = (k + 0.5) / grid;
      const double a = beta22.quantile(q);
      const double b = narrow.quantile(q);
      sa += a;
      sb += b;
      saa += a * a;
      sbb += b * b;
      sab += a * b;
    }
    const double kd = static_cast<double>(grid);
    const double want = (sab - sa * sb / kd) /
                        std::sqrt((saa - sa * sa / kd) * (sbb - sb * sb / kd));
    const double got = qq_pearson(beta22, narrow, grid);
    CHECK(got == doctest::Approx(want).epsilon(1e-9));
    CHECK(got > 0.9);
    CHECK(got < 1.0);

    CHECK_THROWS_AS(qq_pearson(EmpiricalDistribution({5.0, 5.0, 5.0}), n01, 100),
                    std::domain_error);
    CHECK_THROWS_AS(qq_pearson(n01, n01, 2), std::invalid_argument);
  }

  TEST_CASE("two-sample K-S") {
    const EmpiricalDistribution same({1.0, 2.0, 3.0});
    const auto r0 = ks_two_sample(same, same);
    CHECK(r0.d_stat == 0.0);
    CHECK(r0.p_value == 1.0);

    const auto r1 = ks_two_sample(EmpiricalDistribution({0.0, 1.0}),
                                  EmpiricalDistribution({5.0, 6.0}));
    CHECK(r1.d_stat == doctest::Approx(1.0));

    const auto r2 = ks_two_sample(EmpiricalDistribution({1, 2, 3, 4}),
                                  EmpiricalDistribution({3, 4, 5, 6}));
    CHECK(r2.d_stat == doctest::Approx(0.5));
  }

  TEST_CASE("K-S statistic invariant under increasing transforms") {
    Rng rng(15);
    for (int inst = 0; inst < 40; ++inst) {
      auto x = random_values(rng, 3 + rng.below(30));
      auto y = random_values(rng, 3 + rng.below(30));
      const double d0 =
          ks_two_sample(EmpiricalDistribution(x), EmpiricalDistribution(y)).d_stat;
      for (auto& v : x) v = std::exp(v);
      for (auto& v : y) v = std::exp(v);
      const double d1 =
          ks_two_sample(EmpiricalDistribution(x), EmpiricalDistribution(y)).d_stat;
      CHECK(d0 == doctest::Approx(d1).epsilon(1e-14));
    }
  }

  TEST_CASE("kolmogorov survival function") {
    CHECK(kolmogorov_survival(0.0) == 1.0);
    // Frozen references from an independent evaluation of both theta series.
    CHECK(kolmogorov_survival(0.5) == doctest::Approx(0.9639452436648751).epsilon(1e-12));
    CHECK(kolmogorov_survival(1.0) == doctest::Approx(0.2699996716773546).epsilon(1e-12));
    CHECK(kolmogorov_survival(1.3581) == doctest::Approx(0.0499996304316674).epsilon(1e-10));
    CHECK(kolmogorov_survival(1.6276) == doctest::Approx(0.010001537333060776).epsilon(1e-10));
    CHECK(kolmogorov_survival(2.0) == doctest::Approx(0.0006709252557796953).epsilon(1e-10));
    // Agreement across the series switch point.
    CHECK(kolmogorov_survival(1.1799999) ==
          doctest::Approx(0.12345386765882205).epsilon(1e-10));
    CHECK(kolmogorov_survival(1.1800001) ==
          doctest::Approx(0.12345375120073161).epsilon(1e-10));
  }
}

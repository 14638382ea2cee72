// SPDX-FileCopyrightText: Copyright (c) 2026 The stablefp authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include "stablefp/densities.hpp"
#include "stablefp/positive_stable.hpp"
#include "stablefp/tabulated_cdf.hpp"
#include "stablefp/types.hpp"

using namespace stablefp;

namespace {

// Log-logistic law F(x) = x / (1 + x): both tails are exact power laws.
TabulatedCdf log_logistic(int n) {
  return TabulatedCdf::build(
      [](double x) {
        return TabulatedCdf::Node{x, x / (1.0 + x), 1.0 / (1.0 + x), 1.0 / ((1.0 + x) * (1.0 + x))};
      },
      1e-4, 1e4, n, {TailModel::Kind::power, 1.0}, {TailModel::Kind::power, 1.0});
}

}  // namespace

TEST_CASE("hermite interpolation of a known law") {
  const TabulatedCdf t = log_logistic(400);
  CHECK(t.size() == 400);
  for (double x = 1.3e-4; x < 1e4; x *= 1.37) {
    CAPTURE(x);
    CHECK(t.cdf(x) == doctest::Approx(x / (1.0 + x)).epsilon(1e-9));
    CHECK(t.survival(x) == doctest::Approx(1.0 / (1.0 + x)).epsilon(1e-9));
    CHECK(t.density(x) == doctest::Approx(1.0 / ((1.0 + x) * (1.0 + x))).epsilon(1e-6));
  }
}

TEST_CASE("power-law tails beyond the table") {
  const TabulatedCdf t = log_logistic(200);
  CHECK(t.cdf(1e-8) == doctest::Approx(1e-8).epsilon(1e-3));
  CHECK(t.survival(1e9) == doctest::Approx(1e-9).epsilon(1e-3));
  CHECK(t.quantile(1e-9) == doctest::Approx(1e-9).epsilon(1e-3));
  CHECK(t.quantile(1.0 - 1e-10) == doctest::Approx(1e10).epsilon(1e-2));
  CHECK(t.cdf(0.0) == 0.0);
}

TEST_CASE("quantile inverts the distribution function") {
  const TabulatedCdf t = log_logistic(300);
  for (double p : {1e-6, 0.01, 0.3, 0.5, 0.77, 0.999, 1.0 - 1e-7}) {
    CAPTURE(p);
    CHECK(t.cdf(t.quantile(p)) == doctest::Approx(p).epsilon(1e-10));
    // Beyond the last node the matched tail is exact only to O(1/x).
    const double x = p / (1.0 - p);
    CHECK(t.quantile(p) == doctest::Approx(x).epsilon(x < 1e4 ? 1e-7 : 1e-3));
  }
  CHECK(t.quantile(0.0) == 0.0);
  CHECK(std::isinf(t.quantile(1.0)));
  CHECK_THROWS_AS(t.quantile(-0.1), DomainError);
  CHECK_THROWS_AS(t.quantile(std::nan("")), DomainError);
}

TEST_CASE("shared tables agree with direct evaluation") {
  for (double a : {1.2, 1.5, 1.8}) {
    const StabilityIndex idx(a);
    const TabulatedCdf& tt = tabulated_cdf(DensityName::T, idx);
    const TabulatedCdf& tb = tabulated_cdf(DensityName::Tbar, idx);
    const TabulatedCdf& th = tabulated_cdf(DensityName::That1, idx);
    const TabulatedCdf& t1 = tabulated_cdf(DensityName::T1, idx);
    const PositiveStableKernel k(idx.beta());
    for (double x : {1e-4, 1e-2, 0.3, 1.0, 4.0, 50.0, 1e4}) {
      CAPTURE(a);
      CAPTURE(x);
      CHECK(tt.cdf(x) == doctest::Approx(cdf_T(idx, x).value).epsilon(1e-8));
      CHECK(tb.survival(x) == doctest::Approx(survival_Tbar(idx, x).value).epsilon(1e-8));
      CHECK(th.survival(x) == doctest::Approx(k.survival(x).value).epsilon(1e-8));
      CHECK(t1.cdf(x) == doctest::Approx(cdf_T1(idx, x).total.value).epsilon(1e-6));
      CHECK(t1.survival(x) == doctest::Approx(survival_T1(idx, x).total.value).epsilon(1e-6));
      CHECK(t1.density(x) ==
            doctest::Approx(density_by_name(DensityName::T1, idx, x).value).epsilon(1e-6));
    }
  }
}

TEST_CASE("tables are monotone") {
  const StabilityIndex idx(1.5);
  const TabulatedCdf& t1 = tabulated_cdf(DensityName::T1, idx);
  double prev = 0.0;
  for (double x = 1e-9; x < 1e25; x *= 1.1) {
    const double c = t1.cdf(x);
    CHECK(c >= prev);
    CHECK(c <= 1.0);
    prev = c;
  }
}

TEST_CASE("tables are built once under concurrent first use") {
  const StabilityIndex idx(1.35);
  std::vector<const TabulatedCdf*> seen(4, nullptr);
  std::vector<std::thread> threads;
  for (int i = 0; i < 4; ++i) {
    threads.emplace_back([&, i] { seen[i] = &tabulated_cdf(DensityName::T, idx); });
  }
  for (auto& th : threads) th.join();
  for (auto* p : seen) CHECK(p == seen.front());
  CHECK_THROWS_AS(tabulated_cdf(DensityName::g_That1, idx), DomainError);
}

TEST_CASE("distribution of S1 switches from the series to the T1 table") {
  for (double a : {1.2, 1.5, 1.8}) {
    const StabilityIndex idx(a);
    const double limit = s1_series_limit(idx);
    CHECK(limit > 0.5);
    // Series and table agree on both sides of the switch.
    for (double x : {0.8 * limit, limit}) {
      const double from_table =
          tabulated_cdf(DensityName::T1, idx).survival(std::pow(x, -a));
      CHECK(cdf_S1_series(idx, x).value == doctest::Approx(from_table).epsilon(1e-6));
    }
    CHECK(cdf_S1(idx, 0.5 * limit).from_series);
    CHECK_FALSE(cdf_S1(idx, 2.0 * limit).from_series);
    CHECK(cdf_S1(idx, 0.0).value == 0.0);
    // P[S1 > x] = P[T1 < x^-a] ~ x^-a / -Gamma(1 - a).
    const double x = 1e6;
    CHECK(1.0 - cdf_S1(idx, x).value ==
          doctest::Approx(-std::pow(x, -a) / std::tgamma(1.0 - a)).epsilon(1e-3));
  }
}

// SPDX-FileCopyrightText: Copyright (c) 2026 The stablefp authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "stablefp/densities.hpp"
#include "stablefp/mittag_leffler.hpp"
#include "stablefp/positive_stable.hpp"
#include "stablefp/samplers.hpp"
#include "stablefp/types.hpp"

using namespace stablefp;
using std::numbers::pi;

namespace {

double mass(const std::function<double(double)>& f, double tol = 1e-10) {
  boost::math::quadrature::exp_sinh<double> q;
  return q.integrate(f, tol);
}

double integrate(const std::function<double(double)>& f, double a, double b) {
  boost::math::quadrature::tanh_sinh<double> q;
  return q.integrate(f, a, b, 1e-10);
}

}  // namespace

TEST_CASE("law of T") {
  const StabilityIndex idx(1.5);
  CHECK(density_T(idx, 1.0) == doctest::Approx(2.0 / (3.0 * pi)).epsilon(1e-14));
  const StabilityIndex i125(1.25);
  CHECK(mass([&](double t) { return density_T(i125, t); }) == doctest::Approx(1.0).epsilon(1e-9));
  const double t = 1e8;
  CHECK(t * t * density_T(idx, t) / std::pow(t, 1.0 / 1.5) ==
        doctest::Approx(2.0 / (3.0 * pi)).epsilon(1e-4));
}

TEST_CASE("distribution function of T") {
  const StabilityIndex idx(1.5);
  CHECK(cdf_T(idx, 0.0).value == 0.0);
  CHECK(cdf_T(idx, 1e-8).value / 1e-8 == doctest::Approx(2.0 / (3.0 * pi)).epsilon(1e-6));
  const double t = 1e6;
  CHECK(survival_T(idx, t).value * std::pow(t, 1.0 - 1.0 / 1.5) ==
        doctest::Approx(2.0 / pi).epsilon(0.01));
  for (double x : {0.1, 1.0, 10.0}) {
    const double direct = integrate([&](double u) { return density_T(idx, u); }, 0.0, x);
    CHECK(cdf_T(idx, x).value == doctest::Approx(direct).epsilon(1e-9));
    CHECK(cdf_T(idx, x).value + survival_T(idx, x).value == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("the two mixture components of T") {
  const StabilityIndex idx(1.5);
  // With unit mass for both, (1/3) f_Ttilde(1) + (2/3) f_Tbar(1) = f_T(1) = 2/(3 pi).
  CHECK(density_Ttilde(idx, 1.0) == doctest::Approx(1.0 / pi).epsilon(1e-14));
  CHECK(density_Tbar(idx, 1.0) == doctest::Approx(1.0 / (2.0 * pi)).epsilon(1e-14));
  const StabilityIndex i13(1.3);
  CHECK(mass([&](double u) { return density_Ttilde(i13, u); }) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(mass([&](double u) { return density_Tbar(i13, u); }) == doctest::Approx(1.0).epsilon(1e-9));
  for (double a : {1.2, 1.5, 1.8}) {
    const StabilityIndex ix(a);
    for (double t : {0.01, 0.5, 3.0, 100.0}) {
      CHECK(density_T(ix, t) == doctest::Approx(weight_g(ix) * density_Ttilde(ix, t) +
                                                weight_h(ix) * density_Tbar(ix, t))
                                    .epsilon(1e-13));
    }
    CHECK(weight_g(ix) + weight_h(ix) == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("Ttilde distribution and quantile") {
  const StabilityIndex idx(1.5);
  for (double u : {0.2, 1.0, 7.0}) {
    const double direct = integrate([&](double v) { return density_Ttilde(idx, v); }, 0.0, u);
    CHECK(cdf_Ttilde(idx, u) == doctest::Approx(direct).epsilon(1e-10));
    CHECK(cdf_Ttilde(idx, u) + survival_Ttilde(idx, u) == doctest::Approx(1.0).epsilon(1e-14));
  }
  for (double p : {1e-6, 0.1, 0.5, 0.9, 1.0 - 1e-9}) {
    CHECK(cdf_Ttilde(idx, quantile_Ttilde(idx, p)) == doctest::Approx(p).epsilon(1e-10));
  }
}

TEST_CASE("That1 integral representation") {
  const StabilityIndex idx(1.5);
  const double lt =
      mass([&](double t) { return std::exp(-t) * density_That1_integral(idx, t).value; }, 1e-12);
  CHECK(lt == doctest::Approx(std::exp(-1.0)).epsilon(1e-8));
  CHECK(lt == doctest::Approx(0.3678794).epsilon(1e-7));
  CHECK(std::abs(mass([&](double t) { return density_That1_integral(idx, t).value; }) - 1.0) < 1e-6);
  // Against the Kanter representation, which is an unrelated integral.
  const PositiveStableKernel k(idx.beta());
  for (double t : {0.05, 0.5, 2.0, 40.0}) {
    CHECK(density_That1_integral(idx, t).value == doctest::Approx(k.density(t).value).epsilon(1e-9));
  }
}

TEST_CASE("That1 series representation") {
  const StabilityIndex idx(1.5);
  CHECK(std::abs(density_That1_series(idx, 2.0).value - density_That1_integral(idx, 2.0).value) <
        1e-8);
  double ratio = 0.0;
  const EvalResult s = positive_stable_density_series(idx.beta(), 10.0, 1e-10, &ratio);
  CHECK(s.value > 0.0);
  CHECK(ratio < 10.0);
  for (double a : {1.2, 1.5, 1.8}) {
    const StabilityIndex ix(a);
    const double lead = -1.0 / std::tgamma(-ix.beta());
    CHECK(lead > 0.0);
    const double t = 1e8;
    CHECK(density_That1_series(ix, t).value / std::pow(t, -1.0 - ix.beta()) ==
          doctest::Approx(lead).epsilon(1e-4));
  }
}

TEST_CASE("density g by three representations") {
  const StabilityIndex idx(1.5);
  const double gi = density_g(idx, 1.0, GMethod::integral).value;
  const double gt = density_g(idx, 1.0, GMethod::transform).value;
  CHECK(std::abs(gi - gt) <= 1e-6);
  CHECK(density_g(idx, 8.0, GMethod::series).value ==
        doctest::Approx(density_g(idx, 8.0, GMethod::integral).value).epsilon(1e-8));
  CHECK(std::abs(mass([&](double t) { return density_g(idx, t, GMethod::integral).value; }) - 1.0) <
        1e-6);
  for (double a : {1.2, 1.5, 1.8}) {
    const StabilityIndex ix(a);
    for (double t = 1e-2; t <= 1e2 * 1.0001; t *= std::pow(10.0, 0.25)) {
      CAPTURE(a);
      CAPTURE(t);
      CHECK(density_g(ix, t, GMethod::integral).value >= 0.0);
    }
  }
}

TEST_CASE("density h") {
  const StabilityIndex idx(1.5);
  CHECK(std::abs(mass([&](double t) { return density_h(idx, t, 1e-9).value; }) - 1.0) < 1e-6);
  for (double t = 1e-3; t <= 1e3; t *= 10.0) CHECK(density_h(idx, t).value >= 0.0);
}

TEST_CASE("h against draws of Tbar x That1") {
  const StabilityIndex idx(1.5);
  const std::size_t n = 100000;
  const SampleBatch b = sample_batch(idx, "Tbar_x_That1", n, RandomStream(42, 3), 1,
                                     [&](RandomStream& r) {
                                       const double tb = sample_Tbar(idx, r);
                                       return tb * sample_That1(idx, r);
                                     });
  std::vector<double> v = b.values;
  std::sort(v.begin(), v.end());
  double prev_x = 0.0;
  double cdf = 0.0;
  for (double x : {0.05, 0.2, 0.5, 1.0, 2.0, 5.0, 20.0, 100.0}) {
    cdf += integrate([&](double t) { return density_h(idx, t, 1e-9).value; }, prev_x, x);
    prev_x = x;
    const double emp =
        static_cast<double>(std::upper_bound(v.begin(), v.end(), x) - v.begin()) / static_cast<double>(n);
    CAPTURE(x);
    // Well inside the 1% Kolmogorov-Smirnov band at each probe.
    CHECK(std::abs(emp - cdf) < 1.63 / std::sqrt(static_cast<double>(n)));
  }
}

TEST_CASE("density of T1") {
  const StabilityIndex two(2.0);
  CHECK(density_T1(two, 1.0, T1Method::series).value ==
        doctest::Approx(std::exp(-0.25) / (2.0 * std::sqrt(pi))).epsilon(1e-14));
  CHECK(density_T1(two, 1.0, T1Method::product).value == doctest::Approx(0.2196956).epsilon(1e-6));
  const StabilityIndex idx(1.5);
  CHECK(std::abs(density_T1(idx, 2.0, T1Method::series).value -
                 density_T1(idx, 2.0, T1Method::product).value) <= 1e-6);
  const double g = density_g(idx, 1.0, GMethod::integral).value;
  const double h = density_h(idx, 1.0).value;
  CHECK(std::abs(density_T1(idx, 1.0, T1Method::convex).value - (g / 3.0 + h * 2.0 / 3.0)) < 1e-9);
  CHECK(std::abs(density_T1(idx, 1.0, T1Method::convex).value -
                 density_T1(idx, 1.0, T1Method::product).value) <= 1e-6);
}

TEST_CASE("T1 density integrates to one and matches its distribution function") {
  for (double a : {1.2, 1.8}) {
    const StabilityIndex idx(a);
    const auto f = [&](double t) { return density_by_name(DensityName::T1, idx, t, "auto", 1e-9).value; };
    CHECK(mass(f, 1e-8) == doctest::Approx(1.0).epsilon(1e-6));
    for (double x : {0.3, 2.0}) {
      const double direct = integrate(f, 0.0, x);
      const MixtureProbability c = cdf_T1(idx, x);
      CHECK(c.total.value == doctest::Approx(direct).epsilon(1e-7));
      CHECK(c.g_part + c.h_part == doctest::Approx(c.total.value).epsilon(1e-12));
      CHECK(c.total.value + survival_T1(idx, x).total.value == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("law of S1") {
  const StabilityIndex idx(1.5);
  CHECK(density_S1_series(idx, 1.0).value ==
        doctest::Approx(1.5 * density_T1(idx, 1.0, T1Method::product).value).epsilon(1e-8));
  const auto f = [&](double x) { return density_by_name(DensityName::S1, idx, x, "auto", 1e-9).value; };
  CHECK(mass(f, 1e-8) == doctest::Approx(1.0).epsilon(1e-6));
  const double x = 1e-6;
  const double lead = std::pow(x, idx.alpha() - 2.0) / (std::tgamma(idx.alpha() - 1.0) * std::tgamma(idx.beta()));
  CHECK(density_S1_series(idx, x).value == doctest::Approx(lead).epsilon(1e-3));
  for (double y : {0.5, 1.0, 2.0}) {
    CHECK(cdf_S1_series(idx, y).value == doctest::Approx(integrate(f, 0.0, y)).epsilon(1e-7));
  }
}

TEST_CASE("survival of the supremum at an exponential time") {
  for (double a : {1.2, 1.5, 1.8}) {
    CHECK(survival_S_tau({1.0, 0.0, StabilityIndex(a)}).value == doctest::Approx(1.0));
  }
  CHECK(survival_S_tau({1.0, 1.0, StabilityIndex(2.0)}).value ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-13));
  CHECK(survival_S_tau({2.0, 1.0, StabilityIndex(1.5)}).value ==
        doctest::Approx(eval_D(1.5, std::pow(2.0, 2.0 / 3.0)).value).epsilon(1e-13));
}

TEST_CASE("density by name and method") {
  const StabilityIndex idx(1.5);
  CHECK(parse_density_name("T1") == DensityName::T1);
  CHECK(parse_density_name("g") == DensityName::g_That1);
  CHECK(parse_density_name("h_That1") == DensityName::h_That1);
  CHECK(parse_density_name("Ttilde") == DensityName::Ttilde);
  CHECK_THROWS_AS(parse_density_name("T2"), DomainError);
  CHECK_THROWS_AS(density_by_name(DensityName::T1, idx, 1.0, "bogus"), DomainError);
  CHECK_THROWS_AS(density_by_name(DensityName::T1, idx, -1.0), DomainError);

  // auto serves large t from the series and small t by quadrature.
  const EvalResult big = density_by_name(DensityName::T1, idx, 5.0);
  const EvalResult small = density_by_name(DensityName::T1, idx, 1e-3);
  CHECK(big.method == Method::series);
  CHECK(small.method != Method::series);
  CHECK(small.value == doctest::Approx(density_T1(idx, 1e-3, T1Method::product).value).epsilon(1e-8));

  for (const char* m : {"integral", "series", "kanter"}) {
    CHECK(density_by_name(DensityName::That1, idx, 3.0, m).value ==
          doctest::Approx(density_That1_integral(idx, 3.0).value).epsilon(1e-9));
  }
  CHECK(density_by_name(DensityName::S1, idx, 0.7, "via_T1").value ==
        doctest::Approx(density_S1_series(idx, 0.7).value).epsilon(1e-8));
  CHECK(density_by_name(DensityName::T, idx, 0.7).value == density_T(idx, 0.7));
}

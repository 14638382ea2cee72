// SPDX-FileCopyrightText: Copyright (c) 2026 The stablefp authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <numbers>

#include "stablefp/positive_stable.hpp"
#include "stablefp/types.hpp"

using namespace stablefp;
using std::numbers::pi;

namespace {

// Levy law with E[exp(-lambda S)] = exp(-sqrt(lambda)).
double levy_density(double t) { return std::exp(-0.25 / t) / (2.0 * std::sqrt(pi) * t * std::sqrt(t)); }
double levy_cdf(double t) { return std::erfc(0.5 / std::sqrt(t)); }

}  // namespace

TEST_CASE("kanter kernel at one half matches the Levy law") {
  const PositiveStableKernel k(0.5);
  for (double t : {0.01, 0.1, 0.5, 1.0, 3.0, 30.0, 1e3}) {
    CAPTURE(t);
    CHECK(k.density(t).value == doctest::Approx(levy_density(t)).epsilon(1e-10));
    CHECK(k.cdf(t).value == doctest::Approx(levy_cdf(t)).epsilon(1e-10));
    CHECK(k.survival(t).value == doctest::Approx(std::erf(0.5 / std::sqrt(t))).epsilon(1e-10));
  }
}

TEST_CASE("survival keeps relative accuracy deep in the tail") {
  const PositiveStableKernel k(0.5);
  const double t = 1e12;
  CHECK(k.survival(t).value == doctest::Approx(std::erf(0.5 / std::sqrt(t))).epsilon(1e-9));
}

TEST_CASE("laplace transform of the kernel density") {
  boost::math::quadrature::exp_sinh<double> q;
  for (double beta : {0.3, 0.5, 2.0 / 3.0, 0.9}) {
    const PositiveStableKernel k(beta);
    for (double lambda : {0.5, 1.0, 2.0}) {
      CAPTURE(beta);
      CAPTURE(lambda);
      const double lt =
          q.integrate([&](double t) { return std::exp(-lambda * t) * k.density(t).value; }, 1e-12);
      CHECK(lt == doctest::Approx(std::exp(-std::pow(lambda, beta))).epsilon(1e-8));
    }
  }
}

TEST_CASE("density integrates to the cdf") {
  boost::math::quadrature::exp_sinh<double> q;
  const PositiveStableKernel k(0.7);
  const double mass = q.integrate([&](double t) { return k.density(t).value; }, 1e-12);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
  for (double t : {0.3, 1.0, 5.0}) {
    CHECK(k.cdf(t).value + k.survival(t).value == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("large-t series agrees with the kernel where it converges well") {
  for (double beta : {0.5, 2.0 / 3.0, 0.8}) {
    const PositiveStableKernel k(beta);
    for (double t : {5.0, 20.0, 100.0}) {
      CAPTURE(beta);
      CAPTURE(t);
      double ratio = 0.0;
      const EvalResult s = positive_stable_density_series(beta, t, 1e-12, &ratio);
      CHECK(ratio >= 1.0);
      CHECK(s.value == doctest::Approx(k.density(t).value).epsilon(1e-9));
    }
  }
}

TEST_CASE("kanter function is accurate near zero") {
  // a(phi) -> (1-beta) beta^(beta/(1-beta)) as phi -> 0.
  for (double beta : {0.25, 0.5, 0.8}) {
    const double limit = std::log((1.0 - beta) * std::pow(beta, beta / (1.0 - beta)));
    CHECK(kanter_log_a(beta, 1e-9) == doctest::Approx(limit).epsilon(1e-12));
    CHECK(std::isinf(kanter_log_a(beta, pi)));
  }
}

TEST_CASE("invalid index is refused") {
  CHECK_THROWS_AS(PositiveStableKernel(1.0), DomainError);
  CHECK_THROWS_AS(PositiveStableKernel(0.0), DomainError);
  CHECK_THROWS_AS(PositiveStableKernel(1.5), DomainError);
}

TEST_CASE("far tail follows the leading power law") {
  for (double beta : {0.3, 2.0 / 3.0, 0.9}) {
    const PositiveStableKernel k(beta);
    for (double t : {1e30, 1e100}) {
      CAPTURE(beta);
      CAPTURE(t);
      const double surv = std::pow(t, -beta) / std::tgamma(1.0 - beta);
      const double dens = beta * std::pow(t, -1.0 - beta) / std::tgamma(1.0 - beta);
      CHECK(k.survival(t).value == doctest::Approx(surv).epsilon(1e-9));
      CHECK(k.density(t).value == doctest::Approx(dens).epsilon(1e-9));
      CHECK(1.0 - k.cdf(t).value <= 2.0 * surv);
    }
  }
}

TEST_CASE("survival series against the kernel in the overlap") {
  for (double beta : {0.5, 0.8}) {
    const PositiveStableKernel k(beta);
    for (double t : {30.0, 300.0}) {
      const EvalResult s = positive_stable_survival_series(beta, t, 1e-13);
      CHECK(s.value == doctest::Approx(k.survival(t, 1e-13).value).epsilon(1e-9));
    }
  }
}

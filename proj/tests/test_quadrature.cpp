// SPDX-FileCopyrightText: Copyright (c) 2026 The stablefp authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "stablefp/quadrature.hpp"
#include "stablefp/types.hpp"

using namespace stablefp;
using namespace stablefp::quad;

namespace {

Integrand gamma_integrand(double a) {
  Integrand f;
  f.fn = [a](double t) { return std::pow(t, a - 1.0) * std::exp(-t); };
  f.zero_exponent = a - 1.0;
  f.tail = Tail::exponential(1.0);
  return f;
}

}  // namespace

TEST_CASE("exponential integrates to one") {
  Integrand f;
  f.fn = [](double t) { return std::exp(-t); };
  f.tail = Tail::exponential(1.0);
  QuadResult r = integrate_semi_infinite(f, 1e-12);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(r.n_evals >= 1);
}

TEST_CASE("inverse square root singularity") {
  QuadResult r = integrate_semi_infinite(gamma_integrand(0.5), 1e-12);
  CHECK(r.converged);
  CHECK(std::abs(r.value - std::sqrt(std::numbers::pi)) < 1e-11);
}

TEST_CASE("gamma function golden set with honest error estimates") {
  int honest = 0;
  int total = 0;
  for (double a : {0.5, 1.0, 1.5, 2.5, 0.1, 3.7, 7.0}) {
    for (double tol : {1e-6, 1e-8, 1e-10, 1e-12}) {
      QuadResult r = integrate_semi_infinite(gamma_integrand(a), tol);
      const double err = std::abs(r.value - std::tgamma(a));
      if (tol == 1e-10 && (a == 0.5 || a == 1.0 || a == 1.5 || a == 2.5)) {
        CHECK(err <= 1e-10);
      }
      ++total;
      if (err <= r.abs_err) ++honest;
    }
  }
  CHECK(honest >= 0.95 * total);
}

TEST_CASE("power tail mapping") {
  // int_0^inf dt / (1 + t)^3 = 1/2
  Integrand f;
  f.fn = [](double t) { return 1.0 / ((1.0 + t) * (1.0 + t) * (1.0 + t)); };
  f.tail = Tail::power(3.0);
  QuadResult r = integrate_semi_infinite(f, 1e-12);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-12));

  // heavy tail t^(-1.5): int_0^inf dt / (1 + t)^1.5 = 2
  f.fn = [](double t) { return std::pow(1.0 + t, -1.5); };
  f.tail = Tail::power(1.5);
  r = integrate_semi_infinite(f, 1e-10);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("splitting invariance at declared breakpoints") {
  Integrand f = gamma_integrand(1.5);
  const double tol = 1e-10;
  for (double c : {0.3, 1.0, 4.0, 17.0}) {
    f.breakpoints = {c};
    const double whole = integrate_semi_infinite(f, tol).value;
    const double head = integrate([&](double t) { return f.fn(t); }, 0.0, c, {tol, 0.0}).value;
    Integrand tail = f;
    tail.fn = [&f, c](double s) { return f.fn(c + s); };
    tail.zero_exponent = 0.0;
    tail.breakpoints = {};
    const double rest = integrate_semi_infinite(tail, tol).value;
    CHECK(std::abs(whole - (head + rest)) <= 2.0 * tol);
  }
}

TEST_CASE("invalid declarations are rejected") {
  Integrand f = gamma_integrand(0.5);
  f.zero_exponent = -1.0;
  CHECK_THROWS_AS(integrate_semi_infinite(f, 1e-8), DomainError);
  f.zero_exponent = 0.0;
  f.tail = Tail::power(1.0);
  CHECK_THROWS_AS(integrate_semi_infinite(f, 1e-8), DomainError);
  f.tail = Tail::exponential(-1.0);
  CHECK_THROWS_AS(integrate_semi_infinite(f, 1e-8), DomainError);
}

TEST_CASE("non-finite integrand yields a diagnostic") {
  Integrand f;
  f.fn = [](double t) { return t > 2.0 && t < 3.0 ? std::nan("") : std::exp(-t); };
  f.tail = Tail::exponential(1.0);
  QuadResult r = integrate_semi_infinite(f, 1e-8);
  CHECK_FALSE(r.converged);
  CHECK_FALSE(r.diagnostic.empty());
}

TEST_CASE("panel budget exhaustion is reported") {
  QuadOptions o;
  o.abs_tol = 1e-15;
  o.max_panels = 4;
  QuadResult r = integrate([](double t) { return std::sin(1.0 / t); }, 1e-4, 1.0, o);
  CHECK_FALSE(r.converged);
  CHECK(std::isfinite(r.value));
}

TEST_CASE("numerical laplace transforms") {
  Integrand one;
  one.fn = [](double) { return 1.0; };
  QuadResult r = laplace_transform_numeric(one, 2.0, 1e-12);
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-12));

  // L[t^(-1/2)](s) = sqrt(pi/s)
  Integrand h;
  h.fn = [](double t) { return 1.0 / std::sqrt(t); };
  h.zero_exponent = -0.5;
  r = laplace_transform_numeric(h, 3.0, 1e-11);
  CHECK(std::abs(r.value - std::sqrt(std::numbers::pi / 3.0)) < 1e-10);
  CHECK_THROWS_AS(laplace_transform_numeric(one, 0.0, 1e-8), DomainError);
}

TEST_CASE("series summation") {
  SeriesResult g = sum_series([](std::int64_t n) { return std::pow(2.0L, -static_cast<long double>(n)); },
                              1e-16, 10000);
  CHECK(g.converged);
  CHECK(g.value == doctest::Approx(2.0).epsilon(1e-15));

  SeriesResult e = sum_series(
      [](std::int64_t n) {
        return (n % 2 ? -1.0L : 1.0L) * std::exp(-std::lgamma(static_cast<long double>(n) + 1.0L));
      },
      1e-16, 10000);
  CHECK(e.converged);
  CHECK(std::abs(e.value - std::exp(-1.0)) < 1e-15);
  CHECK(e.cancellation_ratio == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
  CHECK_FALSE(e.ill_conditioned);

  // exp(-30) by its Taylor series: the partial sums peak near 30^30/30!
  SeriesResult bad = sum_series(
      [](std::int64_t n) {
        const long double ln = static_cast<long double>(n) * std::log(30.0L) -
                               std::lgamma(static_cast<long double>(n) + 1.0L);
        return (n % 2 ? -1.0L : 1.0L) * std::exp(ln);
      },
      1e-18, 10000);
  CHECK(bad.ill_conditioned);
  CHECK(bad.cancellation_ratio > 1e8);

  SeriesResult capped = sum_series([](std::int64_t) { return 1.0L; }, 1e-10, 50);
  CHECK_FALSE(capped.converged);
  CHECK(capped.n_terms == 50);
}

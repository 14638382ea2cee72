// SPDX-FileCopyrightText: Copyright (c) 2026 The stablefp authors
// SPDX-License-Identifier: Apache-2.0

#include "stablefp/mittag_leffler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "stablefp/positive_stable.hpp"
#include "stablefp/quadrature.hpp"

namespace stablefp {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr long double kEpsLd = std::numeric_limits<long double>::epsilon();

bool within(const EvalResult& r, double tol) {
  return r.abs_err <= tol * std::max(1.0, std::abs(r.value));
}

[[noreturn]] void fail(const char* what, const EvalResult& r) {
  throw NumericalFailure(what, r.value, r.abs_err);
}

// log of the largest |x|^n / Gamma(1 + a n) (times n^k for derivative terms).
long double log_peak_term(double a, long double log_abs_x, int k) {
  long double best = -std::numeric_limits<long double>::infinity();
  for (std::int64_t n = 0; n < quad::kDefaultMaxTerms; ++n) {
    const long double nn = static_cast<long double>(n);
    const long double l = (n == 0 ? 0.0L : nn * log_abs_x + k * std::log(nn)) -
                          std::lgamma(1.0L + a * nn);
    if (l < best && n > 2) break;
    best = std::max(best, l);
  }
  return best;
}

// Sum of k_a-weighted exponentials: int_0^inf exp(-s r) r^m k_a(r) dr.
EvalResult spectral_laplace(double a, double s, int m, double tol) {
  const MLOrder order(a);
  quad::Integrand f;
  f.fn = [order, m](double r) { return (m ? r : 1.0) * mlf_spectral_density(order, r); };
  f.zero_exponent = a - 1.0 + m;
  f.tail = m ? quad::Tail::unspecified() : quad::Tail::power(1.0 + a);
  f.breakpoints = {1.0, 1.0 / s};
  const quad::QuadResult r = quad::laplace_transform_numeric(f, s, tol);
  return {r.value, r.abs_err, Method::bernstein_quadrature, r.n_evals};
}

// Series for E_a (k = 0) or E_a' (k = 1) in long double.
EvalResult mlf_series(double a, double x, int k) {
  const long double lx = std::log(std::abs(static_cast<long double>(x)));
  const bool negative = x < 0.0;
  auto term = [&](std::int64_t n) -> long double {
    const long double nn = static_cast<long double>(n);
    // index shift: E' sums n x^(n-1) / Gamma(1 + a n) from n = 1
    const long double m = k ? nn + 1.0L : nn;
    const long double l = (n == 0 ? 0.0L : nn * lx) + (k ? std::log(m) : 0.0L) -
                          std::lgamma(1.0L + a * m);
    const long double v = std::exp(l);
    return (negative && n % 2) ? -v : v;
  };
  const quad::SeriesResult r = quad::sum_series(term, 1e-18, quad::kDefaultMaxTerms, 0);
  if (!r.converged) throw NumericalFailure("Mittag-Leffler series: " + r.diagnostic, r.value, r.abs_err);
  return {r.value, r.abs_err, Method::series, std::max<std::int64_t>(1, r.n_terms)};
}

}  // namespace

EvalResult eval_mlf(MLOrder order, double x, double tol) {
  if (!std::isfinite(x)) throw DomainError("eval_mlf: x must be finite");
  const double a = order.order();
  if (x == 0.0) return {1.0, 0.0, Method::series, 1};
  if (x < 0.0) {
    const long double peak = log_peak_term(a, std::log(-static_cast<long double>(x)), 0);
    const bool series_ok = 64.0L * kEpsLd * std::exp(peak) <= 0.01L * tol;
    if (!series_ok) {
      if (a < 1.0) {
        EvalResult r = spectral_laplace(a, std::pow(-x, 1.0 / a), 0, 0.1 * tol);
        if (!within(r, tol)) fail("eval_mlf: quadrature did not reach tolerance", r);
        return r;
      }
      if (a == 1.0) return {std::exp(x), 0.0, Method::closed_form, 1};
      if (a == 2.0) return {std::cos(std::sqrt(-x)), 1e-16, Method::closed_form, 1};
      throw NumericalFailure("eval_mlf: series cancellation too severe for this order", std::nan(""),
                             std::numeric_limits<double>::infinity());
    }
  } else if (std::pow(x, 1.0 / a) > 700.0) {
    throw NumericalFailure("eval_mlf: result overflows", std::numeric_limits<double>::infinity(),
                           std::numeric_limits<double>::infinity());
  }
  EvalResult r = mlf_series(a, x, 0);
  if (!within(r, tol)) fail("eval_mlf: series did not reach tolerance", r);
  return r;
}

EvalResult eval_mlf_derivative(MLOrder order, double x, double tol) {
  if (!std::isfinite(x)) throw DomainError("eval_mlf_derivative: x must be finite");
  const double a = order.order();
  if (x == 0.0) return {1.0 / std::tgamma(1.0 + a), 1e-16, Method::series, 1};
  if (x < 0.0) {
    const long double peak = log_peak_term(a, std::log(-static_cast<long double>(x)), 1);
    if (64.0L * kEpsLd * std::exp(peak) > 0.01L * tol) {
      if (a < 1.0) {
        const double y = -x;
        const double s = std::pow(y, 1.0 / a);
        const double c = std::pow(y, 1.0 / a - 1.0) / a;
        EvalResult r = spectral_laplace(a, s, 1, 0.1 * tol / std::max(c, 1e-300));
        r.value *= c;
        r.abs_err *= c;
        if (!within(r, tol)) fail("eval_mlf_derivative: quadrature did not reach tolerance", r);
        return r;
      }
      if (a == 1.0) return {std::exp(x), 0.0, Method::closed_form, 1};
      throw NumericalFailure("eval_mlf_derivative: series cancellation too severe for this order",
                             std::nan(""), std::numeric_limits<double>::infinity());
    }
  } else if (std::pow(x, 1.0 / a) > 700.0) {
    throw NumericalFailure("eval_mlf_derivative: result overflows",
                           std::numeric_limits<double>::infinity(),
                           std::numeric_limits<double>::infinity());
  }
  EvalResult r = mlf_series(a, x, 1);
  if (!within(r, tol)) fail("eval_mlf_derivative: series did not reach tolerance", r);
  return r;
}

EvalResult eval_D_series(const StabilityIndex& index, double x) {
  if (!(x >= 0.0)) throw DomainError("eval_D: x must be non-negative");
  if (x == 0.0) return {1.0, 0.0, Method::series, 1};
  const long double a = index.alpha();
  const long double lx = std::log(static_cast<long double>(x));
  auto term = [&](std::int64_t n) -> long double {
    if (n == 0) return 1.0L;
    const long double an = a * static_cast<long double>(n);
    return std::exp((an - 1.0L) * lx - std::lgamma(an)) * (static_cast<long double>(x) / an - 1.0L);
  };
  const quad::SeriesResult r = quad::sum_series(term, 1e-18, quad::kDefaultMaxTerms, 0);
  if (!r.converged) throw NumericalFailure("eval_D series: " + r.diagnostic, r.value, r.abs_err);
  return {r.value, r.abs_err, Method::series, r.n_terms};
}

EvalResult eval_D_bernstein(const StabilityIndex& index, double x) {
  index.require_interior("eval_D_bernstein");
  if (!(x > 0.0)) throw DomainError("eval_D_bernstein: x must be positive");
  const double a = index.alpha();
  const double d = std::min(kPi * (2.0 / a - 1.0), kPi / 2.0);
  const double h = 2.0 * kPi * 0.75 * d / 39.0;
  const double v_lo = -(45.0 + a * std::log(std::max(x, 1.0))) / a;
  const double v_hi = std::log(45.0 / x);
  const auto k_lo = static_cast<std::int64_t>(std::floor(v_lo / h));
  const auto k_hi = static_cast<std::int64_t>(std::ceil(v_hi / h));
  double s1 = 0.0, s2 = 0.0, s4 = 0.0;
  for (std::int64_t k = k_lo; k <= k_hi; ++k) {
    const double t = std::exp(static_cast<double>(k) * h);
    const double w = mu_density(index, t) * t * std::exp(-x * t);
    s1 += w;
    if (k % 2 == 0) s2 += w;
    if (k % 4 == 0) s4 += w;
  }
  const double t1 = h * s1;
  const double t2 = 2.0 * h * s2;
  const double t4 = 4.0 * h * s4;
  const double e1 = std::abs(t1 - t2);
  const double e2 = std::abs(t2 - t4);
  double est = e2 > 0.0 ? std::min(e1, e1 * e1 / e2) : e1;
  est += 4.0 * std::numeric_limits<double>::epsilon() * t1 + 1e-19;
  return {t1, est, Method::bernstein_quadrature, k_hi - k_lo + 1};
}

EvalResult eval_D(double alpha, double x, double tol) {
  if (!(alpha >= 1.0 && alpha <= 2.0)) throw DomainError("eval_D: alpha must lie in [1,2]");
  if (!(x >= 0.0) || std::isnan(x)) throw DomainError("eval_D: x must be non-negative");
  if (alpha == 1.0) return {0.0, 0.0, Method::closed_form, 1};
  if (alpha == 2.0) return {std::exp(-x), 0.0, Method::closed_form, 1};
  return eval_D(StabilityIndex(alpha), x, tol);
}

EvalResult eval_D(const StabilityIndex& index, double x, double tol) {
  if (!(x >= 0.0) || std::isnan(x)) throw DomainError("eval_D: x must be non-negative");
  if (index.is_gaussian()) return {std::exp(-x), 0.0, Method::closed_form, 1};
  if (x == 0.0) return {1.0, 0.0, Method::series, 1};
  if (std::isinf(x)) return {0.0, 0.0, Method::closed_form, 1};
  std::optional<EvalResult> series;
  if (x <= kDSwitch) {
    series = eval_D_series(index, x);
    if (series->abs_err <= tol) return *series;
  }
  EvalResult r = eval_D_bernstein(index, x);
  if (r.abs_err > tol) {
    if (series && series->abs_err < r.abs_err) r = *series;
    fail("eval_D: neither representation reached tolerance", r);
  }
  return r;
}

double eval_D4_golden(double x) noexcept { return 0.5 * (std::exp(-x) + std::cos(x) + std::sin(x)); }

EvalResult eval_F(const StabilityIndex& index, double y, double tol) {
  if (!(y >= 0.0)) throw DomainError("eval_F: argument must be non-negative");
  return eval_D(index, std::pow(y, index.beta()), tol);
}

double mu_density(const StabilityIndex& index, double t) {
  if (!(index.alpha() > 1.0 && index.alpha() < 2.0)) {
    throw DomainError("mu_density: the Bernstein measure is degenerate at alpha = 1 and alpha = 2");
  }
  if (!(t > 0.0)) throw DomainError("mu_density: t must be positive");
  const double a = index.alpha();
  const double s = -index.sin_pi_alpha();
  const double c = index.cos_pi_alpha();
  if (std::isinf(t)) return 0.0;
  if (t <= 1.0) {
    const double ta = std::pow(t, a);
    return s * std::pow(t, a - 1.0) * (1.0 + t) / (kPi * ((ta - c) * (ta - c) + s * s));
  }
  const double u = std::pow(t, -a);
  const double den = (1.0 - c * u) * (1.0 - c * u) + (s * u) * (s * u);
  return s * (std::pow(t, -a - 1.0) + u) / (kPi * den);
}

double signed_bernstein_density_small_alpha(MLOrder order, double t) {
  const double a = order.order();
  if (!(a < 1.0)) throw DomainError("signed Bernstein density: order must lie in (0,1)");
  if (!(t > 0.0)) throw DomainError("signed Bernstein density: t must be positive");
  const double s = sin_pi(a);
  const double c = cos_pi(a);
  if (t <= 1.0) {
    const double ta = std::pow(t, a);
    return s * std::pow(t, a - 1.0) * (1.0 + t) / (kPi * ((ta - c) * (ta - c) + s * s));
  }
  const double u = std::pow(t, -a);
  const double den = (1.0 - c * u) * (1.0 - c * u) + (s * u) * (s * u);
  return s * (std::pow(t, -a - 1.0) + u) / (kPi * den);
}

double mlf_spectral_density(MLOrder order, double r) {
  const double b = order.order();
  if (!(b < 1.0)) throw DomainError("spectral density: order must lie in (0,1)");
  if (!(r > 0.0)) throw DomainError("spectral density: r must be positive");
  const double s = sin_pi(b);
  const double c = cos_pi(b);
  if (r <= 1.0) {
    const double rb = std::pow(r, b);
    return s * std::pow(r, b - 1.0) / (kPi * ((rb + c) * (rb + c) + s * s));
  }
  const double u = std::pow(r, -b);
  return s * std::pow(r, -b - 1.0) / (kPi * ((1.0 + c * u) * (1.0 + c * u) + (s * u) * (s * u)));
}

double mlf_neg_bernstein_density(MLOrder order, double u) {
  const double b = order.order();
  if (!(b < 1.0)) throw DomainError("Mittag-Leffler density: order must lie in (0,1)");
  if (!(u > 0.0)) throw DomainError("Mittag-Leffler density: u must be positive");
  thread_local std::optional<PositiveStableKernel> kernel;
  if (!kernel || kernel->beta() != b) kernel.emplace(b);
  const double t = std::pow(u, -1.0 / b);
  // The density is smooth at the origin with f(0+) = 1/Gamma(1 - b).
  if (!std::isfinite(t)) return 1.0 / std::tgamma(1.0 - b);
  return kernel->density(t).value * t / (b * u);
}

}  // namespace stablefp

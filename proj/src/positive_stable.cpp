// SPDX-FileCopyrightText: Copyright (c) 2026 The stablefp authors
// SPDX-License-Identifier: Apache-2.0

#include "stablefp/positive_stable.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "stablefp/quadrature.hpp"

namespace stablefp {
namespace {

constexpr double kPi = std::numbers::pi;

double log_sinc(double z) noexcept {
  if (z < 1e-4) return -z * z / 6.0;
  return std::log(std::sin(z) / z);
}

quad::QuadOptions relative(double rel_tol) {
  quad::QuadOptions o;
  o.abs_tol = 1e-300;
  o.rel_tol = rel_tol;
  o.max_panels = 2000;
  return o;
}

}  // namespace

PositiveStableKernel::PositiveStableKernel(double beta) : beta_(beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("positive stable index must lie in (0,1)");
  gamma_ = beta / (1.0 - beta);
  for (int i = 0; i < kTable; ++i) log_a_[i] = log_kanter_a(kPi * i / kTable);
  log_a_[kTable] = std::numeric_limits<double>::infinity();
}

double kanter_log_a(double beta, double phi) noexcept {
  if (phi >= kPi) return std::numeric_limits<double>::infinity();
  const double b = beta;
  return std::log1p(-b) + log_sinc((1.0 - b) * phi) +
         b / (1.0 - b) * (std::log(b) + log_sinc(b * phi)) - log_sinc(phi) / (1.0 - b);
}

double PositiveStableKernel::log_kanter_a(double phi) const noexcept {
  return kanter_log_a(beta_, phi);
}

double PositiveStableKernel::kanter_a(double phi) const noexcept {
  return std::exp(log_kanter_a(phi));
}

std::vector<double> PositiveStableKernel::breakpoints(double log_x) const {
  std::vector<double> pts{0.0};
  for (double c : {0.02, 1.0, 50.0}) {
    const double target = std::log(c) - log_x;
    if (target <= log_a_[0]) continue;
    const auto it = std::upper_bound(log_a_.begin(), log_a_.end(), target);
    const int i = static_cast<int>(it - log_a_.begin()) - 1;
    double phi;
    if (i + 1 >= kTable) {
      phi = kPi * (i + 0.5) / kTable;
    } else {
      const double w = (target - log_a_[i]) / (log_a_[i + 1] - log_a_[i]);
      phi = kPi * (i + w) / kTable;
    }
    if (phi > pts.back() && phi < kPi) pts.push_back(phi);
  }
  pts.push_back(kPi);
  return pts;
}

EvalResult PositiveStableKernel::density(double t, double rel_tol) const {
  if (!(t > 0.0)) {
    if (t == 0.0) return {0.0, 0.0, Method::kanter_integral, 1};
    throw DomainError("positive stable density: t must be non-negative");
  }
  if (std::isinf(t)) return {0.0, 0.0, Method::kanter_integral, 1};
  // Far in the tail the integrand collapses onto phi near pi and the
  // quadrature stalls, while the series converges in a handful of terms.
  if (beta_ * std::log(t) > std::log(30.0)) {
    double ratio = 0.0;
    try {
      const EvalResult s = positive_stable_density_series(beta_, t, rel_tol, &ratio);
      if (ratio < 10.0) return s;
    } catch (const NumericalFailure&) {
    }
  }
  const double log_x = -gamma_ * std::log(t);
  auto g = [this, log_x](double phi) {
    const double l = log_kanter_a(phi) + log_x;
    if (l > 700.0) return 0.0;
    return std::exp(l - std::exp(l));
  };
  const quad::QuadResult r = quad::integrate(g, breakpoints(log_x), relative(rel_tol));
  const double scale = gamma_ / (kPi * t);
  return {scale * r.value, scale * r.abs_err, Method::kanter_integral, r.n_evals};
}

EvalResult PositiveStableKernel::cdf(double t, double rel_tol) const {
  if (!(t > 0.0)) {
    if (t == 0.0) return {0.0, 0.0, Method::kanter_integral, 1};
    throw DomainError("positive stable cdf: t must be non-negative");
  }
  if (std::isinf(t)) return {1.0, 0.0, Method::kanter_integral, 1};
  if (beta_ * std::log(t) > std::log(30.0)) {
    const EvalResult s = survival(t, rel_tol);
    if (s.method == Method::series) return {1.0 - s.value, s.abs_err, Method::series, s.n_work};
  }
  const double log_x = -gamma_ * std::log(t);
  auto g = [this, log_x](double phi) {
    const double l = log_kanter_a(phi) + log_x;
    if (l > 700.0) return 0.0;
    return std::exp(-std::exp(l));
  };
  const quad::QuadResult r = quad::integrate(g, breakpoints(log_x), relative(rel_tol));
  return {std::min(1.0, r.value / kPi), r.abs_err / kPi, Method::kanter_integral, r.n_evals};
}

EvalResult PositiveStableKernel::survival(double t, double rel_tol) const {
  if (!(t > 0.0)) {
    if (t == 0.0) return {1.0, 0.0, Method::kanter_integral, 1};
    throw DomainError("positive stable survival: t must be non-negative");
  }
  if (std::isinf(t)) return {0.0, 0.0, Method::kanter_integral, 1};
  if (beta_ * std::log(t) > std::log(30.0)) {
    double ratio = 0.0;
    try {
      const EvalResult s = positive_stable_survival_series(beta_, t, rel_tol, &ratio);
      if (ratio < 10.0) return s;
    } catch (const NumericalFailure&) {
    }
  }
  const double log_x = -gamma_ * std::log(t);
  auto g = [this, log_x](double phi) {
    const double l = log_kanter_a(phi) + log_x;
    if (l > 700.0) return 1.0;
    return -std::expm1(-std::exp(l));
  };
  const quad::QuadResult r = quad::integrate(g, breakpoints(log_x), relative(rel_tol));
  return {std::min(1.0, r.value / kPi), r.abs_err / kPi, Method::kanter_integral, r.n_evals};
}

EvalResult positive_stable_density_series(double beta, double t, double tol,
                                          double* cancellation_ratio) {
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("positive stable index must lie in (0,1)");
  if (!(t > 0.0)) throw DomainError("positive stable series: t must be positive");
  const long double lt = std::log(static_cast<long double>(t));
  const long double b = beta;
  auto term = [&](std::int64_t n) -> long double {
    const long double nb = b * static_cast<long double>(n);
    const long double s = sin_pi(static_cast<double>(nb));
    if (s == 0.0L) return 0.0L;
    const long double mag = std::lgamma(1.0L + nb) - std::lgamma(static_cast<long double>(n) + 1.0L) -
                            (1.0L + nb) * lt;
    return ((n % 2) ? 1.0L : -1.0L) * s * std::exp(mag) / std::numbers::pi_v<long double>;
  };
  const quad::SeriesResult r = quad::sum_series(term, std::min(tol, 1e-17), quad::kDefaultMaxTerms, 1);
  if (cancellation_ratio) *cancellation_ratio = r.cancellation_ratio;
  if (!r.converged) throw NumericalFailure("positive stable series: " + r.diagnostic, r.value, r.abs_err);
  return {r.value, r.abs_err, Method::series, r.n_terms};
}

EvalResult positive_stable_survival_series(double beta, double t, double tol,
                                           double* cancellation_ratio) {
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("positive stable index must lie in (0,1)");
  if (!(t > 0.0)) throw DomainError("positive stable series: t must be positive");
  const long double lt = std::log(static_cast<long double>(t));
  const long double b = beta;
  auto term = [&](std::int64_t n) -> long double {
    const long double nb = b * static_cast<long double>(n);
    const long double s = sin_pi(static_cast<double>(nb));
    if (s == 0.0L) return 0.0L;
    const long double mag =
        std::lgamma(nb) - std::lgamma(static_cast<long double>(n) + 1.0L) - nb * lt;
    return ((n % 2) ? 1.0L : -1.0L) * s * std::exp(mag) / std::numbers::pi_v<long double>;
  };
  const quad::SeriesResult r = quad::sum_series(term, std::min(tol, 1e-17), quad::kDefaultMaxTerms, 1);
  if (cancellation_ratio) *cancellation_ratio = r.cancellation_ratio;
  if (!r.converged) throw NumericalFailure("positive stable series: " + r.diagnostic, r.value, r.abs_err);
  return {r.value, r.abs_err, Method::series, r.n_terms};
}

}  // namespace stablefp

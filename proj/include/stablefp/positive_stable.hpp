// SPDX-FileCopyrightText: Copyright (c) 2026 The stablefp authors
// SPDX-License-Identifier: Apache-2.0

#ifndef STABLEFP_POSITIVE_STABLE_HPP
#define STABLEFP_POSITIVE_STABLE_HPP

#include <array>
#include <vector>

#include "stablefp/types.hpp"

namespace stablefp {

/// Law of the positive stable variable S with E[exp(-lambda S)] = exp(-lambda^beta),
/// evaluated through Kanter's function
///   a(phi) = sin((1-beta)phi) sin(beta phi)^(beta/(1-beta)) / sin(phi)^(1/(1-beta)),
/// for which P[S <= t] = (1/pi) int_0^pi exp(-a(phi) t^(-beta/(1-beta))) dphi.
/// The integrand is smooth and non-oscillatory, which makes this the fast path
/// inside nested quadratures. Construction tabulates log a(phi) once so that
/// panel breakpoints can be placed without root finding.
class PositiveStableKernel {
 public:
  explicit PositiveStableKernel(double beta);

  double beta() const noexcept { return beta_; }
  double kanter_a(double phi) const noexcept;
  double log_kanter_a(double phi) const noexcept;

  EvalResult density(double t, double rel_tol = 1e-12) const;
  EvalResult cdf(double t, double rel_tol = 1e-12) const;
  /// 1 - cdf(t) without cancellation in the right tail.
  EvalResult survival(double t, double rel_tol = 1e-12) const;

 private:
  static constexpr int kTable = 256;
  std::vector<double> breakpoints(double log_x) const;

  double beta_;
  double gamma_;  // beta / (1 - beta)
  std::array<double, kTable + 1> log_a_{};
};

/// log a(phi) for Kanter's function, written through sinc factors so that it
/// stays accurate as phi -> 0. Returns +inf at phi >= pi.
double kanter_log_a(double beta, double phi) noexcept;

/// Large-t expansion
///   f(t) = (1/pi) sum_{n>=1} (-1)^(n+1) sin(pi n beta) Gamma(1 + n beta)/n! t^(-1-n beta).
/// It converges for every t > 0 but cancels badly for small t; when
/// cancellation_ratio is non-null it receives max |partial sum| / |result|.
EvalResult positive_stable_density_series(double beta, double t, double tol,
                                          double* cancellation_ratio = nullptr);

/// Termwise integral of the same expansion, P[S > t] =
///   (1/pi) sum_{n>=1} (-1)^(n+1) sin(pi n beta) Gamma(n beta)/n! t^(-n beta).
EvalResult positive_stable_survival_series(double beta, double t, double tol,
                                           double* cancellation_ratio = nullptr);

}  // namespace stablefp

#endif  // STABLEFP_POSITIVE_STABLE_HPP

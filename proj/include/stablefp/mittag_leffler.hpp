// SPDX-FileCopyrightText: Copyright (c) 2026 The stablefp authors
// SPDX-License-Identifier: Apache-2.0

#ifndef STABLEFP_MITTAG_LEFFLER_HPP
#define STABLEFP_MITTAG_LEFFLER_HPP

#include "stablefp/types.hpp"

namespace stablefp {

inline constexpr double kDefaultEvalTol = 1e-10;
inline constexpr double kDefaultQuadTol = 1e-8;

/// Below this argument D_alpha is summed as a series; above it the Laplace
/// transform of the Bernstein density is used.
inline constexpr double kDSwitch = 5.0;

// Tolerances are absolute when |value| <= 1 and relative otherwise.

/// E_a(x) = sum_n x^n / Gamma(1 + a n).
EvalResult eval_mlf(MLOrder order, double x, double tol = kDefaultEvalTol);

/// E_a'(x) = sum_{n>=1} n x^(n-1) / Gamma(1 + a n).
EvalResult eval_mlf_derivative(MLOrder order, double x, double tol = kDefaultEvalTol);

/// D_alpha(x) = E_alpha(x^alpha) - alpha x^(alpha-1) E_alpha'(x^alpha) for
/// alpha in [1, 2] and x >= 0. D_1 = 0, D_2(x) = exp(-x) and D_alpha(0) = 1.
EvalResult eval_D(double alpha, double x, double tol = kDefaultEvalTol);
EvalResult eval_D(const StabilityIndex& index, double x, double tol = kDefaultEvalTol);

/// The two representations behind eval_D, exposed for overlap testing.
/// The series is the merged difference
///   1 + sum_{n>=1} x^(alpha n - 1)/Gamma(alpha n) (x/(alpha n) - 1).
EvalResult eval_D_series(const StabilityIndex& index, double x);
/// int_0^inf exp(-x t) mu_alpha(t) dt on a fixed trapezoid grid in log t.
/// The nodes do not depend on x, so the result is itself a positive
/// exponential mixture and keeps every sign of its derivatives.
EvalResult eval_D_bernstein(const StabilityIndex& index, double x);

/// (exp(-x) + cos x + sin x) / 2, which dips below zero.
double eval_D4_golden(double x) noexcept;

/// F_alpha(y) = D_alpha(y^(1/alpha)).
EvalResult eval_F(const StabilityIndex& index, double y, double tol = kDefaultEvalTol);

/// Bernstein density of D_alpha for 1 < alpha < 2:
///   (-sin pi a) t^(a-1) (1 + t) / (pi (t^(2a) - 2 t^a cos pi a + 1)).
/// alpha = 2 (Dirac mass at 1) and alpha = 1 (null measure) are refused.
double mu_density(const StabilityIndex& index, double t);

/// Bernstein density of -D_a for 0 < a < 1 (same formula with sin pi a).
double signed_bernstein_density_small_alpha(MLOrder order, double t);

/// Density of the Mittag-Leffler law of order b in (0,1), i.e. the Bernstein
/// density of x -> E_b(-x): int_0^inf exp(-x u) f(u) du = E_b(-x). It is the
/// law of S^(-b) for S positive b-stable.
double mlf_neg_bernstein_density(MLOrder order, double u);

/// Spectral density k_b(r) = (sin pi b / pi) r^(b-1) / (r^(2b) + 2 r^b cos pi b + 1),
/// b in (0,1), with int_0^inf exp(-r x) k_b(r) dr = E_b(-x^b).
double mlf_spectral_density(MLOrder order, double r);

}  // namespace stablefp

#endif  // STABLEFP_MITTAG_LEFFLER_HPP

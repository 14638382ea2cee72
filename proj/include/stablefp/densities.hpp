// SPDX-FileCopyrightText: Copyright (c) 2026 The stablefp authors
// SPDX-License-Identifier: Apache-2.0

#ifndef STABLEFP_DENSITIES_HPP
#define STABLEFP_DENSITIES_HPP

#include <string_view>
#include <vector>

#include "stablefp/types.hpp"

namespace stablefp {

// Laws attached to the first passage T_1 above level 1 of the spectrally
// positive alpha-stable process X with E[exp(-lambda X_1)] = exp(lambda^alpha).
//
//   T      density (-sin pi a)(1 + t^b) / (pi a (t^2 - 2 t cos pi a + 1)), b = 1/a
//   That1  positive b-stable, E[exp(-lambda That1)] = exp(-lambda^b)
//   Tbar   density (-sin pi a) u^b / (pi (u^2 - 2 u cos pi a + 1))
//   Ttilde density (-sin pi a) / ((a - 1) pi (u^2 - 2 u cos pi a + 1))
//   T1     = T x That1 in law, and T = (1 - 1/a) Ttilde + (1/a) Tbar as a mixture
//   g      density of Ttilde x That1
//   h      density of Tbar x That1
//   S1     sup of X on [0,1]; T1 = S1^(-a) in law
//
// Every density here integrates to one.

enum class DensityName { T, That1, g_That1, h_That1, T1, S1, Tbar, Ttilde };
std::string_view to_string(DensityName d) noexcept;

/// Mixture weights of T: f_T = weight_g * f_Ttilde + weight_h * f_Tbar, and
/// likewise f_T1 = weight_g * g + weight_h * h.
inline double weight_g(const StabilityIndex& idx) noexcept { return 1.0 - idx.beta(); }
inline double weight_h(const StabilityIndex& idx) noexcept { return idx.beta(); }

double density_T(const StabilityIndex& idx, double t);
double density_Tbar(const StabilityIndex& idx, double u);
double density_Ttilde(const StabilityIndex& idx, double u);

EvalResult cdf_T(const StabilityIndex& idx, double t, double tol = 1e-12);
EvalResult survival_T(const StabilityIndex& idx, double t, double tol = 1e-12);
EvalResult cdf_Tbar(const StabilityIndex& idx, double u, double tol = 1e-12);
EvalResult survival_Tbar(const StabilityIndex& idx, double u, double tol = 1e-12);
double cdf_Ttilde(const StabilityIndex& idx, double u);
double survival_Ttilde(const StabilityIndex& idx, double u);
double quantile_Ttilde(const StabilityIndex& idx, double p);

/// f_That1(t) = (1/pi) int_0^inf exp(-t u - u^b cos(pi b)) sin(u^b sin(pi b)) du,
/// evaluated on a rotated ray where the integrand no longer oscillates.
EvalResult density_That1_integral(const StabilityIndex& idx, double t, double tol = 1e-12);
/// Large-t alternating series; throws NumericalFailure when cancellation
/// prevents reaching tol.
EvalResult density_That1_series(const StabilityIndex& idx, double t, double tol = 1e-10);

enum class GMethod { integral, series, transform };
std::string_view to_string(GMethod m) noexcept;

/// Density g of Ttilde x That1 by one of three representations:
///   integral  (1/((a-1)pi)) int_0^inf exp(-t u + u^b cos pi b) sin(u^b sin pi b) du
///   series    (1/((a-1)pi)) sum_{n>=1} sin(pi n b) Gamma(1 + n b)/n! t^(-1-n b)
///   transform int_0^inf f_That1(u) (-sin pi a) u / ((a-1) pi (u^2 - 2 t u cos pi a + t^2)) du
EvalResult density_g(const StabilityIndex& idx, double t, GMethod m, double tol = 1e-10);

/// Density h of Tbar x That1: int_0^inf f_Tbar(u) f_That1(t/u) du/u.
EvalResult density_h(const StabilityIndex& idx, double t, double tol = 1e-10);

enum class T1Method { series, product, convex };
std::string_view to_string(T1Method m) noexcept;

/// Density of T_1. alpha = 2 uses exp(-1/(4t)) / (2 t sqrt(pi t)) whatever
/// the method. series sums
///   sum_{n>=1} (-1)^(n+1) sin(pi b) Gamma(n-b) / (a pi Gamma(a n - 1)) t^(b-n-1).
EvalResult density_T1(const StabilityIndex& idx, double t, T1Method m, double tol = 1e-10);

/// P[T_1 <= t] and P[T_1 > t], each split along the mixture.
struct MixtureProbability {
  EvalResult total;
  double g_part = 0.0;  // weight_g * P[Ttilde x That1 ...]
  double h_part = 0.0;  // weight_h * P[Tbar x That1 ...]
};
MixtureProbability cdf_T1(const StabilityIndex& idx, double t, double rel_tol = 1e-10);
MixtureProbability survival_T1(const StabilityIndex& idx, double t, double rel_tol = 1e-10);

/// f_S1(x) = sum_{n>=1} (-1)^(n+1) sin(pi b) Gamma(n-b) / (pi Gamma(a n - 1)) x^(a n - 2).
EvalResult density_S1_series(const StabilityIndex& idx, double x, double tol = 1e-10);
/// Termwise integral of the same series.
EvalResult cdf_S1_series(const StabilityIndex& idx, double x, double tol = 1e-10);

/// Density by name and method tag. Accepted tags:
///   T, Tbar, Ttilde   closed_form
///   That1             integral, series, kanter
///   g_That1           integral, series, transform
///   h_That1           product
///   T1                series, product, convex
///   S1                series, via_T1
/// and "auto" for every name. auto tries the series first where one exists
/// and falls back to quadrature when the series reports cancellation, so the
/// method field of the result shows which representation served the point.
/// Unknown tags throw DomainError.
EvalResult density_by_name(DensityName name, const StabilityIndex& idx, double t,
                           std::string_view method = "auto", double tol = 1e-10);

/// Parses "T", "That1", "g", "h", "T1", "S1", "Tbar", "Ttilde" (also the
/// to_string spellings); throws DomainError otherwise.
DensityName parse_density_name(std::string_view s);

/// Panel breakpoints for product integrals int_0^inf f(u) K(t/u) du/u:
/// u = 1, geometric points around u = t, and every two decades in between.
std::vector<double> product_breakpoints(double t);

/// Rate q of the exponential clock and barrier level x.
struct SurvivalQuery {
  double q;
  double x;
  StabilityIndex index;
};

/// P[S_tau_q >= x] = D_alpha(q^(1/alpha) x).
EvalResult survival_S_tau(const SurvivalQuery& query, double tol = 1e-10);

}  // namespace stablefp

#endif  // STABLEFP_DENSITIES_HPP

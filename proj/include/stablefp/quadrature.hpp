// SPDX-FileCopyrightText: Copyright (c) 2026 The stablefp authors
// SPDX-License-Identifier: Apache-2.0

#ifndef STABLEFP_QUADRATURE_HPP
#define STABLEFP_QUADRATURE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace stablefp::quad {

struct QuadResult {
  double value = 0.0;
  double abs_err = 0.0;
  std::int64_t n_evals = 0;
  bool converged = false;
  std::string diagnostic;
};

struct QuadOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  int max_panels = 1 << 14;
};

using RealFn = std::function<double(double)>;

/// Global adaptive Gauss-Kronrod (10/21) on [a, b]. The panel with the
/// largest error estimate is bisected until the summed estimate meets
/// max(abs_tol, rel_tol*|I|) or the panel budget is spent.
QuadResult integrate(const RealFn& f, double a, double b, const QuadOptions& opts = {});

/// Same driver over [p0, p_last] split at every listed point (ascending).
QuadResult integrate(const RealFn& f, const std::vector<double>& points,
                     const QuadOptions& opts = {});

/// Decay class of an integrand at +infinity.
struct Tail {
  enum class Kind { exponential, power, unspecified };
  Kind kind = Kind::unspecified;
  /// exponential: f ~ exp(-rate t); power: f ~ t^(-rate) with rate > 1.
  double rate = 0.0;

  static Tail exponential(double rate) { return {Kind::exponential, rate}; }
  static Tail power(double q) { return {Kind::power, q}; }
  static Tail unspecified() { return {Kind::unspecified, 0.0}; }
};

/// An integrand on (0, inf) with its declared endpoint behaviour.
struct Integrand {
  RealFn fn;
  /// f(t) ~ t^p as t -> 0+; must satisfy p > -1.
  double zero_exponent = 0.0;
  Tail tail = Tail::unspecified();
  /// Interior points where f has structure (peaks, kinks, scale changes).
  std::vector<double> breakpoints;
};

/// Integral over (0, inf). The first panel [0, b0] is mapped with
/// t = b0 w^(1/(p+1)) to remove the declared power singularity; the tail
/// panel is mapped according to the declared decay class. Declarations that
/// cannot give a finite integral throw DomainError.
QuadResult integrate_semi_infinite(const Integrand& f, const QuadOptions& opts);
QuadResult integrate_semi_infinite(const Integrand& f, double tol);

/// int_0^inf exp(-s t) f(t) dt.
QuadResult laplace_transform_numeric(const Integrand& f, double s, double tol);

struct SeriesResult : QuadResult {
  long double value_ld = 0.0L;
  /// max |partial sum| / |result|; large values mean heavy cancellation.
  double cancellation_ratio = 1.0;
  bool ill_conditioned = false;
  std::int64_t n_terms = 0;
};

/// Sum term(first) + term(first+1) + ... in extended precision. Stops once
/// the terms are past their peak and three consecutive terms are below
/// rel_tol * |partial sum|.
SeriesResult sum_series(const std::function<long double(std::int64_t)>& term,
                        double rel_tol, std::int64_t max_terms, std::int64_t first = 0);

inline constexpr double kIllConditionedRatio = 1e8;
inline constexpr std::int64_t kDefaultMaxTerms = 10000;

}  // namespace stablefp::quad

#endif  // STABLEFP_QUADRATURE_HPP

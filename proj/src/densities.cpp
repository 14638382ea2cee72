// SPDX-FileCopyrightText: Copyright (c) 2026 The stablefp authors
// SPDX-License-Identifier: Apache-2.0

#include "stablefp/densities.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "stablefp/mittag_leffler.hpp"
#include "stablefp/positive_stable.hpp"
#include "stablefp/quadrature.hpp"

namespace stablefp {
namespace {

constexpr double kPi = std::numbers::pi;

double pos_sin(const StabilityIndex& idx) { return -idx.sin_pi_alpha(); }

// u^2 - 2 u cos(pi a) + 1 as a sum of squares.
double quad_form(const StabilityIndex& idx, double u) {
  const double c = idx.cos_pi_alpha();
  const double s = pos_sin(idx);
  return (u - c) * (u - c) + s * s;
}

void require_positive(double t, const char* what) {
  if (!(t > 0.0) || std::isnan(t)) throw DomainError(std::string(what) + ": argument must be positive");
}

void require_nonnegative(double t, const char* what) {
  if (!(t >= 0.0) || std::isnan(t)) {
    throw DomainError(std::string(what) + ": argument must be non-negative");
  }
}

quad::QuadOptions opts(double abs_tol, double rel_tol) {
  quad::QuadOptions o;
  o.abs_tol = abs_tol;
  o.rel_tol = rel_tol;
  return o;
}

EvalResult checked(const quad::QuadResult& r, Method m, const char* what) {
  EvalResult e{r.value, r.abs_err, m, std::max<std::int64_t>(1, r.n_evals)};
  if (!r.converged) throw NumericalFailure(std::string(what) + ": " + r.diagnostic, r.value, r.abs_err);
  return e;
}

// int_0^inf fx(u) K(t/u) w(u) du for a kernel K of That1. The integrand is
// positive, so callers ask for relative accuracy even where the density is tiny.
quad::QuadResult product_integral(const std::function<double(double)>& integrand, double p0,
                                  quad::Tail tail, double t, const quad::QuadOptions& o) {
  quad::Integrand f;
  f.fn = integrand;
  f.zero_exponent = p0;
  f.tail = tail;
  f.breakpoints = product_breakpoints(t);
  return quad::integrate_semi_infinite(f, o);
}

// (1/pi) Im[e^{i theta} int_0^inf exp(-t r e^{i theta} + r^b e^{i psi}) dr]
// with cos(theta) > 0 and cos(psi) < 0. The integral is truncated where the
// modulus falls below e^-50; a mapped infinite tail would turn the residual
// oscillation into a log-periodic one that Kronrod nodes cannot resolve.
quad::QuadResult rotated_ray(double t, double b, double theta, double psi, double tol) {
  const double ct = std::cos(theta), st = std::sin(theta);
  const double cp = std::cos(psi), sp = std::sin(psi);
  auto fn = [=](double r) {
    const double rb = std::pow(r, b);
    const double re = -t * r * ct + rb * cp;
    if (re < -745.0) return 0.0;
    return std::exp(re) * std::sin(theta + (-t * r * st + rb * sp));
  };
  const double r_end = std::min(50.0 / (t * ct), std::pow(50.0 / -cp, 1.0 / b));
  std::vector<double> pts{0.0, r_end};
  for (double p : {0.25 / t, 1.0 / t, 4.0 / t, 16.0 / t, 0.25, 1.0, 4.0, 16.0}) {
    if (p < r_end) pts.push_back(p);
  }
  std::sort(pts.begin(), pts.end());
  quad::QuadResult r = quad::integrate(fn, pts, opts(tol * kPi, tol));
  r.value /= kPi;
  r.abs_err /= kPi;
  return r;
}

// Sum of a long double series starting at n = 1, with tolerance semantics
// absolute below one and relative above.
EvalResult series_or_fail(const std::function<long double(std::int64_t)>& term, double tol,
                          const char* what) {
  const quad::SeriesResult r = quad::sum_series(term, 1e-18, quad::kDefaultMaxTerms, 1);
  EvalResult e{r.value, r.abs_err, Method::series, std::max<std::int64_t>(1, r.n_terms)};
  if (!r.converged || r.abs_err > tol * std::max(1.0, std::abs(r.value))) {
    throw NumericalFailure(std::string(what) + ": series ill-conditioned at this argument (cancellation ratio " +
                               std::to_string(r.cancellation_ratio) + ")",
                           r.value, r.abs_err);
  }
  return e;
}

long double sign_alt(std::int64_t n) { return (n % 2) ? 1.0L : -1.0L; }

}  // namespace

// Geometric points around u = t, where the That1 factor switches on, so that
// no linear panel spans several decades of the mass.
std::vector<double> product_breakpoints(double t) {
  std::vector<double> pts{1.0};
  for (double k = 1.0 / 16.0; k <= 1024.0; k *= 4.0) pts.push_back(k * t);
  // The factor near u = 1 and the one near u = t can be decades apart.
  const double lo = std::min(1.0, t / 16.0);
  const double hi = std::max(1.0, t * 1024.0);
  for (double u = lo * 100.0; u < hi && pts.size() < 400; u *= 100.0) pts.push_back(u);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

std::string_view to_string(DensityName d) noexcept {
  switch (d) {
    case DensityName::T: return "T";
    case DensityName::That1: return "That1";
    case DensityName::g_That1: return "g_That1";
    case DensityName::h_That1: return "h_That1";
    case DensityName::T1: return "T1";
    case DensityName::S1: return "S1";
    case DensityName::Tbar: return "Tbar";
    case DensityName::Ttilde: return "Ttilde";
  }
  return "?";
}

std::string_view to_string(GMethod m) noexcept {
  switch (m) {
    case GMethod::integral: return "integral";
    case GMethod::series: return "series";
    case GMethod::transform: return "transform";
  }
  return "?";
}

std::string_view to_string(T1Method m) noexcept {
  switch (m) {
    case T1Method::series: return "series";
    case T1Method::product: return "product";
    case T1Method::convex: return "convex";
  }
  return "?";
}

double density_T(const StabilityIndex& idx, double t) {
  idx.require_interior("density_T");
  require_nonnegative(t, "density_T");
  if (std::isinf(t)) return 0.0;
  const double s = pos_sin(idx);
  if (t > 1e100) {
    const double c = idx.cos_pi_alpha();
    const double den = (1.0 - c / t) * (1.0 - c / t) + (s / t) * (s / t);
    return s * (std::pow(t, -2.0) + std::pow(t, idx.beta() - 2.0)) / (kPi * idx.alpha() * den);
  }
  return s * (1.0 + std::pow(t, idx.beta())) / (kPi * idx.alpha() * quad_form(idx, t));
}

double density_Tbar(const StabilityIndex& idx, double u) {
  idx.require_interior("density_Tbar");
  require_nonnegative(u, "density_Tbar");
  if (std::isinf(u)) return 0.0;
  const double s = pos_sin(idx);
  if (u > 1e100) {
    const double c = idx.cos_pi_alpha();
    const double den = (1.0 - c / u) * (1.0 - c / u) + (s / u) * (s / u);
    return s * std::pow(u, idx.beta() - 2.0) / (kPi * den);
  }
  return s * std::pow(u, idx.beta()) / (kPi * quad_form(idx, u));
}

double density_Ttilde(const StabilityIndex& idx, double u) {
  idx.require_interior("density_Ttilde");
  require_nonnegative(u, "density_Ttilde");
  if (std::isinf(u)) return 0.0;
  const double s = pos_sin(idx);
  if (u > 1e100) return s / ((idx.alpha() - 1.0) * kPi * u * u);
  return s / ((idx.alpha() - 1.0) * kPi * quad_form(idx, u));
}

double survival_Ttilde(const StabilityIndex& idx, double u) {
  idx.require_interior("survival_Ttilde");
  require_nonnegative(u, "survival_Ttilde");
  if (std::isinf(u)) return 0.0;
  return std::atan2(pos_sin(idx), u - idx.cos_pi_alpha()) / (kPi * (idx.alpha() - 1.0));
}

double cdf_Ttilde(const StabilityIndex& idx, double u) {
  idx.require_interior("cdf_Ttilde");
  require_nonnegative(u, "cdf_Ttilde");
  if (std::isinf(u)) return 1.0;
  // Angle between (-c, s) and (u - c, s); accurate for small u.
  const double c = idx.cos_pi_alpha();
  const double s = pos_sin(idx);
  return std::atan2(s * u, s * s - c * (u - c)) / (kPi * (idx.alpha() - 1.0));
}

double quantile_Ttilde(const StabilityIndex& idx, double p) {
  idx.require_interior("quantile_Ttilde");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("quantile_Ttilde: p must lie in [0,1]");
  if (p == 0.0) return 0.0;
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  const double theta = kPi * (idx.alpha() - 1.0) * (1.0 - p);
  return std::max(0.0, idx.cos_pi_alpha() + pos_sin(idx) / std::tan(theta));
}

namespace {

// Distribution function of a density on (0, inf) with a power tail of
// exponent q: left part by direct quadrature, right part from the tail.
EvalResult cdf_from_density(const std::function<double(double)>& f, double q, double t, double tol,
                            bool want_survival) {
  const bool left = t <= 1.0;
  quad::QuadResult r;
  if (left) {
    r = quad::integrate(f, std::vector<double>{0.0, 0.5 * t, t}, opts(1e-300, tol));
  } else {
    quad::Integrand g;
    g.fn = [&f, t](double s) { return f(t + s); };
    g.tail = quad::Tail::power(q);
    g.breakpoints = {t};
    r = quad::integrate_semi_infinite(g, opts(1e-300, tol));
  }
  EvalResult e = checked(r, Method::direct_formula, "distribution function");
  if (left == want_survival) e.value = 1.0 - e.value;
  e.value = std::clamp(e.value, 0.0, 1.0);
  return e;
}

}  // namespace

EvalResult cdf_T(const StabilityIndex& idx, double t, double tol) {
  idx.require_interior("cdf_T");
  require_nonnegative(t, "cdf_T");
  if (t == 0.0) return {0.0, 0.0, Method::closed_form, 1};
  if (std::isinf(t)) return {1.0, 0.0, Method::closed_form, 1};
  return cdf_from_density([&idx](double u) { return density_T(idx, u); }, 2.0 - idx.beta(), t, tol, false);
}

EvalResult survival_T(const StabilityIndex& idx, double t, double tol) {
  idx.require_interior("survival_T");
  require_nonnegative(t, "survival_T");
  if (t == 0.0) return {1.0, 0.0, Method::closed_form, 1};
  if (std::isinf(t)) return {0.0, 0.0, Method::closed_form, 1};
  return cdf_from_density([&idx](double u) { return density_T(idx, u); }, 2.0 - idx.beta(), t, tol, true);
}

EvalResult cdf_Tbar(const StabilityIndex& idx, double u, double tol) {
  idx.require_interior("cdf_Tbar");
  require_nonnegative(u, "cdf_Tbar");
  if (u == 0.0) return {0.0, 0.0, Method::closed_form, 1};
  if (std::isinf(u)) return {1.0, 0.0, Method::closed_form, 1};
  return cdf_from_density([&idx](double v) { return density_Tbar(idx, v); }, 2.0 - idx.beta(), u,
                          tol, false);
}

EvalResult survival_Tbar(const StabilityIndex& idx, double u, double tol) {
  idx.require_interior("survival_Tbar");
  require_nonnegative(u, "survival_Tbar");
  if (u == 0.0) return {1.0, 0.0, Method::closed_form, 1};
  if (std::isinf(u)) return {0.0, 0.0, Method::closed_form, 1};
  return cdf_from_density([&idx](double v) { return density_Tbar(idx, v); }, 2.0 - idx.beta(), u,
                          tol, true);
}

EvalResult density_That1_integral(const StabilityIndex& idx, double t, double tol) {
  require_positive(t, "density_That1_integral");
  const double b = idx.beta();
  const double theta = 0.5 * (std::max(kPi - kPi / (2.0 * b), 0.0) + kPi / 2.0);
  const double psi = b * (theta - kPi) + kPi;
  quad::QuadResult r = rotated_ray(t, b, theta, psi, tol);
  EvalResult e = checked(r, Method::pollard_integral, "density_That1_integral");
  e.value = std::max(e.value, 0.0);
  return e;
}

EvalResult density_That1_series(const StabilityIndex& idx, double t, double tol) {
  require_positive(t, "density_That1_series");
  double ratio = 0.0;
  EvalResult r = positive_stable_density_series(idx.beta(), t, tol, &ratio);
  if (r.abs_err > tol * std::max(1.0, std::abs(r.value))) {
    throw NumericalFailure("density_That1_series: series ill-conditioned at this argument", r.value,
                           r.abs_err);
  }
  return r;
}

EvalResult density_g(const StabilityIndex& idx, double t, GMethod m, double tol) {
  idx.require_interior("density_g");
  require_positive(t, "density_g");
  const double a = idx.alpha();
  const double b = idx.beta();
  switch (m) {
    case GMethod::integral: {
      const double theta = 0.5 * std::min(kPi / b - kPi, kPi / 2.0);
      const double psi = b * (kPi + theta);
      quad::QuadResult r = rotated_ray(t, b, theta, psi, tol * (a - 1.0));
      r.value /= (a - 1.0);
      r.abs_err /= (a - 1.0);
      return checked(r, Method::pollard_integral, "density_g");
    }
    case GMethod::series: {
      const long double lt = std::log(static_cast<long double>(t));
      auto term = [&](std::int64_t n) -> long double {
        const long double nb = static_cast<long double>(b) * static_cast<long double>(n);
        const double s = sin_pi(static_cast<double>(nb));
        if (s == 0.0) return 0.0L;
        return s * std::exp(std::lgamma(1.0L + nb) - std::lgamma(static_cast<long double>(n) + 1.0L) -
                            (1.0L + nb) * lt) /
               (static_cast<long double>(a - 1.0) * std::numbers::pi_v<long double>);
      };
      return series_or_fail(term, tol, "density_g");
    }
    case GMethod::transform: {
      const PositiveStableKernel kernel(b);
      const double c = idx.cos_pi_alpha();
      const double s = pos_sin(idx);
      quad::Integrand f;
      f.fn = [&](double u) {
        const double fu = kernel.density(u).value;
        if (fu == 0.0) return 0.0;
        const double d = (u - c * t) * (u - c * t) + s * s * t * t;
        return fu * s * u / ((a - 1.0) * kPi * d);
      };
      f.tail = quad::Tail::power(2.0 + b);
      f.breakpoints = {0.3, 1.0, t};
      const quad::QuadResult r = quad::integrate_semi_infinite(f, opts(tol, tol));
      EvalResult e = checked(r, Method::transform, "density_g");
      e.abs_err += 1e-11 * std::abs(e.value);
      return e;
    }
  }
  throw DomainError("density_g: unknown method");
}

EvalResult density_h(const StabilityIndex& idx, double t, double tol) {
  idx.require_interior("density_h");
  require_positive(t, "density_h");
  const PositiveStableKernel kernel(idx.beta());
  const quad::QuadResult r = product_integral(
      [&](double u) {
        const double fb = density_Tbar(idx, u);
        return fb == 0.0 ? 0.0 : fb * kernel.density(t / u).value / u;
      },
      2.0 * idx.beta(), quad::Tail::power(3.0), t, opts(1e-300, tol));
  EvalResult e = checked(r, Method::product_quadrature, "density_h");
  e.abs_err += 1e-11 * std::abs(e.value);
  return e;
}

EvalResult density_T1(const StabilityIndex& idx, double t, T1Method m, double tol) {
  require_positive(t, "density_T1");
  if (idx.is_gaussian()) {
    if (std::isinf(t)) return {0.0, 0.0, Method::closed_form, 1};
    const double v = std::exp(-0.25 / t) / (2.0 * t * std::sqrt(kPi * t));
    return {v, 4.0 * std::numeric_limits<double>::epsilon() * v, Method::closed_form, 1};
  }
  idx.require_interior("density_T1");
  const double a = idx.alpha();
  const double b = idx.beta();
  switch (m) {
    case T1Method::series: {
      const long double lt = std::log(static_cast<long double>(t));
      const long double pre = sin_pi(b) / (a * std::numbers::pi_v<long double>);
      auto term = [&](std::int64_t n) -> long double {
        const long double nn = static_cast<long double>(n);
        return sign_alt(n) * pre *
               std::exp(std::lgamma(nn - b) - std::lgamma(a * nn - 1.0L) + (b - nn - 1.0L) * lt);
      };
      return series_or_fail(term, tol, "density_T1");
    }
    case T1Method::product: {
      const PositiveStableKernel kernel(b);
      const double inner = std::clamp(0.01 * tol, 1e-13, 1e-6);
      const quad::QuadResult r = product_integral(
          [&](double u) { return density_T(idx, u) * kernel.density(t / u, inner).value / u; }, b,
          quad::Tail::power(3.0), t, opts(1e-300, tol));
      EvalResult e = checked(r, Method::product_quadrature, "density_T1");
      e.abs_err += 1e-11 * std::abs(e.value);
      return e;
    }
    case T1Method::convex: {
      EvalResult g;
      try {
        g = density_g(idx, t, GMethod::integral, tol);
      } catch (const NumericalFailure&) {
        g = density_g(idx, t, GMethod::transform, tol);
      }
      const EvalResult h = density_h(idx, t, tol);
      return {weight_g(idx) * g.value + weight_h(idx) * h.value,
              weight_g(idx) * g.abs_err + weight_h(idx) * h.abs_err, Method::convex_combination,
              g.n_work + h.n_work};
    }
  }
  throw DomainError("density_T1: unknown method");
}

namespace {

// P[X That1 <= t] (or > t) for X with density fx behaving like u^px near 0
// and u^(-qx) at infinity.
quad::QuadResult product_probability(const StabilityIndex& idx, const PositiveStableKernel& kernel,
                                     const std::function<double(double)>& fx, double px, double qx,
                                     double t, bool survival, double rel_tol) {
  const quad::QuadOptions o = opts(1e-15, rel_tol);
  (void)idx;
  if (survival) {
    return product_integral(
        [&](double u) {
          const double f = fx(u);
          return f == 0.0 ? 0.0 : f * kernel.survival(t / u).value;
        },
        px + kernel.beta(), quad::Tail::power(qx), t, o);
  }
  return product_integral(
      [&](double u) {
        const double f = fx(u);
        return f == 0.0 ? 0.0 : f * kernel.cdf(t / u).value;
      },
      px, quad::Tail::power(3.0), t, o);
}

MixtureProbability mixture_probability(const StabilityIndex& idx, double t, double rel_tol,
                                       bool survival) {
  MixtureProbability out;
  if (idx.is_gaussian()) {
    const double z = 0.5 / std::sqrt(t);
    const double v = survival ? std::erf(z) : std::erfc(z);
    out.total = {v, 4.0 * std::numeric_limits<double>::epsilon() * v, Method::closed_form, 1};
    out.h_part = v;
    return out;
  }
  idx.require_interior("T1 distribution");
  const PositiveStableKernel kernel(idx.beta());
  const double b = idx.beta();
  const quad::QuadResult g = product_probability(
      idx, kernel, [&](double u) { return density_Ttilde(idx, u); }, 0.0, 2.0, t, survival, rel_tol);
  const quad::QuadResult h = product_probability(
      idx, kernel, [&](double u) { return density_Tbar(idx, u); }, b, 2.0 - b, t, survival, rel_tol);
  if (!g.converged || !h.converged) {
    const double v = weight_g(idx) * g.value + weight_h(idx) * h.value;
    throw NumericalFailure("T1 distribution: quadrature did not converge", v,
                           weight_g(idx) * g.abs_err + weight_h(idx) * h.abs_err);
  }
  out.g_part = weight_g(idx) * g.value;
  out.h_part = weight_h(idx) * h.value;
  const double v = out.g_part + out.h_part;
  out.total = {std::clamp(v, 0.0, 1.0),
               weight_g(idx) * g.abs_err + weight_h(idx) * h.abs_err + 1e-11 * v,
               Method::convex_combination, g.n_evals + h.n_evals};
  return out;
}

}  // namespace

MixtureProbability cdf_T1(const StabilityIndex& idx, double t, double rel_tol) {
  require_nonnegative(t, "cdf_T1");
  if (t == 0.0) return {{0.0, 0.0, Method::closed_form, 1}, 0.0, 0.0};
  if (std::isinf(t)) return {{1.0, 0.0, Method::closed_form, 1}, 0.0, 0.0};
  return mixture_probability(idx, t, rel_tol, false);
}

MixtureProbability survival_T1(const StabilityIndex& idx, double t, double rel_tol) {
  require_nonnegative(t, "survival_T1");
  if (t == 0.0) return {{1.0, 0.0, Method::closed_form, 1}, 0.0, 0.0};
  if (std::isinf(t)) return {{0.0, 0.0, Method::closed_form, 1}, 0.0, 0.0};
  return mixture_probability(idx, t, rel_tol, true);
}

EvalResult density_S1_series(const StabilityIndex& idx, double x, double tol) {
  idx.require_interior("density_S1_series");
  require_positive(x, "density_S1_series");
  const double a = idx.alpha();
  const double b = idx.beta();
  const long double lx = std::log(static_cast<long double>(x));
  const long double pre = sin_pi(b) / std::numbers::pi_v<long double>;
  auto term = [&](std::int64_t n) -> long double {
    const long double nn = static_cast<long double>(n);
    return sign_alt(n) * pre *
           std::exp(std::lgamma(nn - b) - std::lgamma(a * nn - 1.0L) + (a * nn - 2.0L) * lx);
  };
  return series_or_fail(term, tol, "density_S1_series");
}

EvalResult cdf_S1_series(const StabilityIndex& idx, double x, double tol) {
  idx.require_interior("cdf_S1_series");
  require_nonnegative(x, "cdf_S1_series");
  if (x == 0.0) return {0.0, 0.0, Method::series, 1};
  const double a = idx.alpha();
  const double b = idx.beta();
  const long double lx = std::log(static_cast<long double>(x));
  const long double pre = sin_pi(b) / std::numbers::pi_v<long double>;
  auto term = [&](std::int64_t n) -> long double {
    const long double nn = static_cast<long double>(n);
    return sign_alt(n) * pre *
           std::exp(std::lgamma(nn - b) - std::lgamma(a * nn) + (a * nn - 1.0L) * lx);
  };
  EvalResult r = series_or_fail(term, tol, "cdf_S1_series");
  r.value = std::clamp(r.value, 0.0, 1.0);
  return r;
}

EvalResult survival_S_tau(const SurvivalQuery& query, double tol) {
  if (!(query.q > 0.0) || !std::isfinite(query.q)) throw DomainError("survival_S_tau: q must be positive");
  require_nonnegative(query.x, "survival_S_tau");
  if (query.x == 0.0) return {1.0, 0.0, Method::closed_form, 1};
  return eval_D(query.index, std::pow(query.q, query.index.beta()) * query.x, tol);
}

namespace {

template <class Primary, class Fallback>
EvalResult series_then(Primary&& series, Fallback&& fallback) {
  try {
    return series();
  } catch (const NumericalFailure&) {
    return fallback();
  }
}

}  // namespace

DensityName parse_density_name(std::string_view s) {
  if (s == "T") return DensityName::T;
  if (s == "That1") return DensityName::That1;
  if (s == "g" || s == "g_That1") return DensityName::g_That1;
  if (s == "h" || s == "h_That1") return DensityName::h_That1;
  if (s == "T1") return DensityName::T1;
  if (s == "S1") return DensityName::S1;
  if (s == "Tbar") return DensityName::Tbar;
  if (s == "Ttilde") return DensityName::Ttilde;
  throw DomainError("unknown density name: " + std::string(s));
}

EvalResult density_by_name(DensityName name, const StabilityIndex& idx, double t,
                           std::string_view method, double tol) {
  const bool is_auto = method == "auto";
  auto bad = [&]() -> EvalResult {
    throw DomainError("method " + std::string(method) + " not available for " +
                      std::string(to_string(name)));
  };
  switch (name) {
    case DensityName::T:
    case DensityName::Tbar:
    case DensityName::Ttilde: {
      if (!is_auto && method != "closed_form") return bad();
      const double v = name == DensityName::T      ? density_T(idx, t)
                       : name == DensityName::Tbar ? density_Tbar(idx, t)
                                                   : density_Ttilde(idx, t);
      return {v, 4.0 * std::numeric_limits<double>::epsilon() * v, Method::closed_form, 1};
    }
    case DensityName::That1: {
      idx.require_interior("density That1");
      if (method == "integral") return density_That1_integral(idx, t, tol);
      if (method == "series") return density_That1_series(idx, t, tol);
      if (method == "kanter") return PositiveStableKernel(idx.beta()).density(t, tol);
      if (!is_auto) return bad();
      return series_then([&] { return density_That1_series(idx, t, tol); },
                         [&] { return density_That1_integral(idx, t, tol); });
    }
    case DensityName::g_That1: {
      if (method == "integral") return density_g(idx, t, GMethod::integral, tol);
      if (method == "series") return density_g(idx, t, GMethod::series, tol);
      if (method == "transform") return density_g(idx, t, GMethod::transform, tol);
      if (!is_auto) return bad();
      return series_then([&] { return density_g(idx, t, GMethod::series, tol); },
                         [&] {
                           return series_then(
                               [&] { return density_g(idx, t, GMethod::integral, tol); },
                               [&] { return density_g(idx, t, GMethod::transform, tol); });
                         });
    }
    case DensityName::h_That1:
      if (!is_auto && method != "product") return bad();
      return density_h(idx, t, tol);
    case DensityName::T1: {
      if (method == "series") return density_T1(idx, t, T1Method::series, tol);
      if (method == "product") return density_T1(idx, t, T1Method::product, tol);
      if (method == "convex") return density_T1(idx, t, T1Method::convex, tol);
      if (!is_auto) return bad();
      if (idx.is_gaussian()) return density_T1(idx, t, T1Method::series, tol);
      return series_then([&] { return density_T1(idx, t, T1Method::series, tol); },
                         [&] { return density_T1(idx, t, T1Method::product, tol); });
    }
    case DensityName::S1: {
      // S_1 = T_1^(-1/alpha), so f_S1(x) = alpha x^(-alpha-1) f_T1(x^(-alpha)).
      auto via_t1 = [&] {
        require_positive(t, "density S1");
        const double a = idx.alpha();
        EvalResult r = density_by_name(DensityName::T1, idx, std::pow(t, -a), "auto", tol);
        const double jac = a * std::pow(t, -a - 1.0);
        r.value *= jac;
        r.abs_err *= jac;
        return r;
      };
      if (method == "series") return density_S1_series(idx, t, tol);
      if (method == "via_T1") return via_t1();
      if (!is_auto) return bad();
      return series_then([&] { return density_S1_series(idx, t, tol); }, via_t1);
    }
  }
  return bad();
}

}  // namespace stablefp
